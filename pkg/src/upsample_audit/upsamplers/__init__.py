"""Upsampling layers: interpolators, transposed/subpixel convolution, wavelets."""

from .config import (
    KINDS,
    WAVELET_KINDS,
    UpsamplerSpec,
    apply,
    random_filters,
    wavelet_roundtrip,
)
from .convolution import (
    FULL_OVERLAP,
    NO_OVERLAP,
    PARTIAL_OVERLAP,
    FeatureMap,
    as_signal,
    classify_overlap,
    feature_map_of,
    periodic_shuffle,
    periodic_unshuffle,
    subpixel_conv,
    transposed_conv,
)
from .interpolation import (
    linear_interpolate,
    nearest_neighbor,
    rectangular_filter,
    sinc_filter,
    sinc_interpolate,
    stretch,
    triangular_filter,
)
from .wavelets import (
    HAAR_PARAMS,
    LAZY_PARAMS,
    LiftingGradients,
    LiftingParams,
    WaveletFilters,
    cascade_analysis,
    cascade_synthesis,
    haar_analysis,
    haar_synthesis,
    lifting_analysis,
    lifting_param_grads,
    lifting_synthesis,
)

__all__ = [
    "KINDS",
    "WAVELET_KINDS",
    "UpsamplerSpec",
    "apply",
    "random_filters",
    "wavelet_roundtrip",
    "FULL_OVERLAP",
    "NO_OVERLAP",
    "PARTIAL_OVERLAP",
    "FeatureMap",
    "as_signal",
    "classify_overlap",
    "feature_map_of",
    "periodic_shuffle",
    "periodic_unshuffle",
    "subpixel_conv",
    "transposed_conv",
    "linear_interpolate",
    "nearest_neighbor",
    "rectangular_filter",
    "sinc_filter",
    "sinc_interpolate",
    "stretch",
    "triangular_filter",
    "HAAR_PARAMS",
    "LAZY_PARAMS",
    "LiftingGradients",
    "LiftingParams",
    "WaveletFilters",
    "cascade_analysis",
    "cascade_synthesis",
    "haar_analysis",
    "haar_synthesis",
    "lifting_analysis",
    "lifting_param_grads",
    "lifting_synthesis",
]
