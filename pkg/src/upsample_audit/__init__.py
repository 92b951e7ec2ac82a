"""Audio upsampling layers and spectral artifact forensics.

Upsampling layers used in neural audio synthesis (interpolators,
transposed and subpixel convolution, wavelet/lifting cascades) together
with the measurement tools that expose their characteristic artifacts:
tonal lines from signal offsets and periodic interleaving, filtering
valleys from non-flat interpolation responses, and the spectral replicas
both descend from.
"""

from . import analysis, signals, upsamplers
from .signals import Signal, ones, read_wav, tone, white_noise, write_wav
from .upsamplers import LiftingParams, UpsamplerSpec, apply

__version__ = "0.1.0"

__all__ = [
    "analysis",
    "signals",
    "upsamplers",
    "Signal",
    "ones",
    "read_wav",
    "tone",
    "white_noise",
    "write_wav",
    "LiftingParams",
    "UpsamplerSpec",
    "apply",
    "__version__",
]
