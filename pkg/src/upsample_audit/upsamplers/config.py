"""Tagged upsampler configuration and the dispatching apply() entry point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..signals import Signal
from . import convolution, interpolation
from .wavelets import LiftingParams, cascade_analysis, cascade_synthesis, _resolve_base

KINDS = (
    "stretch",
    "nearest",
    "linear",
    "sinc",
    "transposed",
    "subpixel",
    "wavelet-lazy",
    "wavelet-haar",
    "wavelet-lifting",
)
WAVELET_KINDS = ("wavelet-lazy", "wavelet-haar", "wavelet-lifting")


@dataclass(frozen=True)
class UpsamplerSpec:
    """Layer kind plus the parameters that kind needs.

    factor is the upsampling ratio M. transposed layers require
    filter_length and stride with factor == stride (the stride is what
    raises the rate); subpixel layers require filter_length; sinc accepts
    an odd tap count (default 8M+1); wavelet-lifting requires a
    LiftingParams triple. seed feeds every random draw.
    """

    kind: str
    factor: int
    filter_length: int | None = None
    stride: int | None = None
    sinc_taps: int | None = None
    lifting: LiftingParams | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown layer kind {self.kind!r}, expected one of {KINDS}")
        object.__setattr__(self, "factor", int(self.factor))
        if self.factor < 2:
            raise ValueError(f"upsampling factor must be at least 2, got {self.factor}")
        if self.kind in WAVELET_KINDS and self.factor not in (2, 4):
            raise ValueError(f"wavelet layers support factor 2 or 4, got {self.factor}")
        if self.kind == "transposed":
            if self.filter_length is None or self.stride is None:
                raise ValueError("transposed layers require filter_length and stride")
            object.__setattr__(self, "filter_length", int(self.filter_length))
            object.__setattr__(self, "stride", int(self.stride))
            if self.stride < 1 or self.filter_length < self.stride:
                raise ValueError(
                    f"need filter_length >= stride >= 1, got ({self.filter_length}, {self.stride})"
                )
            if self.factor != self.stride:
                raise ValueError(
                    f"transposed factor must equal the stride, got factor={self.factor} stride={self.stride}"
                )
        if self.kind == "subpixel":
            if self.filter_length is None:
                raise ValueError("subpixel layers require filter_length")
            object.__setattr__(self, "filter_length", int(self.filter_length))
            if self.filter_length < 1:
                raise ValueError(f"filter_length must be positive, got {self.filter_length}")
        if self.kind == "sinc" and self.sinc_taps is not None:
            object.__setattr__(self, "sinc_taps", int(self.sinc_taps))
            if self.sinc_taps % 2 == 0:
                raise ValueError(f"sinc tap count must be odd, got {self.sinc_taps}")
        if self.kind == "wavelet-lifting" and self.lifting is None:
            raise ValueError("wavelet-lifting layers require a LiftingParams triple")
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def wavelet_base(self) -> str:
        if self.kind not in WAVELET_KINDS:
            raise ValueError(f"{self.kind!r} is not a wavelet kind")
        return self.kind.split("-", 1)[1]

    @property
    def wavelet_levels(self) -> int:
        return 1 if self.factor == 2 else 2


def random_filters(spec: UpsamplerSpec) -> np.ndarray:
    """Seeded uniform filters in [-1/sqrt(L), 1/sqrt(L)).

    Shape (1, 1, L) for transposed layers and (M, 1, L) for subpixel
    layers (one sub-filter per interleaved branch). Deterministic per
    seed via Philox.
    """
    if spec.kind == "transposed":
        shape = (1, 1, spec.filter_length)
    elif spec.kind == "subpixel":
        shape = (spec.factor, 1, spec.filter_length)
    else:
        raise ValueError(f"random filters are defined for transposed and subpixel layers, not {spec.kind!r}")
    rng = np.random.Generator(np.random.Philox(spec.seed))
    scale = 1.0 / np.sqrt(spec.filter_length)
    return (2.0 * rng.random(shape) - 1.0) * scale


def _apply_conv(spec: UpsamplerSpec, x: Signal) -> Signal:
    w = random_filters(spec)
    rows = []
    rate = None
    for c in range(x.channels):
        fm = convolution.FeatureMap(x.data[c], x.sample_rate_hz)
        if spec.kind == "transposed":
            out = convolution.transposed_conv(fm, w, spec.stride)
        else:
            out = convolution.subpixel_conv(fm, w, spec.factor)
        rows.append(out.data[0])
        rate = out.sample_rate_hz
    return Signal(np.stack(rows), rate)


def _apply_wavelet_synthesis(spec: UpsamplerSpec, x: Signal) -> Signal:
    _, synthesize = _resolve_base(spec.wavelet_base, spec.lifting)
    out = x
    for _level in range(spec.wavelet_levels):
        zeros = Signal(np.zeros_like(out.data), out.sample_rate_hz)
        out = synthesize(out, zeros)
    return out


def apply(spec: UpsamplerSpec, x: Signal) -> Signal:
    """Run the configured layer on a signal.

    Interpolators and convolution layers upsample by spec.factor. Wavelet
    kinds drive the synthesis path with the input as the coarsest band
    and zero detail bands, doubling the rate per cascade level.
    """
    if spec.kind == "stretch":
        return interpolation.stretch(x, spec.factor)
    if spec.kind == "nearest":
        return interpolation.nearest_neighbor(x, spec.factor)
    if spec.kind == "linear":
        return interpolation.linear_interpolate(x, spec.factor)
    if spec.kind == "sinc":
        return interpolation.sinc_interpolate(x, spec.factor, spec.sinc_taps)
    if spec.kind in ("transposed", "subpixel"):
        return _apply_conv(spec, x)
    return _apply_wavelet_synthesis(spec, x)


def wavelet_roundtrip(spec: UpsamplerSpec, x: Signal) -> Signal:
    """Analysis followed by synthesis at the spec's cascade depth (same rate)."""
    if spec.kind not in WAVELET_KINDS:
        raise ValueError(f"round trip is defined for wavelet kinds, not {spec.kind!r}")
    coarse, details = cascade_analysis(x, spec.wavelet_base, spec.wavelet_levels, spec.lifting)
    return cascade_synthesis(coarse, details, spec.wavelet_base, spec.lifting)
