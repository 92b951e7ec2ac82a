"""Transposed and subpixel convolution upsamplers plus the overlap taxonomy.

FeatureMap is the multichannel intermediate these layers operate on; a
single-channel FeatureMap is interchangeable with a Signal via the helpers
at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..signals import Signal

NO_OVERLAP = "no-overlap"
FULL_OVERLAP = "full-overlap"
PARTIAL_OVERLAP = "partial-overlap"


@dataclass(frozen=True)
class FeatureMap:
    """channels x time matrix of activations with a sample rate."""

    data: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        if arr.ndim != 2:
            raise ValueError(f"feature map must be 1D or 2D, got ndim={arr.ndim}")
        if arr.shape[1] == 0:
            raise ValueError("feature map must contain at least one time step")
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature map values must be finite")
        if int(self.sample_rate_hz) <= 0:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate_hz}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "sample_rate_hz", int(self.sample_rate_hz))

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def num_steps(self) -> int:
        return self.data.shape[1]


def classify_overlap(length: int, stride: int) -> str:
    """Overlap regime of a transposed convolution.

    no-overlap when length == stride; full-overlap when length is a larger
    multiple of the stride; partial-overlap otherwise (consecutive kernel
    copies overlap on some output samples but not uniformly).
    """
    length, stride = int(length), int(stride)
    if length < 1 or stride < 1:
        raise ValueError(f"length and stride must be positive, got ({length}, {stride})")
    if length == stride:
        return NO_OVERLAP
    if length > stride and length % stride == 0:
        return FULL_OVERLAP
    return PARTIAL_OVERLAP


def _check_filters(filters: np.ndarray, in_channels: int) -> np.ndarray:
    w = np.asarray(filters, dtype=np.float64)
    if w.ndim != 3:
        raise ValueError(f"filters must have shape (out_channels, in_channels, length), got ndim={w.ndim}")
    if w.shape[1] != in_channels:
        raise ValueError(f"filter in-channel count {w.shape[1]} does not match input channels {in_channels}")
    if w.shape[2] < 1:
        raise ValueError("filters must have at least one tap")
    return w


def transposed_conv(x: FeatureMap, filters: np.ndarray, stride: int) -> FeatureMap:
    """y_o[n] = sum_c sum_k x_c[k] * w_{o,c}[n - k*stride].

    Each input sample stamps a weighted copy of the kernel every `stride`
    output samples; the full (K-1)*stride + L output is returned without
    cropping. Output rate is stride times the input rate. When the kernel
    copies have unequal overlap counts (see classify_overlap) the summed
    pattern repeats every stride samples, which is the periodicity behind
    the tonal artifacts this layer can introduce.
    """
    stride = int(stride)
    if stride < 1:
        raise ValueError(f"stride must be positive, got {stride}")
    w = _check_filters(filters, x.channels)
    length = w.shape[2]
    if length < stride:
        raise ValueError(f"filter length {length} must be at least the stride {stride}")
    steps = x.num_steps
    stuffed = np.zeros((x.channels, (steps - 1) * stride + 1))
    stuffed[:, ::stride] = x.data
    out = np.zeros((w.shape[0], (steps - 1) * stride + length))
    for o in range(w.shape[0]):
        for c in range(x.channels):
            out[o] += np.convolve(stuffed[c], w[o, c], mode="full")
    return FeatureMap(out, stride * x.sample_rate_hz)


def periodic_shuffle(z: FeatureMap, m: int) -> FeatureMap:
    """Interleave channel groups into time: y_c[kM+j] = z_{cM+j}[k].

    Bijective; m=1 is the identity. The channel count must be divisible
    by m.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"shuffle factor must be positive, got {m}")
    if z.channels % m:
        raise ValueError(f"channel count {z.channels} not divisible by factor {m}")
    c_out = z.channels // m
    data = z.data.reshape(c_out, m, z.num_steps)
    out = data.transpose(0, 2, 1).reshape(c_out, z.num_steps * m)
    return FeatureMap(out, m * z.sample_rate_hz)


def periodic_unshuffle(y: FeatureMap, m: int) -> FeatureMap:
    """Inverse of periodic_shuffle: split time into m interleaved channels."""
    m = int(m)
    if m < 1:
        raise ValueError(f"shuffle factor must be positive, got {m}")
    if y.num_steps % m:
        raise ValueError(f"time length {y.num_steps} not divisible by factor {m}")
    if y.sample_rate_hz % m:
        raise ValueError(f"sample rate {y.sample_rate_hz} not divisible by factor {m}")
    steps = y.num_steps // m
    data = y.data.reshape(y.channels, steps, m)
    out = data.transpose(0, 2, 1).reshape(y.channels * m, steps)
    return FeatureMap(out, y.sample_rate_hz // m)


def subpixel_conv(x: FeatureMap, filters: np.ndarray, m: int) -> FeatureMap:
    """Same-padded stride-1 convolution to M*C_out channels, then periodic shuffle.

    The M interleaved streams come from different sub-filters; when their
    energies differ, the interleaving imprints an M-periodic pattern on
    the output.
    """
    m = int(m)
    if m < 1:
        raise ValueError(f"upsampling factor must be positive, got {m}")
    w = _check_filters(filters, x.channels)
    if w.shape[0] % m:
        raise ValueError(f"filter output-channel count {w.shape[0]} not divisible by factor {m}")
    z = np.zeros((w.shape[0], x.num_steps))
    for o in range(w.shape[0]):
        for c in range(x.channels):
            z[o] += np.convolve(x.data[c], w[o, c], mode="same")
    return periodic_shuffle(FeatureMap(z, x.sample_rate_hz), m)


def feature_map_of(signal: Signal) -> FeatureMap:
    """View a Signal's channels as a feature map at the same rate."""
    return FeatureMap(signal.data, signal.sample_rate_hz)


def as_signal(fm: FeatureMap) -> Signal:
    return Signal(fm.data, fm.sample_rate_hz)
