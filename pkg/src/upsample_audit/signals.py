"""Test-signal generation and WAV file I/O.

Every generator is a pure function of its arguments. Seeded generators draw
from numpy's Philox bit generator, a counter-based PRNG whose stream is
stable across numpy versions, so repeated calls are bit-identical.

Samples are stored as 64-bit floats internally regardless of file format;
WAV I/O converts at the boundary.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Signal:
    """A sampled waveform: one row of `data` per channel.

    `data` is coerced to a read-only 2D float64 array of shape
    (channels, num_samples). `padded` marks a signal whose final sample is
    a zero appended by a wavelet analysis step on odd-length input, so the
    matching synthesis step can trim it.
    """

    data: np.ndarray
    sample_rate_hz: int
    padded: bool = field(default=False)

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        if arr.ndim != 2:
            raise ValueError(f"signal data must be 1D or 2D, got ndim={arr.ndim}")
        if arr.shape[1] == 0:
            raise ValueError("signal must contain at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("signal samples must be finite")
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
    def num_samples(self) -> int:
        return self.data.shape[1]

    @property
    def duration_s(self) -> float:
        return self.num_samples / self.sample_rate_hz

    def channel(self, index: int) -> np.ndarray:
        """One channel as a read-only 1D view."""
        return self.data[index]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def white_noise(n: int, fs: int, seed: int) -> Signal:
    """Uniform white noise in [-1, 1), single channel.

    Deterministic for a given seed: the draw comes from Philox, whose
    output stream is fixed and versioned by numpy.
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    samples = 2.0 * _rng(seed).random(n) - 1.0
    return Signal(samples, fs)


def ones(n: int, fs: int) -> Signal:
    """Constant signal of amplitude 1, single channel."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    return Signal(np.ones(n), fs)


def tone(n: int, fs: int, f0: float, amplitude: float = 1.0) -> Signal:
    """Pure sine: samples[k] = amplitude * sin(2*pi*f0*k/fs).

    f0 must lie strictly inside (0, fs/2); anything at or above Nyquist
    would alias.
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 < f0 < fs / 2:
        raise ValueError(f"tone frequency must satisfy 0 < f0 < fs/2, got f0={f0} at fs={fs}")
    k = np.arange(n)
    return Signal(amplitude * np.sin(2.0 * np.pi * f0 * k / fs), fs)


# ---------------------------------------------------------------------------
# WAV I/O: RIFF/WAVE little-endian, PCM 16-bit (format 1) and IEEE float
# 32-bit (format 3), mono or stereo.

_PCM16_SCALE = 32767.0


def write_wav(path, signal: Signal, fmt: str = "float32") -> None:
    """Write a Signal as a RIFF/WAVE file.

    float32 is lossless for float32-representable samples. pcm16 quantizes
    with symmetric scale 32767; samples outside [-1, 1] are saturated with
    a warning.
    """
    if fmt not in ("pcm16", "float32"):
        raise ValueError(f"unsupported format {fmt!r}, expected 'pcm16' or 'float32'")
    if signal.channels > 2:
        raise ValueError(f"only mono and stereo are supported, got {signal.channels} channels")

    interleaved = signal.data.T.reshape(-1)
    if fmt == "pcm16":
        if np.any(np.abs(interleaved) > 1.0):
            warnings.warn("samples outside [-1, 1] are saturated in pcm16 export")
            interleaved = np.clip(interleaved, -1.0, 1.0)
        payload = np.round(interleaved * _PCM16_SCALE).astype("<i2").tobytes()
        audio_format, bits = 1, 16
    else:
        payload = interleaved.astype("<f4").tobytes()
        audio_format, bits = 3, 32

    ch = signal.channels
    block_align = ch * bits // 8
    byte_rate = signal.sample_rate_hz * block_align
    fmt_chunk = struct.pack(
        "<4sIHHIIHH", b"fmt ", 16, audio_format, ch,
        signal.sample_rate_hz, byte_rate, block_align, bits,
    )
    chunks = fmt_chunk
    if audio_format == 3:
        chunks += struct.pack("<4sII", b"fact", 4, signal.num_samples)
    chunks += struct.pack("<4sI", b"data", len(payload)) + payload
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sI4s", b"RIFF", 4 + len(chunks), b"WAVE"))
        fh.write(chunks)


def read_wav(path) -> Signal:
    """Read a RIFF/WAVE file into a Signal (float64 samples).

    Accepts PCM 16-bit and IEEE float 32-bit, mono or stereo. Unknown
    chunks are skipped. Raises ValueError on malformed headers or
    unsupported codecs.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 12 or raw[0:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise ValueError(f"{path}: not a RIFF/WAVE file")

    fmt_info = None
    payload = None
    pos = 12
    while pos + 8 <= len(raw):
        cid, size = struct.unpack_from("<4sI", raw, pos)
        body = raw[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise ValueError(f"{path}: truncated {cid.decode('latin1')!r} chunk")
        if cid == b"fmt ":
            if size < 16:
                raise ValueError(f"{path}: fmt chunk too short")
            fmt_info = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            payload = body
        pos += 8 + size + (size & 1)

    if fmt_info is None or payload is None:
        raise ValueError(f"{path}: missing fmt or data chunk")
    audio_format, ch, rate, _byte_rate, _block_align, bits = fmt_info
    if ch not in (1, 2):
        raise ValueError(f"{path}: only mono and stereo are supported, got {ch} channels")
    if (audio_format, bits) == (1, 16):
        flat = np.frombuffer(payload, dtype="<i2").astype(np.float64) / _PCM16_SCALE
    elif (audio_format, bits) == (3, 32):
        flat = np.frombuffer(payload, dtype="<f4").astype(np.float64)
    else:
        raise ValueError(f"{path}: unsupported codec (format={audio_format}, bits={bits})")
    if flat.size == 0 or flat.size % ch:
        raise ValueError(f"{path}: data chunk size does not match the channel count")
    return Signal(flat.reshape(-1, ch).T, rate)
