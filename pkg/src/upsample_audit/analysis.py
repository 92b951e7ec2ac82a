"""Spectral analysis and artifact forensics.

Two estimator families on purpose:

* avg_spectrum averages per-frame STFT magnitudes (Hann, 50% overlap).
  It feeds the artifact metrics (tonal prominence, band attenuation),
  where the quantities of interest sit tens of dB above its bias floor.
* measure_response averages per-frame power (Welch) over many seeded
  noise realizations and trims convolution edge transients first. Power
  averaging keeps the DC bin statistically consistent with the interior
  bins (a real-valued bin's mean magnitude sits about 0.9 dB below a
  complex bin's at equal power, which would skew the DC normalization),
  and edge trimming removes the broadband transient floor that would
  otherwise mask deep stopbands.

Measured responses are only compared away from response nulls: at and
next to a null the estimate is limited by window leakage and averaging
variance, not by the layer. null_exclusion_mask operationalizes that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signals import Signal, white_noise
from .upsamplers.config import WAVELET_KINDS, UpsamplerSpec, apply
from .upsamplers.wavelets import LiftingParams, cascade_analysis, cascade_synthesis

DB_FLOOR = -120.0
_MAG_FLOOR = 10.0 ** (DB_FLOOR / 20.0)

_WINDOWS = ("hann", "rect")


def _window(kind: str, size: int) -> np.ndarray:
    if kind == "hann":
        return np.hanning(size)
    if kind == "rect":
        return np.ones(size)
    raise ValueError(f"unknown window {kind!r}, expected one of {_WINDOWS}")


def _frames(samples: np.ndarray, window_size: int, hop: int) -> np.ndarray:
    if len(samples) < window_size:
        raise ValueError(f"window of {window_size} samples exceeds signal length {len(samples)}")
    view = np.lib.stride_tricks.sliding_window_view(samples, window_size)
    return view[::hop]


def _mixdown(x: Signal) -> np.ndarray:
    """Channel mean; analysis operates on a mono view of multichannel input."""
    return x.data.mean(axis=0)


@dataclass(frozen=True)
class Spectrogram:
    """Frames x bins magnitude matrix in dB, floored at -120 dB.

    Magnitudes are |FFT| / sum(window), so a unit-amplitude complex
    exponential at a bin center reads 0 dB.
    """

    magnitudes_db: np.ndarray
    sample_rate_hz: int
    window_size: int
    hop: int
    window_kind: str

    def __post_init__(self):
        arr = np.asarray(self.magnitudes_db, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("spectrogram matrix must be 2D (frames x bins)")
        if arr.shape[1] != self.window_size // 2 + 1:
            raise ValueError(
                f"bin count {arr.shape[1]} does not match window size {self.window_size}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("spectrogram magnitudes must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "magnitudes_db", arr)

    @property
    def num_frames(self) -> int:
        return self.magnitudes_db.shape[0]

    @property
    def num_bins(self) -> int:
        return self.magnitudes_db.shape[1]

    @property
    def freqs_hz(self) -> np.ndarray:
        return np.linspace(0.0, self.sample_rate_hz / 2.0, self.num_bins)


def spectrogram(x: Signal, window_size: int = 512, hop: int = 128, window: str = "hann") -> Spectrogram:
    """Magnitude STFT in dB. window_size must be a power of two, hop <= window_size."""
    window_size = int(window_size)
    hop = int(hop)
    if window_size < 2 or window_size & (window_size - 1):
        raise ValueError(f"window size must be a power of two, got {window_size}")
    if not 1 <= hop <= window_size:
        raise ValueError(f"hop must be in [1, window_size], got {hop}")
    w = _window(window, window_size)
    frames = _frames(_mixdown(x), window_size, hop)
    mags = np.abs(np.fft.rfft(frames * w, axis=1)) / w.sum()
    db = 20.0 * np.log10(np.maximum(mags, _MAG_FLOOR))
    return Spectrogram(db, x.sample_rate_hz, window_size, hop, window)


@dataclass(frozen=True)
class AveragedSpectrum:
    """Welch-style averaged magnitude spectrum in dB on an ascending Hz grid."""

    freqs_hz: np.ndarray
    magnitude_db: np.ndarray
    sample_rate_hz: int
    num_frames: int

    def __post_init__(self):
        freqs = np.asarray(self.freqs_hz, dtype=np.float64)
        db = np.asarray(self.magnitude_db, dtype=np.float64)
        if freqs.ndim != 1 or db.shape != freqs.shape:
            raise ValueError("frequency grid and magnitudes must be matching 1D arrays")
        if np.any(np.diff(freqs) <= 0):
            raise ValueError("frequency grid must be strictly ascending")
        for name, arr in (("freqs_hz", freqs), ("magnitude_db", db)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def num_bins(self) -> int:
        return self.freqs_hz.size


def avg_spectrum(x: Signal, window_size: int = 512) -> AveragedSpectrum:
    """Mean per-frame STFT magnitude: Hann window, 50% overlap, at least 16 frames."""
    window_size = int(window_size)
    if window_size < 2 or window_size & (window_size - 1):
        raise ValueError(f"window size must be a power of two, got {window_size}")
    hop = window_size // 2
    samples = _mixdown(x)
    if len(samples) < window_size:
        raise ValueError(f"window of {window_size} samples exceeds signal length {len(samples)}")
    frames = _frames(samples, window_size, hop)
    if frames.shape[0] < 16:
        raise ValueError(f"need at least 16 frames for a stable average, got {frames.shape[0]}")
    w = np.hanning(window_size)
    mean_mag = np.abs(np.fft.rfft(frames * w, axis=1)).mean(axis=0) / w.sum()
    db = 20.0 * np.log10(np.maximum(mean_mag, _MAG_FLOOR))
    freqs = np.linspace(0.0, x.sample_rate_hz / 2.0, window_size // 2 + 1)
    return AveragedSpectrum(freqs, db, x.sample_rate_hz, frames.shape[0])


def average_spectra(spectra) -> AveragedSpectrum:
    """Combine AveragedSpectrum values by averaging their linear magnitudes."""
    spectra = list(spectra)
    if not spectra:
        raise ValueError("need at least one spectrum to average")
    first = spectra[0]
    for sp in spectra[1:]:
        if sp.num_bins != first.num_bins or sp.sample_rate_hz != first.sample_rate_hz:
            raise ValueError("spectra must share the frequency grid")
    linear = np.stack([10.0 ** (sp.magnitude_db / 20.0) for sp in spectra]).mean(axis=0)
    db = 20.0 * np.log10(np.maximum(linear, _MAG_FLOOR))
    return AveragedSpectrum(first.freqs_hz, db, first.sample_rate_hz, sum(sp.num_frames for sp in spectra))


def replica_frequencies(fs_in: int, factor: int) -> list:
    """Spectral replica centers k*fs_in for k = 1..factor//2 (all inside the output Nyquist)."""
    if factor < 2:
        raise ValueError(f"upsampling factor must be at least 2, got {factor}")
    if fs_in <= 0:
        raise ValueError(f"input rate must be positive, got {fs_in}")
    return [float(k * fs_in) for k in range(1, factor // 2 + 1)]


@dataclass(frozen=True)
class TonalPeak:
    freq_hz: float
    prominence_db: float


def tonal_prominence(
    spectrum: AveragedSpectrum,
    freq_hz: float,
    neighborhood_bins: int = 50,
    exclude_bins: int = 3,
) -> float:
    """dB excess of the bin nearest freq_hz over the local median background.

    The median runs over +/- neighborhood_bins around the candidate,
    excluding +/- exclude_bins so the peak's own skirt does not inflate
    the background.
    """
    nyquist = spectrum.sample_rate_hz / 2.0
    if not 0.0 <= freq_hz <= nyquist:
        raise ValueError(f"candidate {freq_hz} Hz outside [0, {nyquist}] Hz")
    n = spectrum.num_bins
    center = int(round(freq_hz / nyquist * (n - 1)))
    lo = max(0, center - neighborhood_bins)
    hi = min(n - 1, center + neighborhood_bins)
    idx = np.arange(lo, hi + 1)
    idx = idx[np.abs(idx - center) > exclude_bins]
    if idx.size == 0:
        raise ValueError("neighborhood is empty; widen neighborhood_bins or shrink exclude_bins")
    return float(spectrum.magnitude_db[center] - np.median(spectrum.magnitude_db[idx]))


def detect_tonal_peaks(
    spectrum: AveragedSpectrum,
    candidate_freqs,
    neighborhood_bins: int = 50,
    exclude_bins: int = 3,
    threshold_db: float = 6.0,
):
    """Tonal peaks among the candidates whose prominence exceeds threshold_db."""
    peaks = []
    for freq in candidate_freqs:
        prom = tonal_prominence(spectrum, freq, neighborhood_bins, exclude_bins)
        if prom > threshold_db:
            peaks.append(TonalPeak(float(freq), prom))
    return peaks


def band_attenuation(spectrum: AveragedSpectrum, fs_in: int, factor: int) -> np.ndarray:
    """Mean dB per replica-width band relative to band 0.

    Band b covers [b*fs_in/2, (b+1)*fs_in/2); the output Nyquist bin is
    folded into the last band. The spectrum must span [0, factor*fs_in/2].
    """
    if factor < 2:
        raise ValueError(f"upsampling factor must be at least 2, got {factor}")
    span = factor * fs_in / 2.0
    if spectrum.freqs_hz[-1] < span * (1.0 - 1e-9):
        raise ValueError(
            f"spectrum spans {spectrum.freqs_hz[-1]} Hz but bands need {span} Hz"
        )
    band_width = fs_in / 2.0
    band_idx = np.minimum((spectrum.freqs_hz // band_width).astype(int), factor - 1)
    means = np.array([spectrum.magnitude_db[band_idx == b].mean() for b in range(factor)])
    return means - means[0]


@dataclass(frozen=True)
class ArtifactReport:
    """Tonal peaks, band attenuation profile, replica predictions, verdicts."""

    tonal_peaks: tuple
    band_attenuation_db: np.ndarray
    predicted_replicas_hz: tuple
    tonal_detected: bool
    filtering_detected: bool


def artifact_report(
    spectrum: AveragedSpectrum,
    fs_in: int,
    factor: int,
    threshold_db: float = 6.0,
    attenuation_threshold_db: float = 6.0,
) -> ArtifactReport:
    """Full artifact readout of an upsampled signal's averaged spectrum.

    Tonal candidates are the predicted replica frequencies. The filtering
    verdict trips when any band beyond band 0 is attenuated by more than
    attenuation_threshold_db.
    """
    replicas = replica_frequencies(fs_in, factor)
    peaks = detect_tonal_peaks(spectrum, replicas, threshold_db=threshold_db)
    bands = band_attenuation(spectrum, fs_in, factor)
    return ArtifactReport(
        tonal_peaks=tuple(peaks),
        band_attenuation_db=bands,
        predicted_replicas_hz=tuple(replicas),
        tonal_detected=bool(peaks),
        filtering_detected=bool(np.any(bands[1:] < -attenuation_threshold_db)),
    )


@dataclass(frozen=True)
class FrequencyResponse:
    """Magnitude response in dB on [0, fs/2], normalized to 0 dB at DC."""

    freqs_hz: np.ndarray
    magnitude_db: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        freqs = np.asarray(self.freqs_hz, dtype=np.float64)
        db = np.asarray(self.magnitude_db, dtype=np.float64)
        if freqs.ndim != 1 or db.shape != freqs.shape:
            raise ValueError("frequency grid and magnitudes must be matching 1D arrays")
        if np.any(np.diff(freqs) <= 0):
            raise ValueError("frequency grid must be strictly ascending")
        if abs(db[0]) > 1e-9:
            raise ValueError("response must be normalized to 0 dB at DC")
        for name, arr in (("freqs_hz", freqs), ("magnitude_db", db)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


_EDGE_TRIM = 2048
_POWER_FLOOR = 1e-30


def _welch_power(samples: np.ndarray, window_size: int) -> tuple:
    w = np.hanning(window_size)
    frames = _frames(samples, window_size, window_size // 2)
    power = np.abs(np.fft.rfft(frames * w, axis=1)) ** 2
    return power.sum(axis=0), frames.shape[0]


def _wavelet_noise_output(spec: UpsamplerSpec, fs_in: int, n: int, seed: int) -> Signal:
    """Synthesis path driven by independent noise in every band."""
    coarse = white_noise(n, fs_in, seed)
    if spec.wavelet_levels == 1:
        details = [white_noise(n, fs_in, seed + 100_000)]
    else:
        details = [
            white_noise(n, fs_in, seed + 100_000),
            white_noise(2 * n, 2 * fs_in, seed + 200_000),
        ]
    return cascade_synthesis(coarse, details, spec.wavelet_base, spec.lifting)


def measure_response(
    spec: UpsamplerSpec,
    fs_in: int,
    realizations: int = 32,
    n: int = 1 << 15,
    window_size: int = 512,
) -> FrequencyResponse:
    """Average output power spectrum over seeded white-noise realizations.

    For LTI layers this estimates the interpolation filter's magnitude
    response; for wavelet kinds the synthesis path is driven with
    independent noise in every band. The first and last 2048 output
    samples are trimmed to drop convolution edge transients, per-frame
    power is Welch-averaged (Hann, 50% overlap), and the result is
    normalized to 0 dB at DC. Deterministic: realization seeds derive
    from spec.seed.
    """
    fs_out = spec.factor * fs_in
    acc = None
    total_frames = 0
    for r in range(realizations):
        seed = spec.seed + 1_000_000 + r
        if spec.kind in WAVELET_KINDS:
            out = _wavelet_noise_output(spec, fs_in, n, seed)
        else:
            out = apply(spec, white_noise(n, fs_in, seed))
        samples = _mixdown(out)
        if len(samples) <= 2 * _EDGE_TRIM + window_size:
            raise ValueError(
                f"output too short for edge trimming: {len(samples)} samples; increase n"
            )
        power, frames = _welch_power(samples[_EDGE_TRIM:-_EDGE_TRIM], window_size)
        acc = power if acc is None else acc + power
        total_frames += frames
    db = 10.0 * np.log10(np.maximum(acc / total_frames, _POWER_FLOOR))
    db = db - db[0]
    freqs = np.linspace(0.0, fs_out / 2.0, window_size // 2 + 1)
    return FrequencyResponse(freqs, db, fs_out)


def analytic_response(taps: np.ndarray, window_size: int, fs_out: int) -> FrequencyResponse:
    """DFT magnitude of an FIR filter on the measurement grid, 0 dB at DC."""
    mags = np.abs(np.fft.rfft(np.asarray(taps, dtype=np.float64), int(window_size)))
    db = 20.0 * np.log10(np.maximum(mags, 1e-15))
    freqs = np.linspace(0.0, fs_out / 2.0, window_size // 2 + 1)
    return FrequencyResponse(freqs, db - db[0], fs_out)


def null_exclusion_mask(
    magnitude_db: np.ndarray,
    width: int = 2,
    min_guard_db: float = 20.0,
    deep_db: float = 70.0,
) -> np.ndarray:
    """Boolean mask of bins where a measured response is comparable.

    Null bins are local minima more than min_guard_db below the peak,
    plus every bin more than deep_db below the peak (inside such a notch
    the Welch estimate is leakage-limited, not layer-limited). The mask
    clears +/- width bins around each null bin; endpoints count as local
    minima when they dip below their single neighbor.
    """
    db = np.asarray(magnitude_db, dtype=np.float64)
    n = db.size
    top = db.max()
    padded = np.concatenate([[np.inf], db, [np.inf]])
    is_min = (db <= padded[:-2]) & (db <= padded[2:]) & (db < top - min_guard_db)
    nulls = is_min | (db < top - deep_db)
    keep = np.ones(n, dtype=bool)
    for i in np.nonzero(nulls)[0]:
        keep[max(0, i - width) : i + width + 1] = False
    return keep


def perfect_reconstruction_error(
    base: str,
    levels: int,
    x: Signal,
    lifting: LiftingParams | None = None,
) -> float:
    """Max abs deviation of the cascade analysis/synthesis round trip."""
    coarse, details = cascade_analysis(x, base, levels, lifting)
    back = cascade_synthesis(coarse, details, base, lifting)
    return float(np.max(np.abs(back.data - x.data)))
