"""Command-line surface: generate, upsample, analyze, verify.

Every command is deterministic given its flags; reports carry a
"schema": 1 marker, no timestamps, and stable key order, so repeated
runs are byte-identical. Exit codes: 0 success, 1 failed verify checks,
2 usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analysis as ana
from . import signals as sig
from .upsamplers import (
    HAAR_PARAMS,
    LiftingParams,
    UpsamplerSpec,
    WaveletFilters,
    apply,
    classify_overlap,
    lifting_analysis,
    lifting_param_grads,
    rectangular_filter,
    sinc_filter,
    triangular_filter,
    wavelet_roundtrip,
)

LAYER_CHOICES = (
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


def _json_line(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _round6(value):
    return round(float(value), 6)


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    if args.kind == "noise":
        signal = sig.white_noise(args.n, args.fs, args.seed)
    elif args.kind == "ones":
        signal = sig.ones(args.n, args.fs)
    else:
        if args.f0 is None:
            raise ValueError("tone generation requires --f0")
        signal = sig.tone(args.n, args.fs, args.f0, args.amplitude)
    sig.write_wav(args.out, signal, fmt="float32")
    print(_json_line({
        "schema": 1,
        "command": "generate",
        "kind": args.kind,
        "n": args.n,
        "fs": args.fs,
        "seed": args.seed,
        "f0": args.f0,
        "amplitude": _round6(args.amplitude),
        "out": args.out,
    }))
    return 0


# ---------------------------------------------------------------------------
# upsample


def _spec_from_args(args) -> UpsamplerSpec:
    lifting = None
    if args.layer == "wavelet-lifting":
        if args.P is None or args.U is None or args.A is None:
            raise ValueError("wavelet-lifting requires --P, --U and --A")
        lifting = LiftingParams(args.P, args.U, args.A)
    factor = args.factor
    if factor is None:
        if args.layer == "transposed" and args.stride is not None:
            factor = args.stride
        else:
            raise ValueError("--factor is required")
    return UpsamplerSpec(
        kind=args.layer,
        factor=factor,
        filter_length=args.length,
        stride=args.stride,
        sinc_taps=args.taps,
        lifting=lifting,
        seed=args.seed,
    )


def cmd_upsample(args) -> int:
    spec = _spec_from_args(args)
    signal = sig.read_wav(getattr(args, "in"))
    if args.wavelet_mode == "roundtrip":
        out = wavelet_roundtrip(spec, signal)
    else:
        out = apply(spec, signal)
    sig.write_wav(args.out, out, fmt="float32")
    print(_json_line({
        "schema": 1,
        "command": "upsample",
        "in": getattr(args, "in"),
        "layer": spec.kind,
        "factor": spec.factor,
        "length": spec.filter_length,
        "stride": spec.stride,
        "taps": spec.sinc_taps,
        "P": None if spec.lifting is None else _round6(spec.lifting.p),
        "U": None if spec.lifting is None else _round6(spec.lifting.u),
        "A": None if spec.lifting is None else _round6(spec.lifting.a),
        "seed": spec.seed,
        "wavelet_mode": args.wavelet_mode,
        "out": args.out,
        "out_sample_rate_hz": out.sample_rate_hz,
    }))
    return 0


# ---------------------------------------------------------------------------
# analyze


def _write_csv(path, matrix: np.ndarray) -> None:
    np.savetxt(path, matrix, fmt="%.6f", delimiter=",", newline="\n")


def _write_pgm(path, spectrogram: ana.Spectrogram) -> None:
    """8-bit binary PGM: dB in [-80, 0] mapped to [0, 255], bin 0 at the bottom row."""
    db = np.clip(spectrogram.magnitudes_db, -80.0, 0.0)
    scaled = np.round((db + 80.0) / 80.0 * 255.0).astype(np.uint8)
    img = np.flipud(scaled.T)
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + img.tobytes())


def cmd_analyze(args) -> int:
    if (args.fs_in is None) != (args.factor is None):
        raise ValueError("replica prediction requires both --fs-in and --factor")
    signal = sig.read_wav(getattr(args, "in"))
    spect = ana.spectrogram(signal, args.stft_size, args.hop, args.window)
    if args.csv:
        _write_csv(args.csv, spect.magnitudes_db)
    if args.pgm:
        _write_pgm(args.pgm, spect)

    artifacts = None
    if args.fs_in is not None:
        spectrum = ana.avg_spectrum(signal, args.stft_size)
        report = ana.artifact_report(
            spectrum, args.fs_in, args.factor, threshold_db=args.threshold_db
        )
        artifacts = {
            "predicted_replicas_hz": [_round6(f) for f in report.predicted_replicas_hz],
            "tonal_peaks": [
                {"freq_hz": _round6(p.freq_hz), "prominence_db": _round6(p.prominence_db)}
                for p in report.tonal_peaks
            ],
            "band_attenuation_db": [_round6(b) for b in report.band_attenuation_db],
            "tonal_detected": bool(report.tonal_detected),
            "filtering_detected": bool(report.filtering_detected),
        }

    body = {
        "schema": 1,
        "command": "analyze",
        "config": {
            "in": getattr(args, "in"),
            "stft_size": args.stft_size,
            "hop": args.hop,
            "window": args.window,
            "fs_in": args.fs_in,
            "factor": args.factor,
            "threshold_db": _round6(args.threshold_db),
        },
        "input": {
            "sample_rate_hz": signal.sample_rate_hz,
            "channels": signal.channels,
            "num_samples": signal.num_samples,
        },
        "spectrogram": {
            "frames": spect.num_frames,
            "bins": spect.num_bins,
            "csv": args.csv,
            "pgm": args.pgm,
        },
        "artifacts": artifacts,
    }
    text = json.dumps(body, indent=2) + "\n"
    with open(args.report, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(_json_line({"schema": 1, "command": "analyze", "report": args.report}))
    return 0


# ---------------------------------------------------------------------------
# verify

_FS_IN = 8000
_FACTOR = 4


class _Suite:
    def __init__(self, name: str):
        self.name = name
        self.failures = 0
        self.checks = 0

    def check(self, name: str, value: float, threshold: float, ok: bool, relation: str):
        self.checks += 1
        verdict = "PASS" if ok else "FAIL"
        if not ok:
            self.failures += 1
        print(f"[{self.name}] {name}: value={value:.6g} {relation} {threshold:g} {verdict}")

    def below(self, name: str, value: float, threshold: float):
        self.check(name, value, threshold, value < threshold, "<")

    def at_most(self, name: str, value: float, threshold: float):
        self.check(name, value, threshold, value <= threshold, "<=")

    def at_least(self, name: str, value: float, threshold: float):
        self.check(name, value, threshold, value >= threshold, ">=")


def _pr_suite(suite: _Suite) -> None:
    rng = np.random.Generator(np.random.Philox(424242))
    signals = [sig.Signal(2.0 * rng.random(1024) - 1.0, _FS_IN) for _ in range(50)]
    triples = []
    while len(triples) < 20:
        p, u = rng.uniform(-2, 2, size=2)
        a = rng.uniform(0.1, 3.0) * rng.choice([-1.0, 1.0])
        triples.append(LiftingParams(p, u, a))

    for base, lifting, label in (
        ("haar", None, "haar"),
        ("lazy", None, "lazy"),
    ):
        for levels in (1, 2):
            worst = max(
                ana.perfect_reconstruction_error(base, levels, x, lifting) for x in signals
            )
            suite.below(f"{label} levels={levels} round trip", worst, 1e-9)
    for levels in (1, 2):
        worst = max(
            ana.perfect_reconstruction_error("lifting", levels, x, params)
            for params in triples
            for x in signals
        )
        suite.below(f"lifting 20 random triples levels={levels} round trip", worst, 1e-9)
    odd = sig.Signal(2.0 * rng.random(1023) - 1.0, _FS_IN)
    suite.below(
        "haar odd-length pad round trip",
        ana.perfect_reconstruction_error("haar", 1, odd),
        1e-9,
    )


def _masked_response_diff(spec: UpsamplerSpec, taps: np.ndarray) -> float:
    measured = ana.measure_response(spec, _FS_IN)
    reference = ana.analytic_response(taps, 512, spec.factor * _FS_IN)
    keep = ana.null_exclusion_mask(reference.magnitude_db)
    return float(np.max(np.abs(measured.magnitude_db[keep] - reference.magnitude_db[keep])))


def _response_suite(suite: _Suite) -> None:
    filters = WaveletFilters.haar()
    omega = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    grid = np.exp(-1j * np.outer(omega, np.arange(2)))
    ls = np.abs(grid @ filters.ls) ** 2
    hs = np.abs(grid @ filters.hs) ** 2
    suite.below("haar |Ls|^2+|Hs|^2 = 2 on 4096-point grid", float(np.max(np.abs(ls + hs - 2.0))), 1e-9)

    haar_spec = UpsamplerSpec(kind="wavelet-haar", factor=2, seed=11)
    flat = ana.measure_response(haar_spec, _FS_IN)
    suite.at_most("haar synthesis path flatness", float(np.max(np.abs(flat.magnitude_db))), 1.0)

    stretch_spec = UpsamplerSpec(kind="stretch", factor=_FACTOR, seed=12)
    flat = ana.measure_response(stretch_spec, _FS_IN)
    suite.at_most("stretch response flatness", float(np.max(np.abs(flat.magnitude_db))), 1.0)

    spectra = [
        ana.avg_spectrum(apply(stretch_spec, sig.white_noise(1 << 17, _FS_IN, 500 + r)))
        for r in range(32)
    ]
    bands = ana.band_attenuation(ana.average_spectra(spectra), _FS_IN, _FACTOR)
    suite.at_most("stretch band attenuation spread", float(np.max(np.abs(bands))), 1.0)

    suite.at_most(
        "nearest x4 vs analytic rectangular response",
        _masked_response_diff(UpsamplerSpec(kind="nearest", factor=4, seed=13), rectangular_filter(4)),
        1.0,
    )
    suite.at_most(
        "linear x4 vs analytic triangular response",
        _masked_response_diff(UpsamplerSpec(kind="linear", factor=4, seed=14), triangular_filter(4)),
        1.0,
    )
    suite.at_most(
        "sinc x4 vs analytic windowed-sinc response",
        _masked_response_diff(UpsamplerSpec(kind="sinc", factor=4, seed=15), sinc_filter(4)),
        1.0,
    )
    suite.at_most(
        "nearest x2 vs analytic two-tap response",
        _masked_response_diff(UpsamplerSpec(kind="nearest", factor=2, seed=16), rectangular_filter(2)),
        1.0,
    )

    noise_specs = {}
    for kind in ("nearest", "linear", "sinc"):
        layer = UpsamplerSpec(kind=kind, factor=_FACTOR, seed=17)
        spectra = [
            ana.avg_spectrum(apply(layer, sig.white_noise(1 << 15, _FS_IN, 600 + r)))
            for r in range(8)
        ]
        noise_specs[kind] = ana.band_attenuation(ana.average_spectra(spectra), _FS_IN, _FACTOR)
    suite.at_least("sinc stopband attenuation (bands 1-3)", float(-np.max(noise_specs["sinc"][1:])), 30.0)
    suite.below(
        "linear band 3 below nearest band 3",
        float(noise_specs["linear"][3] - noise_specs["nearest"][3]),
        0.0,
    )


def _tonal_suite(suite: _Suite) -> None:
    base = sig.ones(1 << 15, _FS_IN)
    replicas = ana.replica_frequencies(_FS_IN, _FACTOR)

    stretched = apply(UpsamplerSpec(kind="stretch", factor=_FACTOR), base)
    spectrum = ana.avg_spectrum(stretched)
    for freq in replicas:
        suite.at_least(
            f"stretch on ones prominence at {freq:.0f} Hz",
            ana.tonal_prominence(spectrum, freq),
            40.0,
        )

    for kind in ("nearest", "linear", "sinc"):
        out = apply(UpsamplerSpec(kind=kind, factor=_FACTOR), base)
        spectrum = ana.avg_spectrum(out)
        worst = max(ana.tonal_prominence(spectrum, f) for f in replicas)
        suite.at_most(f"{kind} on ones max prominence", worst, 6.0)

    for length in (4, 8, 9):
        hits = 0
        for seed in range(10):
            layer = UpsamplerSpec(
                kind="transposed", factor=4, filter_length=length, stride=4, seed=100 + seed
            )
            spectrum = ana.avg_spectrum(apply(layer, base))
            if ana.tonal_prominence(spectrum, 8000.0) > 6.0:
                hits += 1
        suite.at_least(f"transposed L={length} S=4 tonal hits over 10 seeds", hits, 9)

    hits = 0
    for seed in range(10):
        layer = UpsamplerSpec(kind="subpixel", factor=4, filter_length=9, seed=200 + seed)
        spectrum = ana.avg_spectrum(apply(layer, base))
        if ana.tonal_prominence(spectrum, 8000.0) > 6.0:
            hits += 1
    suite.at_least("subpixel L=9 tonal hits over 10 seeds", hits, 9)

    tone_in = sig.tone(8192, _FS_IN, 1000.0)
    expected_hz = (1000.0, 7000.0, 9000.0, 15000.0)
    spectrum = ana.avg_spectrum(apply(UpsamplerSpec(kind="stretch", factor=_FACTOR), tone_in))
    worst_offset = 0
    for freq in expected_hz:
        center = int(round(freq / (spectrum.sample_rate_hz / 2.0) * (spectrum.num_bins - 1)))
        lo = max(0, center - 5)
        local = int(np.argmax(spectrum.magnitude_db[lo : center + 6])) + lo
        worst_offset = max(worst_offset, abs(local - center))
    suite.at_most("stretch imaging line placement (bins off prediction)", worst_offset, 1)

    spectrum = ana.avg_spectrum(apply(UpsamplerSpec(kind="sinc", factor=_FACTOR), tone_in))
    center = int(round(1000.0 / (spectrum.sample_rate_hz / 2.0) * (spectrum.num_bins - 1)))
    carrier = spectrum.magnitude_db[center]
    worst_image = -np.inf
    for freq in expected_hz[1:]:
        center = int(round(freq / (spectrum.sample_rate_hz / 2.0) * (spectrum.num_bins - 1)))
        level = float(np.max(spectrum.magnitude_db[center - 2 : center + 3]))
        worst_image = max(worst_image, level - carrier)
    suite.at_most("sinc image suppression relative to carrier", worst_image, -30.0)


def _grads_suite(suite: _Suite) -> None:
    rng = np.random.Generator(np.random.Philox(31337))
    h = 1e-6
    worst = 0.0
    for _case in range(100):
        x = sig.Signal(2.0 * rng.random(64) - 1.0, _FS_IN)
        p, u = rng.uniform(-2, 2, size=2)
        a = rng.uniform(0.1, 3.0) * rng.choice([-1.0, 1.0])
        params = LiftingParams(p, u, a)
        grads = lifting_param_grads(x, params)
        analytic = {
            "p": (grads.coarse_wrt_p, grads.detail_wrt_p),
            "u": (grads.coarse_wrt_u, grads.detail_wrt_u),
            "a": (grads.coarse_wrt_a, grads.detail_wrt_a),
        }
        for name in ("p", "u", "a"):
            plus = dict(p=params.p, u=params.u, a=params.a)
            minus = dict(plus)
            plus[name] += h
            minus[name] -= h
            cp, dp = lifting_analysis(x, LiftingParams(**plus))
            cm, dm = lifting_analysis(x, LiftingParams(**minus))
            fd_coarse = (cp.data - cm.data) / (2 * h)
            fd_detail = (dp.data - dm.data) / (2 * h)
            for got, fd in zip(analytic[name], (fd_coarse, fd_detail)):
                scale = max(float(np.max(np.abs(fd))), 1e-9)
                worst = max(worst, float(np.max(np.abs(got - fd))) / scale)
    suite.below("lifting grads vs central differences (100 cases)", worst, 1e-6)


_SUITES = {
    "pr": _pr_suite,
    "response": _response_suite,
    "tonal": _tonal_suite,
    "grads": _grads_suite,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    checks = 0
    for name in names:
        suite = _Suite(name)
        _SUITES[name](suite)
        failures += suite.failures
        checks += suite.checks
    print(_json_line({
        "schema": 1,
        "command": "verify",
        "suite": args.suite,
        "checks": checks,
        "failures": failures,
        "passed": failures == 0,
    }))
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upsample-audit",
        description="Audio upsampling layers and artifact forensics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a deterministic test signal as float32 WAV")
    gen.add_argument("--kind", required=True, choices=("noise", "ones", "tone"))
    gen.add_argument("--n", required=True, type=int, help="sample count")
    gen.add_argument("--fs", required=True, type=int, help="sample rate in Hz")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--f0", type=float, default=None, help="tone frequency in Hz")
    gen.add_argument("--amplitude", type=float, default=1.0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    ups = sub.add_parser("upsample", help="apply an upsampling layer to a WAV file")
    ups.add_argument("--in", required=True, dest="in")
    ups.add_argument("--out", required=True)
    ups.add_argument("--layer", required=True, choices=LAYER_CHOICES)
    ups.add_argument("--factor", type=int, default=None)
    ups.add_argument("--length", type=int, default=None, help="filter length for transposed/subpixel")
    ups.add_argument("--stride", type=int, default=None, help="stride for transposed")
    ups.add_argument("--taps", type=int, default=None, help="tap count for sinc")
    ups.add_argument("--seed", type=int, default=0)
    ups.add_argument("--P", type=float, default=None)
    ups.add_argument("--U", type=float, default=None)
    ups.add_argument("--A", type=float, default=None)
    ups.add_argument(
        "--wavelet-mode",
        choices=("synthesis", "roundtrip"),
        default="synthesis",
        help="synthesis drives the upsampling path; roundtrip runs analysis then synthesis",
    )
    ups.set_defaults(func=cmd_upsample)

    anl = sub.add_parser("analyze", help="artifact report plus spectrogram export")
    anl.add_argument("--in", required=True, dest="in")
    anl.add_argument("--report", required=True, help="JSON report path")
    anl.add_argument("--csv", default=None, help="spectrogram CSV path (frames x bins, dB)")
    anl.add_argument("--pgm", default=None, help="spectrogram PGM path (P5, 8-bit)")
    anl.add_argument("--stft-size", type=int, default=512)
    anl.add_argument("--hop", type=int, default=128)
    anl.add_argument("--window", choices=("hann", "rect"), default="hann")
    anl.add_argument("--fs-in", type=int, default=None, help="source rate before upsampling")
    anl.add_argument("--factor", type=int, default=None, help="upsampling factor used")
    anl.add_argument("--threshold-db", type=float, default=6.0)
    anl.set_defaults(func=cmd_analyze)

    ver = sub.add_parser("verify", help="run invariant suites with fixed seeds")
    ver.add_argument("--suite", choices=("pr", "response", "tonal", "grads", "all"), default="all")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
