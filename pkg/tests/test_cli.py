"""End-to-end checks of the command line interface via subprocesses."""

import json
import subprocess
import sys

import numpy as np
import pytest

from upsample_audit.signals import read_wav


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "upsample_audit.cli", *map(str, args)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


def make_wav(tmp_path, name, *gen_args):
    path = tmp_path / name
    run_cli("generate", "--out", path, *gen_args)
    return path


class TestGenerate:
    def test_ones_writes_unit_samples(self, tmp_path):
        path = make_wav(tmp_path, "ones.wav", "--kind", "ones", "--n", 16, "--fs", 8000)
        x = read_wav(path)
        assert x.sample_rate_hz == 8000
        np.testing.assert_array_equal(x.data[0], np.ones(16))

    def test_noise_is_reproducible(self, tmp_path):
        a = make_wav(tmp_path, "a.wav", "--kind", "noise", "--n", 4096, "--fs", 8000, "--seed", 1)
        b = make_wav(tmp_path, "b.wav", "--kind", "noise", "--n", 4096, "--fs", 8000, "--seed", 1)
        assert a.read_bytes() == b.read_bytes()

    def test_stdout_echo_is_json(self, tmp_path):
        proc = run_cli(
            "generate", "--kind", "tone", "--n", 64, "--fs", 8000,
            "--f0", 1000, "--out", tmp_path / "t.wav",
        )
        echo = json.loads(proc.stdout)
        assert echo["schema"] == 1
        assert echo["command"] == "generate"

    def test_tone_above_nyquist_fails_cleanly(self, tmp_path):
        proc = run_cli(
            "generate", "--kind", "tone", "--n", 64, "--fs", 8000,
            "--f0", 5000, "--out", tmp_path / "t.wav",
            expect=2,
        )
        assert "error:" in proc.stderr

    def test_tone_requires_f0(self, tmp_path):
        run_cli(
            "generate", "--kind", "tone", "--n", 64, "--fs", 8000,
            "--out", tmp_path / "t.wav",
            expect=2,
        )


class TestUpsample:
    def test_stretch_quadruples_the_rate(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 256, "--fs", 8000)
        out = tmp_path / "out.wav"
        proc = run_cli("upsample", "--in", src, "--out", out, "--layer", "stretch", "--factor", 4)
        y = read_wav(out)
        assert y.sample_rate_hz == 32000
        assert y.num_samples == 1024
        echo = json.loads(proc.stdout)
        assert echo["out_sample_rate_hz"] == 32000

    def test_seeded_transposed_runs_are_byte_identical(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 256, "--fs", 8000)
        outs = []
        for name in ("a.wav", "b.wav"):
            out = tmp_path / name
            run_cli(
                "upsample", "--in", src, "--out", out, "--layer", "transposed",
                "--length", 8, "--stride", 4, "--seed", 3,
            )
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_wavelet_round_trip_mode_preserves_the_input(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 997, "--fs", 8000)
        out = tmp_path / "rt.wav"
        run_cli(
            "upsample", "--in", src, "--out", out, "--layer", "wavelet-lifting",
            "--factor", 2, "--P", 1, "--U", 0.5, "--A", 1.41421356,
            "--wavelet-mode", "roundtrip",
        )
        x, y = read_wav(src), read_wav(out)
        assert y.sample_rate_hz == 8000
        assert y.num_samples == 997
        assert np.max(np.abs(y.data - x.data)) < 1e-6

    def test_wavelet_synthesis_doubles_per_level(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 128, "--fs", 8000)
        out = tmp_path / "up.wav"
        run_cli("upsample", "--in", src, "--out", out, "--layer", "wavelet-haar", "--factor", 4)
        y = read_wav(out)
        assert y.sample_rate_hz == 32000
        assert y.num_samples == 512

    def test_transposed_factor_defaults_to_stride(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 64, "--fs", 8000)
        out = tmp_path / "t.wav"
        run_cli(
            "upsample", "--in", src, "--out", out, "--layer", "transposed",
            "--length", 4, "--stride", 4,
        )
        assert read_wav(out).sample_rate_hz == 32000

    def test_lifting_layer_requires_the_triple(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 64, "--fs", 8000)
        proc = run_cli(
            "upsample", "--in", src, "--out", tmp_path / "x.wav",
            "--layer", "wavelet-lifting", "--factor", 2,
            expect=2,
        )
        assert "error:" in proc.stderr

    def test_subpixel_requires_length(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 64, "--fs", 8000)
        run_cli(
            "upsample", "--in", src, "--out", tmp_path / "x.wav",
            "--layer", "subpixel", "--factor", 4,
            expect=2,
        )

    def test_unknown_layer_is_a_usage_error(self, tmp_path):
        src = make_wav(tmp_path, "in.wav", "--kind", "noise", "--n", 64, "--fs", 8000)
        run_cli(
            "upsample", "--in", src, "--out", tmp_path / "x.wav",
            "--layer", "bicubic", "--factor", 4,
            expect=2,
        )

    def test_missing_input_file_fails_cleanly(self, tmp_path):
        run_cli(
            "upsample", "--in", tmp_path / "nope.wav", "--out", tmp_path / "x.wav",
            "--layer", "stretch", "--factor", 4,
            expect=2,
        )


@pytest.fixture()
def stretched_ones(tmp_path):
    src = make_wav(tmp_path, "ones.wav", "--kind", "ones", "--n", 32768, "--fs", 8000)
    out = tmp_path / "up.wav"
    run_cli("upsample", "--in", src, "--out", out, "--layer", "stretch", "--factor", 4)
    return out


class TestAnalyze:
    def test_report_flags_offset_replicas(self, stretched_ones, tmp_path):
        report_path = tmp_path / "report.json"
        run_cli(
            "analyze", "--in", stretched_ones, "--report", report_path,
            "--fs-in", 8000, "--factor", 4,
        )
        report = json.loads(report_path.read_text())
        assert report["schema"] == 1
        artifacts = report["artifacts"]
        assert artifacts["predicted_replicas_hz"] == [8000.0, 16000.0]
        assert artifacts["tonal_detected"] is True
        freqs = [p["freq_hz"] for p in artifacts["tonal_peaks"]]
        assert freqs == [8000.0, 16000.0]
        assert all(p["prominence_db"] > 40.0 for p in artifacts["tonal_peaks"])

    def test_report_flags_filtering_without_tones(self, tmp_path):
        src = make_wav(tmp_path, "n.wav", "--kind", "noise", "--n", 32768, "--fs", 8000)
        up = tmp_path / "up.wav"
        run_cli("upsample", "--in", src, "--out", up, "--layer", "sinc", "--factor", 4)
        report_path = tmp_path / "report.json"
        run_cli(
            "analyze", "--in", up, "--report", report_path,
            "--fs-in", 8000, "--factor", 4,
        )
        artifacts = json.loads(report_path.read_text())["artifacts"]
        assert artifacts["tonal_detected"] is False
        assert artifacts["filtering_detected"] is True
        assert artifacts["band_attenuation_db"][-1] < -30.0

    def test_reports_are_byte_identical_across_runs(self, stretched_ones, tmp_path):
        paths = [tmp_path / "r1.json", tmp_path / "r2.json"]
        for p in paths:
            run_cli(
                "analyze", "--in", stretched_ones, "--report", p,
                "--fs-in", 8000, "--factor", 4,
            )
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_round_trips_the_spectrogram(self, tmp_path):
        src = make_wav(tmp_path, "n.wav", "--kind", "noise", "--n", 8192, "--fs", 8000)
        report_path, csv_path = tmp_path / "r.json", tmp_path / "s.csv"
        run_cli("analyze", "--in", src, "--report", report_path, "--csv", csv_path)
        matrix = np.loadtxt(csv_path, delimiter=",")
        report = json.loads(report_path.read_text())
        assert matrix.shape == (report["spectrogram"]["frames"], report["spectrogram"]["bins"])

        from upsample_audit.analysis import spectrogram

        view = spectrogram(read_wav(src))
        assert np.max(np.abs(matrix - view.magnitudes_db)) < 1e-6

    def test_pgm_header_and_payload(self, tmp_path):
        src = make_wav(tmp_path, "n.wav", "--kind", "noise", "--n", 8192, "--fs", 8000)
        report_path, pgm_path = tmp_path / "r.json", tmp_path / "s.pgm"
        run_cli("analyze", "--in", src, "--report", report_path, "--pgm", pgm_path)
        report = json.loads(report_path.read_text())
        frames, bins = report["spectrogram"]["frames"], report["spectrogram"]["bins"]
        raw = pgm_path.read_bytes()
        header = f"P5\n{frames} {bins}\n255\n".encode()
        assert raw.startswith(header)
        assert len(raw) == len(header) + frames * bins

    def test_replica_prediction_needs_both_rate_and_factor(self, tmp_path):
        src = make_wav(tmp_path, "n.wav", "--kind", "noise", "--n", 8192, "--fs", 8000)
        proc = run_cli(
            "analyze", "--in", src, "--report", tmp_path / "r.json", "--fs-in", 8000,
            expect=2,
        )
        assert "error:" in proc.stderr


class TestVerify:
    @pytest.mark.parametrize("suite", ["pr", "grads"])
    def test_fast_suites_pass(self, suite):
        proc = run_cli("verify", "--suite", suite)
        summary = json.loads(proc.stdout.strip().splitlines()[-1])
        assert summary["command"] == "verify"
        assert summary["failures"] == 0
        assert summary["passed"] is True
