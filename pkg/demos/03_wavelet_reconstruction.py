"""Wavelet upsampling: perfect reconstruction, flatness, and lifting gradients.

The wavelet path differs from the interpolators in kind: its analysis and
synthesis stages invert each other exactly for any lifting parameters, so
the layer can be made artifact-free by construction. This script checks the
round trip across bases and cascade depths, confirms the lifting form of
Haar matches the classical filter bank, measures the synthesis path's
spectral flatness, and spot-checks the analytic parameter gradients against
finite differences.

Run: python3 demos/03_wavelet_reconstruction.py
"""

import numpy as np

from upsample_audit import analysis as ana
from upsample_audit.signals import white_noise
from upsample_audit.upsamplers import (
    HAAR_PARAMS,
    LiftingParams,
    UpsamplerSpec,
    haar_analysis,
    lifting_analysis,
    lifting_param_grads,
)

FS = 8000


def main():
    x = white_noise(1024, FS, 1)

    print("Round-trip error (analysis then synthesis, max abs deviation):")
    cases = [
        ("lazy", None),
        ("haar", None),
        ("lifting", HAAR_PARAMS),
        ("lifting", LiftingParams(0.3, -0.2, 1.7)),
        ("lifting", LiftingParams(-1.5, 0.8, 0.4)),
    ]
    for base, params in cases:
        label = base if params is None else f"{base} (P={params.p}, U={params.u}, A={params.a:.4g})"
        for levels in (1, 2):
            err = ana.perfect_reconstruction_error(base, levels, x, lifting=params)
            print(f"  {label:<42} levels={levels}  err={err:.2e}")

    print()
    print("Lifting (1, 0.5, sqrt 2) against the classical Haar bank:")
    cl, dl = lifting_analysis(x, HAAR_PARAMS)
    ch, dh = haar_analysis(x)
    print(f"  coarse band max deviation: {np.max(np.abs(cl.data - ch.data)):.2e}")
    print(f"  detail band max deviation after a global sign flip: "
          f"{np.max(np.abs(dl.data + dh.data)):.2e}")

    print()
    print("Spectral flatness of the Haar synthesis path (white noise in both")
    print("bands, measured response relative to DC):")
    resp = ana.measure_response(UpsamplerSpec(kind="wavelet-haar", factor=2), FS)
    print(f"  worst deviation from flat: {np.max(np.abs(resp.magnitude_db)):.3f} dB")

    print()
    print("Analytic lifting gradients vs central finite differences (h=1e-6):")
    params = LiftingParams(0.8, -0.4, 1.7)
    grads = lifting_param_grads(x, params)
    h = 1e-6
    worst = 0.0
    for name in ("p", "u", "a"):
        bump = {"p": (h, 0, 0), "u": (0, h, 0), "a": (0, 0, h)}[name]
        hi = lifting_analysis(x, LiftingParams(params.p + bump[0], params.u + bump[1], params.a + bump[2]))
        lo = lifting_analysis(x, LiftingParams(params.p - bump[0], params.u - bump[1], params.a - bump[2]))
        fd_c = (hi[0].data - lo[0].data) / (2 * h)
        fd_d = (hi[1].data - lo[1].data) / (2 * h)
        scale = max(np.max(np.abs(fd_c)), np.max(np.abs(fd_d)), 1e-9)
        err = max(
            np.max(np.abs(getattr(grads, f"coarse_wrt_{name}") - fd_c)),
            np.max(np.abs(getattr(grads, f"detail_wrt_{name}") - fd_d)),
        ) / scale
        worst = max(worst, err)
        print(f"  d/d{name.upper()}: relative error {err:.2e}")
    print(f"  worst: {worst:.2e}")

    print()
    print("Takeaway: every lifting triple round-trips to machine precision, so")
    print("a wavelet upsampler can be trained through P, U, A without ever")
    print("losing invertibility, and the Haar choice is also spectrally flat.")


if __name__ == "__main__":
    main()
