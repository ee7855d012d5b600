#!/usr/bin/env python3
"""Regenerates src/daubechies_tables.cpp.

Minimum-phase Daubechies low-pass filters are derived by spectral
factorization in extended precision (mpmath) and cross-checked against
PyWavelets' published tables when that package is importable.
"""
import sys

import mpmath as mp

mp.mp.dps = 60


def daubechies_lowpass(p):
    # Roots of the Daubechies polynomial P(y) = sum_k C(p-1+k, k) y^k with y = (1 - cos w)/2.
    coeffs = [mp.binomial(p - 1 + k, k) for k in range(p)]
    y_roots = mp.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=400) if p > 1 else []
    # Each y root maps to a pair z, 1/z via y = (2 - z - 1/z)/4; keep the root inside the unit circle.
    z_roots = []
    for y in y_roots:
        # z^2 - (2 - 4y) z + 1 = 0
        b = 2 - 4 * y
        disc = mp.sqrt(b * b - 4)
        z1 = (b + disc) / 2
        z2 = (b - disc) / 2
        z_roots.append(z1 if abs(z1) < 1 else z2)
    poly = [mp.mpc(1)]
    for _ in range(p):
        poly = poly_mul(poly, [mp.mpc(1), mp.mpc(1)])  # (1 + z^-1)
    for z in z_roots:
        poly = poly_mul(poly, [mp.mpc(1), -z])
    real = [mp.re(c) for c in poly]
    scale = mp.sqrt(2) / sum(real)
    return [c * scale for c in real]


def poly_mul(a, b):
    out = [mp.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def main():
    try:
        import pywt
    except ImportError:
        pywt = None
    lines = []
    for p in range(1, 21):
        g = daubechies_lowpass(p)
        if pywt is not None:
            ref = pywt.Wavelet("haar" if p == 1 else f"db{p}").rec_lo
            err = max(abs(float(a) - b) for a, b in zip(g, ref))
            if err > 1e-12:
                sys.exit(f"db{p}: mismatch against pywt ({err})")
        name = "haar" if p == 1 else f"db{p}"
        body = ",\n".join("    " + mp.nstr(c, 20, min_fixed=-1, max_fixed=1) for c in g)
        lines.append(f"constexpr double k_{name}[] = {{\n{body}}};\n")
    names = ["haar"] + [f"db{p}" for p in range(2, 21)]
    entries = ",\n".join(f"    {{\"{n}\", k_{n}}}" for n in names)
    out = [
        "// Generated by tools/gen_daubechies_tables.py; do not edit by hand.",
        "",
        "#include \"daubechies_tables.hpp\"",
        "",
        "namespace wws::detail {",
        "",
        "namespace {",
        "",
        "\n".join(lines),
        "}  // namespace",
        "",
        "const std::array<FilterTableEntry, 20>& daubechies_tables() {",
        "  static const std::array<FilterTableEntry, 20> tables{{",
        entries,
        "  }};",
        "  return tables;",
        "}",
        "",
        "}  // namespace wws::detail",
        "",
    ]
    sys.stdout.write("\n".join(out))


if __name__ == "__main__":
    main()
