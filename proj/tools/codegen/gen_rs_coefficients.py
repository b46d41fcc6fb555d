#!/usr/bin/env python3
"""Generate Taylor coefficients (in z = 2p - 1) of the Riemann-Siegel
correction functions C0..C4 and write them as a C++ header.

Usage: gen_rs_coefficients.py > include/ladderlab/detail/rs_coefficients.hpp
"""
import sys
import mpmath as mp

mp.mp.dps = 60
ORDER = 90  # Taylor order in x = p - 1/2 before truncation
CUTOFF = mp.mpf("1e-22")


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def taylor_psi():
    # Psi is entire; expand around p = 1/2 (cos(2 pi p) = -1 there).
    return mp.taylor(psi, mp.mpf(1) / 2, ORDER)


def deriv(series, m):
    out = list(series)
    for _ in range(m):
        out = [out[j + 1] * (j + 1) for j in range(len(out) - 1)]
    return out


def combo(series, terms):
    n = len(series)
    acc = [mp.mpf(0)] * n
    for coef, m in terms:
        d = deriv(series, m)
        for j in range(len(d)):
            acc[j] += coef * d[j]
    return acc


def main():
    s = taylor_psi()
    pi = mp.pi
    cs = [
        combo(s, [(1, 0)]),
        combo(s, [(-1 / (96 * pi**2), 3)]),
        combo(s, [(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)]),
        combo(s, [(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5),
                  (-1 / (5308416 * pi**6), 9)]),
        combo(s, [(1 / (128 * pi**2), 0), (19 / (24576 * pi**4), 4),
                  (11 / (5898240 * pi**6), 8), (1 / (2038431744 * pi**8), 12)]),
    ]
    out = sys.stdout
    out.write("#pragma once\n\n")
    out.write("// Generated by tools/codegen/gen_rs_coefficients.py. Do not edit.\n")
    out.write("// Riemann-Siegel corrections C_k(p), z = 2p - 1: C_k = P_k(z^2) for even k,\n// C_k = z * P_k(z^2) for odd k. Coefficients of P_k, lowest order first.\n\n")
    out.write("#include <array>\n\nnamespace ladderlab::detail {\n\n")
    for k, c in enumerate(cs):
        # C_k has the parity of k in z; keep only that parity and store the
        # coefficients of the polynomial in w = z^2 (odd k: C_k = z * P(w)).
        coeffs = [c[j] / mp.mpf(2) ** j for j in range(len(c))]
        coeffs = coeffs[k % 2::2]
        last = max(j for j, v in enumerate(coeffs) if abs(v) > CUTOFF)
        coeffs = coeffs[: last + 1]
        out.write(f"inline constexpr std::array<double, {len(coeffs)}> kRsC{k} = {{\n")
        for v in coeffs:
            out.write(f"    {mp.nstr(v, 22, min_fixed=1, max_fixed=0)},\n")
        out.write("};\n\n")
        def ev(z):
            return mp.polyval(list(reversed(coeffs)), z * z) * (z if k % 2 else 1)
        mx = max(abs(ev(z)) for z in mp.linspace(-1, 1, 2001))
        out.write(f"inline constexpr double kRsC{k}Max = {mp.nstr(mx * 1.001, 6)};\n\n")
        sys.stderr.write(f"C{k}: {len(coeffs)} coeffs, max|C| ~ {mp.nstr(mx, 6)}\n")
    out.write("}  // namespace ladderlab::detail\n")


if __name__ == "__main__":
    main()
