#!/usr/bin/env python3
"""Regenerate src/wavelet/table.rs: minimum-phase Daubechies lowpass filters.

Spectral factorization of the Daubechies half-band polynomial carried out in
100-digit arithmetic with mpmath; roots inside the unit circle are kept.
Usage: python3 scripts/gen_daubechies.py > src/wavelet/table.rs
"""
import mpmath as mp

mp.mp.dps = 100


def daubechies(order):
    # P(y) = sum_k C(L-1+k, k) y^k, y = (2 - z - 1/z)/4
    # z^{L-1} Q(z) with y substituted, roots in z.
    L = order
    if L == 1:
        return [1 / mp.sqrt(2), 1 / mp.sqrt(2)]
    # polynomial in y
    py = [mp.binomial(L - 1 + k, k) for k in range(L)]
    # build polynomial in z of degree 2(L-1): sum_k c_k ((2 - z - z^-1)/4)^k * z^(L-1)
    deg = 2 * (L - 1)
    coeffs = [mp.mpf(0)] * (deg + 1)  # index = power of z
    base = {-1: mp.mpf(-0.25), 0: mp.mpf(0.5), 1: mp.mpf(-0.25)}
    for k, ck in enumerate(py):
        poly = {0: mp.mpf(1)}
        for _ in range(k):
            nxt = {}
            for e, v in poly.items():
                for e2, v2 in base.items():
                    nxt[e + e2] = nxt.get(e + e2, 0) + v * v2
            poly = nxt
        for e, v in poly.items():
            coeffs[e + L - 1] += ck * v
    roots = mp.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=400)
    inside = [r for r in roots if abs(r) < 1]
    assert len(inside) == L - 1
    # H(z) ∝ (1 + z)^L prod (z - r_i), coefficients in ascending powers
    h = [mp.mpc(1)]
    for _ in range(L):
        h = [a + b for a, b in zip(h + [0], [0] + h)]
    for r in inside:
        h = [(b - r * a) for a, b in zip(h + [0], [0] + h)]
    h = [mp.re(c) for c in h]
    s = mp.fsum(h)
    h = [c * mp.sqrt(2) / s for c in h]
    # minimum phase: energy concentrated at the start
    if abs(h[0]) < abs(h[-1]):
        h = list(reversed(h))
    return h


def main():
    print("// @generated by scripts/gen_daubechies.py; do not edit by hand.")
    print()
    print("/// Minimum-phase Daubechies lowpass filters, indexed by `order - 1`.")
    print("#[rustfmt::skip]")
    print("pub(crate) const DAUBECHIES_LOWPASS: [&[f64]; 10] = [")
    for L in range(1, 11):
        h = daubechies(L)
        print("    &[")
        for c in h:
            print("        " + mp.nstr(c, 20, min_fixed=-1, max_fixed=1) + ",")
        print("    ],")
    print("];")


if __name__ == "__main__":
    main()
