"""Independent oracles used to freeze expected values: exact change of basis
for polynomials, extended-precision quadrature, and exact series coefficients.

These deliberately avoid the library's own code paths.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp
import numpy as np


def poly_compose_affine(monomial_coeffs, a, b):
    """Coefficients of p(a + (b-a)(y+1)/2) in y, exactly (Fractions).

    ``monomial_coeffs`` are ascending in x.
    """
    a = Fraction(a)
    b = Fraction(b)
    alpha = a + (b - a) / 2  # x = alpha + beta*y
    beta = (b - a) / 2
    out = [Fraction(0)]
    power = [Fraction(1)]  # (alpha + beta*y)^j, ascending in y
    for coeff in monomial_coeffs:
        coeff = Fraction(coeff)
        while len(out) < len(power):
            out.append(Fraction(0))
        for k, pk in enumerate(power):
            out[k] += coeff * pk
        # multiply power by (alpha + beta*y)
        nxt = [Fraction(0)] * (len(power) + 1)
        for k, pk in enumerate(power):
            nxt[k] += alpha * pk
            nxt[k + 1] += beta * pk
        power = nxt
    return out


def monomial_to_chebyshev(monomial_coeffs):
    """Exact first-kind Chebyshev coefficients g_k of a polynomial in y on [-1,1]:
    p(y) = sum g_k T_k(y).  Uses y*T_k = (T_{k+1} + T_{|k-1|}) / 2."""
    cheb = [Fraction(0)]
    # basis[j] = chebyshev coefficients of y^j, built by repeated multiply-by-y
    basis = [Fraction(1)]
    for j, coeff in enumerate(monomial_coeffs):
        coeff = Fraction(coeff)
        while len(cheb) < len(basis):
            cheb.append(Fraction(0))
        for k, gk in enumerate(basis):
            cheb[k] += coeff * gk
        nxt = [Fraction(0)] * (len(basis) + 1)
        for k, gk in enumerate(basis):
            if k == 0:
                nxt[1] += gk
            else:
                nxt[k + 1] += gk / 2
                nxt[k - 1] += gk / 2
        basis = nxt
    return cheb


def exact_quadrature_coefficients(monomial_coeffs, a, b, d):
    """Exact c_k (k = 0..d) our quadrature convention should reproduce for a
    polynomial: c_0 = 2 g_0 and c_k = g_k, provided n > deg."""
    in_y = poly_compose_affine(monomial_coeffs, a, b)
    cheb = monomial_to_chebyshev(in_y)
    cheb += [Fraction(0)] * (d + 1 - len(cheb))
    out = [float(2 * cheb[0])] + [float(g) for g in cheb[1 : d + 1]]
    return np.array(out)


def mp_quadrature_coefficients(f_mp, a, b, n, d, dps=50):
    """Brute-force extended-precision evaluation of the n-point coefficient sums."""
    with mp.workdps(dps):
        a = mp.mpf(a)
        b = mp.mpf(b)
        thetas = [(mp.mpf(l) + mp.mpf("0.5")) * mp.pi / n for l in range(n)]
        xs = [a + (b - a) * (mp.cos(t) + 1) / 2 for t in thetas]
        fx = [f_mp(x) for x in xs]
        return [
            2 * mp.fsum(fx[l] * mp.cos(k * thetas[l]) for l in range(n)) / n
            for k in range(d + 1)
        ]


def mp_exp_series_coefficient(k, dps=50):
    """Exact Chebyshev coefficient of exp on [-1,1]: c_k = 2 I_k(1)."""
    with mp.workdps(dps):
        return 2 * mp.besseli(k, 1)
