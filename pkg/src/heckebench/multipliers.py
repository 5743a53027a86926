"""Spherical-harmonic multipliers of the hypersingular boundary operator.

The operator f -> integral (f(xi)-f(eta))/d0(xi,eta)^n dnu0(eta) on S^n is
diagonal on spherical harmonics of degree m with multiplier

    lambda_m = integral_{-1}^{1} (1+t)^alpha (1-t)^{-1} (1 - P_m(t)) dt,
    alpha = (n-3)/2,

P_m the Legendre polynomial.  (1-P_m(t))/(1-t) is a polynomial of degree
m-1, so Gauss-Jacobi quadrature with weight (1+t)^alpha is exact up to
rounding.  A differently published closed-form summation for lambda_m is
also provided; it disagrees with the defining integral for n = 2 and is
therefore only ever reported, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.special import roots_jacobi


def legendre_coefficients(m: int) -> list[Fraction]:
    """Coefficients of P_m in the monomial basis, ascending, exact."""
    # P_m(t) = sum_k C(m,k) C(m+k,k) ((t-1)/2)^k
    coeffs = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        c = Fraction(comb(m, k) * comb(m + k, k), 2**k)
        # expand (t-1)^k
        for j in range(k + 1):
            coeffs[j] += c * comb(k, j) * (-1) ** (k - j)
    return coeffs


def one_minus_legendre_divided(m: int) -> list[Fraction]:
    """Exact coefficients of q(t) = (1 - P_m(t)) / (1 - t), ascending.

    Synthetic division by (1 - t); the remainder must vanish because
    P_m(1) = 1.
    """
    p = legendre_coefficients(m)
    num = [-c for c in p]
    num[0] += 1  # 1 - P_m
    # synthetic division at the root t = 1: num(t) = (t - 1) h(t) + r
    desc = list(reversed(num))
    h: list[Fraction] = []
    acc = Fraction(0)
    for c in desc:
        acc = c + acc
        h.append(acc)
    r = h.pop()
    if r != 0:
        raise ArithmeticError("1 - P_m is not divisible by 1 - t")
    # num = (t - 1) h  =>  (1 - P_m)/(1 - t) = -h
    return list(reversed([-c for c in h]))


@dataclass(frozen=True)
class SphericalMultiplier:
    n: int
    values: tuple[float, ...]
    method: str = "gauss_jacobi"

    @property
    def alpha(self) -> float:
        return (self.n - 3) / 2.0

    def __post_init__(self):
        if self.values and self.values[0] != 0.0:
            raise ValueError("the degree-0 multiplier must vanish")
        if self.method == "gauss_jacobi" and any(v <= 0 for v in self.values[1:]):
            raise ValueError("positive-degree multipliers must be positive")


def multiplier_gauss_jacobi(m: int, n: int) -> float:
    """lambda_m for S^n by exact division plus Gauss-Jacobi quadrature."""
    if n < 2:
        raise ValueError("the multiplier integral needs n >= 2")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m == 0:
        return 0.0
    alpha = (n - 3) / 2.0
    q = one_minus_legendre_divided(m)
    nodes = m // 2 + 2  # one guard node beyond polynomial exactness
    # weight (1-x)^a (1+x)^b with a = 0, b = alpha
    x, w = roots_jacobi(nodes, 0.0, alpha)
    qv = np.zeros_like(x)
    for c in reversed(q):
        qv = qv * x + float(c)
    return float(np.sum(w * qv))


def multiplier_table(n: int, max_degree: int) -> SphericalMultiplier:
    vals = tuple(multiplier_gauss_jacobi(m, n) for m in range(max_degree + 1))
    return SphericalMultiplier(n, vals)


def multiplier_symbolic_n2(m: int) -> float:
    """Exact-rational evaluation of the n = 2 integral (oracle path).

    For alpha = -1/2 every moment integral_0^2 u^(k-1/2) du is a rational
    multiple of sqrt(2), so lambda_m = sqrt(2) * rational, computed exactly.
    """
    if m == 0:
        return 0.0
    q = one_minus_legendre_divided(m)
    # substitute t = u - 1: integral_0^2 u^(-1/2) q(u-1) du
    shifted = [Fraction(0)] * len(q)
    for j, c in enumerate(q):
        for i in range(j + 1):
            shifted[i] += c * comb(j, i) * (-1) ** (j - i)
    total = Fraction(0)
    for k, c in enumerate(shifted):
        # integral_0^2 u^(k-1/2) du = 2^(k+1)/(2k+1) * sqrt(2)
        total += c * Fraction(2 ** (k + 1), 2 * k + 1)
    return float(total) * float(np.sqrt(2.0))


def multiplier_closed_form(m: int, n: int) -> dict:
    """The published summation formula and its comparison report.

    closed = 2^alpha * sum_k C(m,k) C(m+k,k) (k-1)! / ((alpha+1)...(alpha+k-1))
    together with the bound 2^alpha (2^m - 1).  Observed to disagree with
    the defining integral for n = 2; both sides are reported, nothing is
    asserted.
    """
    alpha = (n - 3) / 2.0
    if m == 0:
        closed = 0.0
    else:
        total = 0.0
        for k in range(1, m + 1):
            denom = 1.0
            for j in range(1, k):
                denom *= alpha + j
            total += comb(m, k) * comb(m + k, k) * factorial(k - 1) / denom
        closed = (2.0**alpha) * total
    gj = multiplier_gauss_jacobi(m, n)
    bound = (2.0**alpha) * (2.0**m - 1.0)
    return {
        "m": m,
        "n": n,
        "closed_form": closed,
        "gauss_jacobi": gj,
        "abs_difference": abs(closed - gj),
        "lower_bound_claimed": bound,
        "bound_holds_for_integral": gj >= bound,
        "flag": "closed-form summation and bound disagree with the defining integral"
        if abs(closed - gj) > 1e-9 * max(1.0, abs(gj)) or gj < bound
        else "",
    }
