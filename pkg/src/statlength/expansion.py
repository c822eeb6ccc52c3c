"""Exact multivariate polynomial expansion over the Gaussian rationals.

Used as the brute-force side of the cross-term certificate: the transformed
sum ``sum_k |(U z)_k|**(2p)`` is expanded in four independent variables
``x, xbar, y, ybar`` and single coefficients are read off.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


class Gauss(NamedTuple):
    """Exact complex number with rational parts."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, z) -> "Gauss":
        if isinstance(z, Gauss):
            return z
        if isinstance(z, (int, Fraction)):
            return cls(Fraction(z), Fraction(0))
        z = complex(z)
        # Fraction(float) is exact
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, other):
        return Gauss(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        return Gauss(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def conj(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


ZERO = Gauss(Fraction(0), Fraction(0))
ONE = Gauss(Fraction(1), Fraction(0))

# exponent tuples are ordered (x, xbar, y, ybar)
Poly = dict


def poly_add(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for mono, c in g.items():
        out[mono] = out.get(mono, ZERO) + c
        if out[mono].is_zero():
            del out[mono]
    return out


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            mono = tuple(i + j for i, j in zip(m1, m2))
            out[mono] = out.get(mono, ZERO) + c1 * c2
    return {m: c for m, c in out.items() if not c.is_zero()}


def poly_pow(f: Poly, n: int) -> Poly:
    out: Poly = {(0, 0, 0, 0): ONE}
    for _ in range(n):
        out = poly_mul(out, f)
    return out


def linear_form(u, v, conjugate: bool = False) -> Poly:
    """``u x + v y`` or, with ``conjugate``, ``conj(u) xbar + conj(v) ybar``."""
    u, v = Gauss.of(u), Gauss.of(v)
    if conjugate:
        return {m: c for m, c in (((0, 1, 0, 0), u.conj()), ((0, 0, 0, 1), v.conj())) if not c.is_zero()}
    return {m: c for m, c in (((1, 0, 0, 0), u), ((0, 0, 1, 0), v)) if not c.is_zero()}


def transformed_power_sum(p: int, rows) -> Poly:
    """Expand ``sum_k (u_k x + v_k y)**p (conj(u_k) xbar + conj(v_k) ybar)**p``."""
    total: Poly = {}
    for u, v in rows:
        term = poly_mul(poly_pow(linear_form(u, v), p), poly_pow(linear_form(u, v, True), p))
        total = poly_add(total, term)
    return total


def coefficient(f: Poly, mono: tuple[int, int, int, int]) -> Gauss:
    return f.get(tuple(mono), ZERO)
