"""Exponential Riordan arrays and generalized Stirling numbers.

An exponential Riordan array ``R_e[d, h]`` is the infinite lower-triangular
matrix with entries ``d_{n,k} = [t^n/n!] d(t) h(t)^k / k!``.  Arrays here are
defined by their pair of series and never stored densely; each column
``d h^k / k!`` is computed the first time it is touched and cached.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import IdentityViolation, NonzeroConstantTerm, NotInvertible, OrderExceeded
from .series import (
    ExpSeries,
    ThetaPoly,
    binomial_series,
    constant_series,
    exp_series,
    extract_coeff,
    falling_factorial,
    identity_series,
    log1p_series,
)

__all__ = [
    "ExpRiordan",
    "OrdinaryRiordan",
    "riordan_mul",
    "riordan_inverse",
    "entry",
    "ftra",
    "row_sum",
    "GStirlingParams",
    "stirling_array",
    "gstirling",
    "gstirling_bell",
    "compositions",
    "laguerre_row",
    "laguerre_array",
    "conjugate_sheffer",
    "sheffer_sequence",
]


class ExpRiordan:
    """Lazy exponential Riordan array ``R_e[d, h]`` valid through ``order``."""

    def __init__(self, d: ExpSeries, h: ExpSeries, order: int | None = None):
        if d.coeffs[0] == 0:
            raise NotInvertible("d must have a nonzero constant term")
        if h.coeffs[0] != 0:
            raise NonzeroConstantTerm("h must have zero constant term")
        if h.order < 1 or h.coeffs[1] == 0:
            raise NotInvertible("h must have a nonzero linear term")
        n = min(d.order, h.order)
        if order is not None:
            if order > n:
                raise OrderExceeded(f"series only valid to order {n}")
            n = order
        self.order = n
        self.d = d.truncate(n)
        self.h = h.truncate(n)
        self._lock = threading.Lock()
        self._hpow = [constant_series(1, n)]
        self._columns: dict[int, ExpSeries] = {}

    @classmethod
    def identity(cls, order: int) -> "ExpRiordan":
        return cls(constant_series(1, order), identity_series(order))

    def column(self, k: int) -> ExpSeries:
        """The generating function ``d h^k / k!`` of column k."""
        col = self._columns.get(k)
        if col is not None:
            return col
        with self._lock:
            while len(self._hpow) <= k:
                m = len(self._hpow)
                self._hpow.append(self._hpow[-1] * self.h / m)
            col = self._columns.setdefault(k, self.d * self._hpow[k])
        return col

    def entry(self, n: int, k: int):
        if n < 0 or k < 0:
            raise ValueError("indices must be nonnegative")
        if n > self.order:
            raise OrderExceeded(f"row {n} requested from an array valid to order {self.order}")
        if k > n:
            return Fraction(0)
        return self.column(k).coeffs[n]

    def row(self, n: int) -> list:
        return [self.entry(n, k) for k in range(n + 1)]

    def matrix(self, size: int) -> list[list]:
        """Dense ``size x size`` leading block."""
        return [[self.entry(n, k) for k in range(size)] for n in range(size)]

    def __mul__(self, other: "ExpRiordan") -> "ExpRiordan":
        return riordan_mul(self, other)

    def inverse(self) -> "ExpRiordan":
        return riordan_inverse(self)

    def same_array(self, other: "ExpRiordan") -> bool:
        n = min(self.order, other.order)
        return self.d.agrees_with(other.d, n) and self.h.agrees_with(other.h, n)

    def __repr__(self):
        return f"ExpRiordan(d={self.d!r}, h={self.h!r})"


def entry(R: ExpRiordan, n: int, k: int):
    return R.entry(n, k)


def riordan_mul(R1: ExpRiordan, R2: ExpRiordan) -> ExpRiordan:
    """``R_e[d, h] * R_e[g, f] = R_e[d g(h), f(h)]``."""
    n = min(R1.order, R2.order)
    h = R1.h.truncate(n)
    return ExpRiordan(R1.d.truncate(n) * R2.d.truncate(n)(h), R2.h.truncate(n)(h))


def riordan_inverse(R: ExpRiordan) -> ExpRiordan:
    """``R_e[d, h]^{-1} = R_e[1 / d(hbar), hbar]``."""
    hbar = R.h.reversion()
    return ExpRiordan(R.d(hbar).reciprocal(), hbar)


def row_sum(R: ExpRiordan, c: ExpSeries, n: int):
    """``sum_k d_{n,k} c_k`` computed directly from the entries."""
    total = Fraction(0)
    for k in range(n + 1):
        e = R.entry(n, k)
        if e != 0:
            total = total + e * extract_coeff(c, k)
    return total


def ftra(R: ExpRiordan, c: ExpSeries, n: int, verify: bool = False):
    """``[t^n/n!] d(t) c(h(t))``, the closed form of the weighted row sum.

    With ``verify=True`` the row sum is also formed entry by entry and an
    :class:`IdentityViolation` is raised if the two differ.
    """
    if n > R.order or n > c.order:
        raise OrderExceeded(f"row {n} exceeds the valid order")
    m = n
    h = R.h.truncate(m)
    value = extract_coeff(R.d.truncate(m) * c.truncate(m)(h), n)
    if verify:
        direct = row_sum(R, c, n)
        if direct != value:
            raise IdentityViolation(
                "FTRA disagrees with the direct row sum", value, direct, {"n": n}
            )
    return value


class OrdinaryRiordan:
    """Ordinary Riordan array ``R(d, h)``, ``d_{n,k} = [t^n] d h^k``.

    A coefficient-convention wrapper over :class:`ExpRiordan`:
    ``[t^n] d h^k = k!/n! * [t^n/n!] d h^k/k!``.
    """

    def __init__(self, d_coeffs, h_coeffs, order: int):
        self.order = order
        self._exp = ExpRiordan(
            ExpSeries.from_ordinary(d_coeffs, order), ExpSeries.from_ordinary(h_coeffs, order)
        )

    def entry(self, n: int, k: int):
        return self._exp.entry(n, k) * Fraction(math.factorial(k), math.factorial(n))

    def ftra(self, c_coeffs, n: int):
        """``[t^n] d(t) c(h(t))`` for ordinary coefficients ``c``."""
        c = ExpSeries.from_ordinary(c_coeffs, self.order)
        return ftra(self._exp, c, n) / math.factorial(n)


@dataclass(frozen=True)
class GStirlingParams:
    """Parameters ``(a, b, c)`` of the unified Stirling numbers ``S_{n,l}(a, b, c)``."""

    a: Fraction
    b: Fraction
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def weight(self, i: int) -> Fraction:
        """Bell-polynomial argument ``omega_i = (b - a)^{i-1 falling a}``."""
        return falling_factorial(self.b - self.a, i - 1, self.a)


def _stirling_series(p: GStirlingParams, order: int) -> tuple[ExpSeries, ExpSeries]:
    a, b, c = p.a, p.b, p.c
    if a == 0:
        d = exp_series(c, order)
        h = identity_series(order) if b == 0 else (exp_series(b, order) - 1) / b
    else:
        d = binomial_series(c / a, a, order)
        if b == 0:
            h = log1p_series(a, order) / a
        else:
            h = (binomial_series(b / a, a, order) - 1) / b
    return d, h


@lru_cache(maxsize=256)
def stirling_array(p: GStirlingParams, order: int) -> ExpRiordan:
    """``R_e[(1 + a t)^{c/a}, ((1 + a t)^{b/a} - 1)/b]`` with the a = 0 / b = 0 limits."""
    return ExpRiordan(*_stirling_series(p, order))


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` into exactly ``parts`` positive summands."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _bell(a: Fraction, b: Fraction, n: int, l: int) -> Fraction:
    p = GStirlingParams(a, b)
    omega = [None] + [p.weight(i) for i in range(1, n + 1)]
    total = Fraction(0)
    for comp in compositions(n, l):
        term = Fraction(1)
        for ci in comp:
            term *= omega[ci] / math.factorial(ci)
        total += term
    return total * Fraction(math.factorial(n), math.factorial(l))


def gstirling_bell(p: GStirlingParams, n: int, l: int) -> Fraction:
    """Bell-polynomial route.

    ``S_{n,l}(a, b, 0) = sum over compositions c_1 + ... + c_l = n of
    n!/l! prod omega_{c_j}/c_j!``; for ``c != 0`` the result is convolved
    with the coefficients ``c^{j falling a}`` of ``(1 + a t)^{c/a}``.
    """
    if p.c == 0:
        return _bell(p.a, p.b, n, l)
    return sum(
        (
            math.comb(n, k) * falling_factorial(p.c, n - k, p.a) * _bell(p.a, p.b, k, l)
            for k in range(l, n + 1)
        ),
        Fraction(0),
    )


def gstirling(p: GStirlingParams, n: int, l: int, route: str = "riordan") -> Fraction:
    """Generalized Stirling number ``S_{n,l}(a, b, c)``.

    ``route`` is ``"riordan"`` (coefficient extraction from the Riordan
    array), ``"bell"`` (composition sum) or ``"both"``, which computes the
    two and raises :class:`IdentityViolation` carrying both values if they
    differ.
    """
    if n < 0 or l < 0:
        raise ValueError("n and l must be nonnegative")
    if route == "bell":
        return gstirling_bell(p, n, l)
    order = max(n, 8)
    value = stirling_array(p, order).entry(n, l)
    if route == "riordan":
        return value
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    other = gstirling_bell(p, n, l)
    if other != value:
        raise IdentityViolation(
            "Stirling routes disagree", value, other, {"params": p, "n": n, "l": l}
        )
    return value


@lru_cache(maxsize=None)
def laguerre_array(order: int) -> ExpRiordan:
    """``R_e[-1/(t-1), t/(t-1)]``, whose row l lists the coefficients of l! L_l."""
    d = ExpSeries.from_ordinary([1] * (order + 1), order)
    h = ExpSeries.from_ordinary([0] + [-1] * order, order)
    return ExpRiordan(d, h)


def _laguerre_hypergeometric(l: int, j: int) -> Fraction:
    # (l!/j!) sum_i (-1)^i binom(j, i) (l+i)^{i falling} / i!
    s = sum(
        (
            (-1) ** i * math.comb(j, i) * falling_factorial(l + i, i) / math.factorial(i)
            for i in range(j + 1)
        ),
        Fraction(0),
    )
    return s * Fraction(math.factorial(l), math.factorial(j))


def laguerre_row(l: int, j: int) -> Fraction:
    """Coefficient of ``t^j`` in ``l! L_l(t)``, checked two ways.

    The hypergeometric sum and the Riordan entry of ``R_e[-1/(t-1), t/(t-1)]``
    are computed independently; :class:`IdentityViolation` if they differ.
    """
    if not 0 <= j <= l:
        raise ValueError("need 0 <= j <= l")
    left = _laguerre_hypergeometric(l, j)
    right = laguerre_array(max(l, 8)).entry(l, j)
    if left != right:
        raise IdentityViolation("Laguerre identity violated", left, right, {"l": l, "j": j})
    return left


def conjugate_sheffer(R: ExpRiordan, i: int) -> ThetaPoly:
    """``s^_i(theta) = sum_j d_{i,j} theta^j``, the i-th conjugate Sheffer polynomial."""
    return ThetaPoly(R.row(i))


def sheffer_sequence(d: ExpSeries, h: ExpSeries, i: int) -> ThetaPoly:
    """``[t^i/i!] exp(theta hbar(t)) / d(hbar(t))`` with theta symbolic."""
    n = min(d.order, h.order)
    hbar = h.truncate(n).reversion()
    gen = d.truncate(n)(hbar).reciprocal() * exp_series(ThetaPoly.theta(), n)(hbar)
    out = extract_coeff(gen, i)
    return out if isinstance(out, ThetaPoly) else ThetaPoly.constant(out)
