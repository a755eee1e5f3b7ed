"""Monomial symmetric functions and three constructions of f_lambda(theta; alpha).

``f_lambda`` is the image of the factorial monomial symmetric function
``m*_lambda`` under the Ewens-Pitman specialization.  It is a polynomial of
degree ``l(lambda)`` in theta, and it can be built three ways:

* the closed product formula (``closed_f_lambda``), valid for every alpha;
* Newton interpolation through the nodes ``theta = -(l+i) alpha``,
  ``i = 0..l``, where ``f_lambda`` equals ``m*_lambda`` at ``l+i`` copies of
  alpha (``newton_f_lambda``);
* an alternating sum over the same node values (``altrep_f_lambda``).

The last two need the nodes to be distinct, so they refuse ``alpha == 0``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import AlphaZero
from .partitions import Partition
from .series import ThetaPoly, falling_factorial, rising_factorial, rising_poly

__all__ = [
    "SymEvalPoint",
    "FLambda",
    "distinct_rearrangements",
    "monomial_sym",
    "factorial_monomial_sym",
    "mstar_repeated_alpha",
    "divided_difference_table",
    "newton_f_lambda",
    "closed_f_lambda",
    "altrep_f_lambda",
    "nabla",
    "sheffer_delta",
    "weight_partial_sum",
    "weight_closed_form",
    "swapped_f_lambda",
]


@dataclass(frozen=True)
class SymEvalPoint:
    """A finite alphabet ``(x_1, ..., x_k)`` of rationals."""

    alphabet: tuple

    def __init__(self, alphabet: Sequence):
        object.__setattr__(self, "alphabet", tuple(Fraction(x) for x in alphabet))

    def __len__(self):
        return len(self.alphabet)


def _alphabet(pt) -> tuple:
    if isinstance(pt, SymEvalPoint):
        return pt.alphabet
    return tuple(Fraction(x) for x in pt)


def distinct_rearrangements(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every distinct permutation of a multiset, each exactly once."""
    counts = Counter(values)
    keys = sorted(counts, reverse=True)
    n = len(values)
    current: list[int] = []

    def rec():
        if len(current) == n:
            yield tuple(current)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                current.append(key)
                yield from rec()
                current.pop()
                counts[key] += 1

    yield from rec()


def _sym_sum(lam: Partition, pt, power) -> Fraction:
    xs = _alphabet(pt)
    if len(xs) < lam.length:
        return Fraction(0)
    total = Fraction(0)
    for exps in distinct_rearrangements(lam.padded(len(xs))):
        term = Fraction(1)
        for x, e in zip(xs, exps):
            if e:
                term *= power(x, e)
                if term == 0:
                    break
        total += term
    return total


def monomial_sym(lam: Partition, pt) -> Fraction:
    """``m_lambda`` evaluated at a finite alphabet."""
    return _sym_sum(lam, pt, lambda x, e: x**e)


def factorial_monomial_sym(lam: Partition, pt) -> Fraction:
    """``m*_lambda``: monomial with each power ``x^e`` replaced by ``x^{e falling}``."""
    return _sym_sum(lam, pt, falling_factorial)


def mstar_repeated_alpha(lam: Partition, k: int, alpha) -> Fraction:
    """Closed form of ``m*_lambda(alpha, ..., alpha)`` with k copies.

    ``k^{l falling} / prod r_j! * prod_j alpha^{lambda_j falling}``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    alpha = Fraction(alpha)
    val = Fraction(falling_factorial(k, lam.length), lam.freq_factorial_product())
    for part in lam.parts:
        val *= falling_factorial(alpha, part)
    return val


@dataclass(frozen=True)
class FLambda:
    """``f_lambda(theta; alpha)`` as an explicit polynomial in theta."""

    lam: Partition
    alpha: Fraction
    poly: ThetaPoly

    def __call__(self, theta):
        return self.poly(Fraction(theta))

    def node_values_ok(self) -> bool:
        """The interpolation nodes ``theta = -k alpha``, k = l..2l, give ``m*_lambda``."""
        l = self.lam.length
        return all(
            self.poly(-k * self.alpha) == mstar_repeated_alpha(self.lam, k, self.alpha)
            for k in range(l, 2 * l + 1)
        )


def _require_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if alpha == 0:
        raise AlphaZero("interpolation nodes coincide at alpha = 0; use the closed form")
    return alpha


def divided_difference_table(lam: Partition, alpha) -> list[list[Fraction]]:
    """Newton divided differences on the nodes ``-(l+i) alpha``, i = 0..l.

    ``table[c][i]`` is ``f[x_i, ..., x_{i+c}]``; column 0 holds the node
    values and ``table[c][0]`` is the c-th Newton coefficient.
    """
    alpha = _require_alpha(alpha)
    l = lam.length
    nodes = [-(l + i) * alpha for i in range(l + 1)]
    table = [[mstar_repeated_alpha(lam, l + i, alpha) for i in range(l + 1)]]
    for c in range(1, l + 1):
        prev = table[-1]
        table.append(
            [(prev[i + 1] - prev[i]) / (nodes[i + c] - nodes[i]) for i in range(l + 1 - c)]
        )
    return table


@lru_cache(maxsize=4096)
def _newton_poly(lam: Partition, alpha: Fraction) -> ThetaPoly:
    table = divided_difference_table(lam, alpha)
    l = lam.length
    poly = ThetaPoly()
    for c in range(l + 1):
        poly = poly + rising_poly(l * alpha, c, alpha) * table[c][0]
    return poly


def newton_f_lambda(lam: Partition, alpha) -> FLambda:
    """Newton form ``sum_c f[x_0..x_c] (theta + l alpha)^{c rising alpha}``."""
    alpha = _require_alpha(alpha)
    return FLambda(lam, alpha, _newton_poly(lam, alpha))


@lru_cache(maxsize=4096)
def _closed_poly(lam: Partition, alpha: Fraction) -> ThetaPoly:
    const = Fraction((-1) ** lam.size, lam.freq_factorial_product())
    for part in lam.parts:
        const *= rising_factorial(1 - alpha, part - 1)
    return rising_poly(0, lam.length, alpha) * const


def closed_f_lambda(lam: Partition, alpha) -> FLambda:
    """``(-1)^n theta^{l rising alpha} / prod r_j! * prod (1 - alpha)^{lambda_j - 1 rising}``."""
    alpha = Fraction(alpha)
    return FLambda(lam, alpha, _closed_poly(lam, alpha))


@lru_cache(maxsize=4096)
def _altrep_poly(lam: Partition, alpha: Fraction) -> ThetaPoly:
    l = lam.length
    top = rising_poly(l * alpha, l + 1, alpha)
    poly = ThetaPoly()
    for j in range(l + 1):
        # (theta + (l+j) alpha) is one of the factors of top, so this is exact
        quotient = top.exact_div_linear(-(l + j) * alpha)
        coef = mstar_repeated_alpha(lam, l + j, alpha) * (-1) ** j
        coef /= alpha**l * math.factorial(l - j) * math.factorial(j)
        poly = poly + quotient * coef
    return poly


def altrep_f_lambda(lam: Partition, alpha) -> FLambda:
    """Alternating-sum form over the node values ``m*_lambda(alpha x (l+j))``."""
    alpha = _require_alpha(alpha)
    return FLambda(lam, alpha, _altrep_poly(lam, alpha))


def nabla(poly: ThetaPoly, alpha, times: int = 1) -> ThetaPoly:
    """Backward difference ``p(theta) - p(theta - alpha)`` applied ``times`` times."""
    for _ in range(times):
        poly = poly.backward_difference(alpha)
    return poly


def sheffer_delta(i: int, j: int, l: int, alpha) -> Fraction:
    """``(nabla_alpha / alpha)^j [(theta + l alpha)^{i rising alpha} / i!]`` at ``theta = -l alpha``.

    Equals 1 when i == j and 0 otherwise.
    """
    alpha = _require_alpha(alpha)
    p = rising_poly(l * alpha, i, alpha) / math.factorial(i)
    return nabla(p, alpha, j)(-l * alpha) / alpha**j


def weight_partial_sum(l: int, j: int, alpha) -> ThetaPoly:
    """``sum_{i=0}^{l-j} (-1)^j binom(i+j, j) (theta + l alpha)^{i+j rising alpha} / (alpha^{i+j} (i+j)!)``."""
    alpha = _require_alpha(alpha)
    out = ThetaPoly()
    for i in range(l - j + 1):
        w = Fraction((-1) ** j * math.comb(i + j, j), math.factorial(i + j)) / alpha ** (i + j)
        out = out + rising_poly(l * alpha, i + j, alpha) * w
    return out


def weight_closed_form(l: int, j: int, alpha) -> ThetaPoly:
    """``(-1)^j (theta + l alpha)^{l+1 rising alpha} / ((theta + (l+j) alpha) alpha^l (l-j)! j!)``."""
    alpha = _require_alpha(alpha)
    top = rising_poly(l * alpha, l + 1, alpha).exact_div_linear(-(l + j) * alpha)
    return top * (Fraction((-1) ** j, math.factorial(l - j) * math.factorial(j)) / alpha**l)


def swapped_f_lambda(lam: Partition, alpha) -> ThetaPoly:
    """f_lambda from the swapped double sum over node values, before simplification.

    ``sum_j f_lambda(-(l+j) alpha) * weight_partial_sum(l, j)``; agreeing with
    the alternating-sum form is exactly the weight-sum identity.
    """
    alpha = _require_alpha(alpha)
    l = lam.length
    out = ThetaPoly()
    for j in range(l + 1):
        out = out + weight_partial_sum(l, j, alpha) * mstar_repeated_alpha(lam, l + j, alpha)
    return out
