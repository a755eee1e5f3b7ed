"""The Ewens-Pitman partition structure and its summary statistics.

``M_n(lambda) = dim(lambda) phi(lambda)`` on the Kingman graph, with

    phi(lambda) = theta^{l rising alpha} prod_j (1-alpha)^{lambda_j - 1 rising}
                  / (theta^{n rising} prod_j r_j!).

Every statistic takes a ``route``: a generating-function (FTRA) or closed
form pipeline, or a brute-force enumeration over the level.  ``verify=True``
computes every applicable route and raises :class:`IdentityViolation` if any
two disagree.

Generating-function pipelines are run with theta left symbolic
(``ThetaPoly`` coefficients) and evaluated at the end through
:func:`theta_ratio`, so ``theta = 0`` is handled by cancelling the common
factor of numerator and denominator instead of dividing by zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from . import symfun
from .errors import (
    AlphaZero,
    IdentityViolation,
    OracleBoundExceeded,
    OrderTooLarge,
    ParamRange,
)
from .partitions import Partition, enumerate_level, kingman_dim
from .riordan import GStirlingParams, ftra, gstirling, laguerre_array, stirling_array
from .series import (
    ExpSeries,
    ThetaPoly,
    falling_factorial,
    rising_factorial,
    rising_poly,
    theta_ratio,
)

__all__ = [
    "EPParams",
    "ConditionalQuery",
    "ORACLE_BOUND",
    "phi",
    "eppf",
    "pmf",
    "level_distribution",
    "normalization",
    "marginal_length",
    "marginal_inner_sum",
    "moment_length",
    "length_expansion_readings",
    "joint_moment_sizes",
    "conditional_moment",
    "bruteforce_expectation",
]

ORACLE_BOUND = 12

PMF_ROUTES = ("closed", "newton", "altrep")


@dataclass(frozen=True)
class EPParams:
    """Parameters with ``0 <= alpha < 1`` and ``theta > -alpha``."""

    alpha: Fraction
    theta: Fraction

    def __post_init__(self):
        a, t = Fraction(self.alpha), Fraction(self.theta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "theta", t)
        if not 0 <= a < 1:
            raise ParamRange(f"alpha must satisfy 0 <= alpha < 1, got {a}")
        if not t > -a:
            raise ParamRange(f"theta must exceed -alpha = {-a}, got {t}")


def _theta_frac(p: EPParams, num: ThetaPoly, den: ThetaPoly) -> Fraction:
    return theta_ratio(num, den, p.theta)


def _rising_ratio(p: EPParams, l: int, n: int) -> Fraction:
    """``theta^{l rising alpha} / theta^{n rising}``."""
    return _theta_frac(p, rising_poly(0, l, p.alpha), rising_poly(0, n, 1))


def _xi(alpha: Fraction, j: int) -> Fraction:
    return rising_factorial(1 - alpha, j - 1) / math.factorial(j)


def _agree(values: dict, context) -> Fraction:
    items = list(values.items())
    first_route, first = items[0]
    for route, v in items[1:]:
        if v != first:
            raise IdentityViolation(
                f"routes {first_route!r} and {route!r} disagree",
                first,
                v,
                dict(context, routes=(first_route, route)),
            )
    return first


def phi(p: EPParams, lam: Partition) -> Fraction:
    """The harmonic function ``phi_{theta,alpha}(lambda)`` from the closed form."""
    if lam.size == 0:
        return Fraction(1)
    const = Fraction(1, lam.freq_factorial_product())
    for part in lam.parts:
        const *= rising_factorial(1 - p.alpha, part - 1)
    return const * _rising_ratio(p, lam.length, lam.size)


def eppf(p: EPParams, sizes: Sequence[int]) -> Fraction:
    """Exchangeable partition probability of one set partition with these block sizes."""
    lam = Partition.from_unsorted(sizes)
    return phi(p, lam) * lam.freq_factorial_product()


def _f_poly(lam: Partition, alpha: Fraction, route: str) -> ThetaPoly:
    if route == "closed":
        return symfun.closed_f_lambda(lam, alpha).poly
    if route == "newton":
        return symfun.newton_f_lambda(lam, alpha).poly
    if route == "altrep":
        return symfun.altrep_f_lambda(lam, alpha).poly
    raise ValueError(f"unknown pmf route {route!r}")


def _pmf_route(p: EPParams, lam: Partition, route: str) -> Fraction:
    if route == "closed":
        return kingman_dim(lam) * phi(p, lam)
    if p.alpha == 0:
        raise AlphaZero(f"route {route!r} needs alpha != 0")
    n = lam.size
    num = _f_poly(lam, p.alpha, route) * ((-1) ** n)
    return kingman_dim(lam) * _theta_frac(p, num, rising_poly(0, n, 1))


def pmf(p: EPParams, lam: Partition, route: str = "closed", verify: bool = False) -> Fraction:
    """``M_n(lambda)`` through the chosen representation of ``f_lambda``.

    ``closed`` is the product formula; ``newton`` and ``altrep`` evaluate the
    interpolated polynomials and need ``alpha != 0``.
    """
    if lam.size < 1:
        raise ValueError("pmf needs |lambda| >= 1")
    if not verify:
        return _pmf_route(p, lam, route)
    routes = PMF_ROUTES if p.alpha != 0 else ("closed",)
    values = {r: _pmf_route(p, lam, r) for r in dict.fromkeys((route,) + routes)}
    return _agree(values, {"lambda": lam, "params": p})


@lru_cache(maxsize=512)
def level_distribution(p: EPParams, n: int) -> tuple[tuple[Partition, Fraction], ...]:
    """All ``(lambda, M_n(lambda))`` at level n, in reverse-lex order."""
    if n == 0:
        return ((Partition(), Fraction(1)),)
    return tuple((lam, pmf(p, lam)) for lam in enumerate_level(n))


def bruteforce_expectation(
    p: EPParams,
    n: int,
    g: Callable[[Partition], Fraction],
    oracle_bound: int | None = None,
) -> Fraction:
    """``sum_lambda g(lambda) M_n(lambda)`` by enumerating the level."""
    bound = ORACLE_BOUND if oracle_bound is None else oracle_bound
    if n > bound:
        raise OracleBoundExceeded(f"n = {n} exceeds the enumeration bound {bound}")
    return sum((g(lam) * w for lam, w in level_distribution(p, n)), Fraction(0))


def _theta_series(shift, alpha: Fraction, order: int, scale=1) -> ExpSeries:
    """``(1 - alpha t)^{-(theta + shift)/alpha}`` with theta symbolic.

    Coefficient j is ``(theta + shift)^{j rising alpha}``; alpha = 0 gives
    ``exp((theta + shift) t)``.  Each coefficient is multiplied by ``scale^j``.
    """
    scale = Fraction(scale)
    return ExpSeries(
        [rising_poly(shift, j, alpha) * scale**j for j in range(order + 1)], order
    )


def _as_poly(x) -> ThetaPoly:
    return x if isinstance(x, ThetaPoly) else ThetaPoly.constant(x)


def _ep_array(alpha: Fraction, order: int):
    return stirling_array(GStirlingParams(-1, -alpha, 0), order)


def normalization(p: EPParams, n: int, route: str = "ftra", verify: bool = False) -> Fraction:
    """``sum_lambda M_n(lambda)``; 1 by construction.

    The ``ftra`` route extracts ``[t^n/n!] (1 - alpha h)^{-theta/alpha}`` for
    ``h = (1 - (1-t)^alpha)/alpha`` and divides by ``theta^{n rising}``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)

    def by_ftra():
        order = max(n, 1)
        num = ftra(_ep_array(p.alpha, order), _theta_series(0, p.alpha, order), n)
        return _theta_frac(p, _as_poly(num), rising_poly(0, n, 1))

    def by_enum():
        return bruteforce_expectation(p, n, lambda lam: 1)

    table = {"ftra": by_ftra, "bruteforce": by_enum}
    if verify:
        return _agree({r: f() for r, f in table.items()}, {"n": n, "params": p})
    return table[route]()


def marginal_inner_sum(alpha, n: int, l: int, j: int) -> dict[str, Fraction]:
    """Both sides of the marginal inner-sum identity, for testing.

    ``direct``: ``sum_{l(lambda)=l} (-1)^n dim(lambda) / j! *
    sum_i (-1)^i binom(j,i) f_lambda(-(l+i) alpha)``, with the node values
    taken from ``m*_lambda``.
    ``riordan``: ``S_{n,l}(-1,-alpha,0) (-alpha)^l`` times the
    ``(l, j)`` entry of ``R_e[-1/(t-1), t/(t-1)]``.
    """
    alpha = Fraction(alpha)
    direct = Fraction(0)
    for lam in enumerate_level(n):
        if lam.length != l:
            continue
        inner = sum(
            (
                (-1) ** i * math.comb(j, i) * symfun.mstar_repeated_alpha(lam, l + i, alpha)
                for i in range(j + 1)
            ),
            Fraction(0),
        )
        direct += (-1) ** n * kingman_dim(lam) * inner / math.factorial(j)
    s = gstirling(GStirlingParams(-1, -alpha, 0), n, l)
    riordan = s * (-alpha) ** l * laguerre_array(max(l, 1)).entry(l, j)
    return {"direct": direct, "riordan": riordan}


def _laguerre_rising(alpha: Fraction, l: int) -> ThetaPoly:
    """``theta^{l rising alpha}`` recovered by the FTRA on the Laguerre array.

    ``(-alpha)^l [t^l/l!] (-1/(t-1)) c(t/(t-1))`` with
    ``c(t) = (1-t)^{-theta/alpha - l}``, whose j-th coefficient is
    ``(theta + l alpha)^{j rising alpha} / alpha^j``.
    """
    order = max(l, 1)
    c = _theta_series(l * alpha, alpha, order, scale=1 / alpha)
    return _as_poly(ftra(laguerre_array(order), c, l)) * (-alpha) ** l


def marginal_length(
    p: EPParams, n: int, l: int, route: str = "ftra", verify: bool = False
) -> Fraction:
    """``P(l(lambda) = l) = S_{n,l}(-1,-alpha,0) theta^{l rising alpha} / theta^{n rising}``.

    ``ftra`` uses the Laguerre-array FTRA for the theta factor (falling back
    to the closed rising factorial when alpha = 0, where that series is
    undefined); ``stirling`` uses the closed factor; ``bruteforce`` sums the
    pmf over partitions of length l.
    """
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")

    def by_formula(theta_factor):
        if n == 0:
            return Fraction(1)
        s = gstirling(GStirlingParams(-1, -p.alpha, 0), n, l)
        if s == 0:
            return Fraction(0)
        return s * _theta_frac(p, theta_factor, rising_poly(0, n, 1))

    def by_ftra():
        if p.alpha == 0:
            return by_formula(rising_poly(0, l, 0))
        return by_formula(_laguerre_rising(p.alpha, l))

    def by_stirling():
        return by_formula(rising_poly(0, l, p.alpha))

    def by_enum():
        return bruteforce_expectation(p, n, lambda lam: int(lam.length == l))

    table = {"ftra": by_ftra, "stirling": by_stirling, "bruteforce": by_enum}
    if verify:
        return _agree({r: f() for r, f in table.items()}, {"n": n, "l": l, "params": p})
    return table[route]()


def moment_length(
    p: EPParams, n: int, k: int, route: str = "stirling", verify: bool = False
) -> Fraction:
    """``E_n[l(lambda)^{k falling}]``.

    ``stirling``: ``k! theta^{k rising alpha} S_{n,k}(-1,-alpha,theta+k alpha) / theta^{n rising}``.
    ``ftra``: ``[t^n/n!] (t^k D^k c)(h)`` with ``c = (1 - alpha t)^{-theta/alpha}``.
    ``bruteforce``: enumeration.
    """
    if k < 0 or n < 0:
        raise ValueError("n and k must be nonnegative")

    def by_stirling():
        if n == 0:
            return Fraction(int(k == 0))
        if k == 0:
            # S_{n,0}(-1, -alpha, theta) is theta^{n rising}, so the ratio is 1 even at theta = 0
            return Fraction(1)
        s = gstirling(GStirlingParams(-1, -p.alpha, p.theta + k * p.alpha), n, k)
        if s == 0:
            return Fraction(0)
        return math.factorial(k) * s * _rising_ratio(p, k, n)

    def by_ftra():
        if n == 0:
            return Fraction(int(k == 0))
        order = max(n, 1)
        c = _theta_series(0, p.alpha, order).falling_scale(k)
        num = ftra(_ep_array(p.alpha, order), c, n)
        return _theta_frac(p, _as_poly(num), rising_poly(0, n, 1))

    def by_enum():
        return bruteforce_expectation(
            p, n, lambda lam: falling_factorial(lam.length, k)
        )

    table = {"stirling": by_stirling, "ftra": by_ftra, "bruteforce": by_enum}
    if verify:
        return _agree({r: f() for r, f in table.items()}, {"n": n, "k": k, "params": p})
    return table[route]()


def length_expansion_readings(p: EPParams, n: int, k: int) -> dict:
    """Evaluate the alternating expansion of the k-th length moment two ways.

    ``(theta/alpha)^{k rising} sum_j (-1)^{k-j} binom(k,j) (theta + j alpha)^{n rising step}
    / theta^{n rising}`` with ``step = 1`` and with ``step = alpha``.  Returns
    both values, the authoritative moment, and whether each reading matches.
    Needs alpha != 0.
    """
    if p.alpha == 0:
        raise AlphaZero("the expansion divides by alpha")
    a = p.alpha
    pref = rising_poly(0, k, a) / a**k
    out = {"moment": moment_length(p, n, k)}
    for name, step in (("step_1", 1), ("step_alpha", a)):
        acc = ThetaPoly()
        for j in range(k + 1):
            acc = acc + rising_poly(j * a, n, step) * ((-1) ** (k - j) * math.comb(k, j))
        value = _theta_frac(p, pref * acc, rising_poly(0, n, 1))
        out[name] = value
        out[name + "_matches"] = value == out["moment"]
    return out


def _orders_stats(orders: Sequence[int]) -> tuple[int, int]:
    if any(kj < 0 for kj in orders):
        raise ValueError("orders must be nonnegative")
    s = sum((j + 1) * kj for j, kj in enumerate(orders))
    return s, sum(orders)


def joint_moment_sizes(
    p: EPParams, n: int, orders: Sequence[int], route: str = "closed", verify: bool = False
) -> Fraction:
    """``E_n[prod_j r_j(lambda)^{k_j falling}]`` for ``orders = (k_1, k_2, ...)``.

    ``closed``: ``n!/(n-s)! theta^{k rising alpha} (theta + k alpha)^{n-s rising}
    / theta^{n rising} prod_j xi_j^{k_j}``, ``xi_j = (1-alpha)^{j-1 rising}/j!``.
    ``ftra``: the same prefactor with ``(theta + k alpha)^{n-s rising}``
    produced by the FTRA on the Stirling array.
    """
    orders = tuple(orders)
    s, k = _orders_stats(orders)
    if s > n:
        raise OrderTooLarge(f"s = {s} exceeds n = {n}")
    xi = Fraction(1)
    for j, kj in enumerate(orders, start=1):
        if kj:
            xi *= _xi(p.alpha, j) ** kj
    pref = Fraction(math.factorial(n), math.factorial(n - s)) * xi

    def by_closed():
        num = rising_poly(0, k, p.alpha) * rising_poly(k * p.alpha, n - s, 1)
        return pref * _theta_frac(p, num, rising_poly(0, n, 1))

    def by_ftra():
        m = n - s
        order = max(m, 1)
        inner = ftra(_ep_array(p.alpha, order), _theta_series(k * p.alpha, p.alpha, order), m)
        num = rising_poly(0, k, p.alpha) * _as_poly(inner)
        return pref * _theta_frac(p, num, rising_poly(0, n, 1))

    def g(lam: Partition):
        out = 1
        for j, kj in enumerate(orders, start=1):
            if kj:
                out *= falling_factorial(lam.r(j), kj)
        return out

    def by_enum():
        return bruteforce_expectation(p, n, g)

    table = {"closed": by_closed, "ftra": by_ftra, "bruteforce": by_enum}
    if verify:
        return _agree({r: f() for r, f in table.items()}, {"n": n, "orders": orders, "params": p})
    return table[route]()


@dataclass(frozen=True)
class ConditionalQuery:
    """Observed ``mu`` of size n, ``m`` further draws, orders ``(k_1, ..., k_m)`` on new blocks."""

    mu: Partition
    m: int
    orders: tuple = field(default=())

    def __post_init__(self):
        orders = tuple(int(x) for x in self.orders)
        object.__setattr__(self, "orders", orders)
        if self.mu.size < 1:
            raise ValueError("mu must be nonempty")
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.s > self.m:
            raise OrderTooLarge(f"s = {self.s} exceeds m = {self.m}")

    @property
    def n(self) -> int:
        return self.mu.size

    @property
    def s(self) -> int:
        return _orders_stats(self.orders)[0]

    @property
    def k(self) -> int:
        return _orders_stats(self.orders)[1]

    def weight(self, new_sizes: Sequence[int]) -> int:
        """``prod_j r_j^new^{k_j falling}`` for the multiset of new block sizes."""
        out = 1
        for j, kj in enumerate(self.orders, start=1):
            if kj:
                out *= falling_factorial(sum(1 for x in new_sizes if x == j), kj)
        return out


def _eppf_ratio(p: EPParams, before: Sequence[int], after: Sequence[int]) -> Fraction:
    """``EPPF(after) / EPPF(before)`` without forming either (both may vanish at theta = 0)."""
    a, t = p.alpha, p.theta
    kb, ka = len(before), len(after)
    nb, na = sum(before), sum(after)
    num = Fraction(1)
    for i in range(kb, ka):
        num *= t + i * a
    for x in after:
        num *= rising_factorial(1 - a, x - 1)
    den = Fraction(1)
    for x in before:
        den *= rising_factorial(1 - a, x - 1)
    for i in range(nb, na):
        den *= t + i
    return num / den


def _compositions_weak(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions_weak(total - first, parts - 1):
            yield (first,) + rest


def _conditional_decomposition(p: EPParams, q: ConditionalQuery) -> Fraction:
    # sum over increments q_i on the labelled old blocks and a multiset of new blocks
    mu, m = q.mu.parts, q.m
    total = Fraction(0)
    for r in range(m + 1):
        for new in (enumerate_level(r) if r else [Partition()]):
            w_new = q.weight(new.parts)
            if w_new == 0:
                continue
            split = math.factorial(m) // (
                math.prod(math.factorial(x) for x in new.parts) * new.freq_factorial_product()
            )
            for inc in _compositions_weak(m - r, len(mu)):
                count = split // math.prod(math.factorial(x) for x in inc)
                after = [x + y for x, y in zip(mu, inc)] + list(new.parts)
                total += w_new * count * _eppf_ratio(p, mu, after)
    return total


def _conditional_paths(p: EPParams, q: ConditionalQuery) -> Fraction:
    # every seating sequence of the m extra draws, one step at a time
    def rec(old: tuple, new: tuple, left: int) -> Fraction:
        if left == 0:
            return Fraction(q.weight(new))
        here = list(old) + list(new)
        acc = Fraction(0)
        for i in range(len(old)):
            nxt = old[:i] + (old[i] + 1,) + old[i + 1 :]
            acc += _eppf_ratio(p, here, list(nxt) + list(new)) * rec(nxt, new, left - 1)
        for i in range(len(new)):
            nxt = new[:i] + (new[i] + 1,) + new[i + 1 :]
            acc += _eppf_ratio(p, here, list(old) + list(nxt)) * rec(old, nxt, left - 1)
        acc += _eppf_ratio(p, here, here + [1]) * rec(old, new + (1,), left - 1)
        return acc

    return rec(tuple(q.mu.parts), (), q.m)


def conditional_moment(
    p: EPParams, q: ConditionalQuery, route: str = "closed", verify: bool = False
) -> Fraction:
    """``E[prod_j r_j^new^{k_j falling} | mu]`` after m further draws.

    ``closed``: ``m! theta^{n rising} (theta + l(mu) alpha)^{k rising alpha}
    (theta + n + k alpha)^{m-s rising} / ((m-s)! theta^{n+m rising}) prod xi_j^{k_j}``.
    ``decomposition``: sum over old-block increments and new-block multisets.
    ``paths``: sum over all seating sequences.
    """
    a, t = p.alpha, p.theta
    n, m, s, k = q.n, q.m, q.s, q.k

    def by_closed():
        xi = Fraction(1)
        for j, kj in enumerate(q.orders, start=1):
            if kj:
                xi *= _xi(a, j) ** kj
        val = Fraction(math.factorial(m), math.factorial(m - s)) * xi
        val *= rising_factorial(t + q.mu.length * a, k, a) * rising_factorial(t + n + k * a, m - s)
        return val / rising_factorial(t + n, m)

    table = {
        "closed": by_closed,
        "decomposition": lambda: _conditional_decomposition(p, q),
        "paths": lambda: _conditional_paths(p, q),
    }
    if verify:
        return _agree({r: f() for r, f in table.items()}, {"query": q, "params": p})
    return table[route]()
