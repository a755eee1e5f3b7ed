"""Invariant suite shared by the ``verify`` command and the acceptance tests.

Each check is a generator of ``(context, left, right)`` triples that must be
exactly equal.  :func:`run_check` consumes one until the first mismatch and
records it as the counterexample.  Library functions are looked up through
their modules at call time, so a patched function is what gets exercised.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import ewens_pitman as ep
from . import partitions as pg
from . import riordan as rd
from . import series as sr
from . import symfun as sf
from .errors import IdentityViolation

__all__ = ["CheckResult", "CHECKS", "run_check", "run_all", "ALPHAS", "THETAS", "order_vectors"]

ALPHAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
THETAS = (Fraction(1, 2), Fraction(1), Fraction(3))
F_ALPHAS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 4))

Case = tuple


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    cases: int
    counterexample: dict | None = field(default=None)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.cases} cases, {self.seconds:.2f}s)"


def grid() -> Iterator[ep.EPParams]:
    for a in ALPHAS:
        for t in THETAS:
            yield ep.EPParams(a, t)


def order_vectors(n: int, smax: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors ``(k_1..k_n)`` with ``1 <= sum j k_j <= smax``, trailing zeros dropped."""

    def rec(j: int, budget: int):
        if j > min(n, smax):
            yield ()
            return
        for kj in range(budget // j + 1):
            for rest in rec(j + 1, budget - j * kj):
                yield (kj,) + rest

    for vec in rec(1, smax):
        while vec and vec[-1] == 0:
            vec = vec[:-1]
        if vec:
            yield vec


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


def _rand_frac(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 7) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


# --- worked example --------------------------------------------------------

def check_worked_example(max_n: int) -> Iterator[Case]:
    lam = pg.Partition.of(2, 2, 1)
    for a in (Fraction(1, 4), Fraction(1, 2)):
        f = sf.closed_f_lambda(lam, a).poly
        phi_num = f * (-1) ** 5
        expected = sr.rising_poly(0, 3, a) * ((1 - a) ** 2 / 2)
        yield {"alpha": a, "what": "phi numerator"}, phi_num, expected
        for t in THETAS + (Fraction(7, 3),):
            p = ep.EPParams(a, t)
            ref = sr.rising_factorial(t, 3, a) * (1 - a) ** 2 / (2 * sr.rising_factorial(t, 5))
            yield {"alpha": a, "theta": t, "what": "phi"}, ep.phi(p, lam), ref
    yield {"what": "pmf"}, ep.pmf(ep.EPParams(Fraction(1, 2), 1), lam), Fraction(3, 32)


# --- partition structure ---------------------------------------------------

def check_normalization(max_n: int) -> Iterator[Case]:
    for p in grid():
        for n in range(1, max_n + 1):
            ctx = {"n": n, "alpha": p.alpha, "theta": p.theta}
            yield dict(ctx, route="ftra"), ep.normalization(p, n, route="ftra"), Fraction(1)
            yield dict(ctx, route="bruteforce"), ep.normalization(p, n, route="bruteforce"), Fraction(1)


def check_three_representations(max_n: int) -> Iterator[Case]:
    for a in F_ALPHAS:
        for n in range(0, max_n + 1):
            for lam in pg.enumerate_level(n):
                closed = sf.closed_f_lambda(lam, a).poly
                ctx = {"lambda": str(lam), "alpha": a}
                yield dict(ctx, route="newton"), sf.newton_f_lambda(lam, a).poly, closed
                yield dict(ctx, route="altrep"), sf.altrep_f_lambda(lam, a).poly, closed


def check_pmf_routes(max_n: int) -> Iterator[Case]:
    for p in grid():
        for n in range(1, max_n + 1):
            for lam in pg.enumerate_level(n):
                closed = ep.pmf(p, lam, route="closed")
                ctx = {"lambda": str(lam), "alpha": p.alpha, "theta": p.theta}
                yield dict(ctx, route="newton"), ep.pmf(p, lam, route="newton"), closed
                yield dict(ctx, route="altrep"), ep.pmf(p, lam, route="altrep"), closed


def check_harmonic(max_n: int) -> Iterator[Case]:
    for p in grid():
        phi = lambda lam, p=p: ep.phi(p, lam)
        for level in range(1, max(max_n, 2)):
            yield (
                {"level": level, "alpha": p.alpha, "theta": p.theta},
                pg.check_harmonic(pg.KINGMAN, phi, level),
                True,
            )


def check_eppf_and_sufficiency(max_n: int) -> Iterator[Case]:
    top = min(max_n, 8)
    for p in grid():
        for n in range(1, top + 1):
            for lam in pg.enumerate_level(n):
                closed = sr.rising_factorial(p.theta, lam.length, p.alpha)
                for part in lam.parts:
                    closed *= sr.rising_factorial(1 - p.alpha, part - 1)
                closed /= sr.rising_factorial(p.theta, n)
                yield {"lambda": str(lam), "alpha": p.alpha, "theta": p.theta, "what": "eppf"}, ep.eppf(
                    p, lam.parts
                ), closed
    for a in ALPHAS:
        p1, p2 = ep.EPParams(a, THETAS[0]), ep.EPParams(a, THETAS[2])
        for n in range(1, top + 1):
            ratios: dict[int, Fraction] = {}
            for lam in pg.enumerate_level(n):
                r = ep.pmf(p1, lam) / ep.pmf(p2, lam)
                ref = ratios.setdefault(lam.length, r)
                yield {"lambda": str(lam), "alpha": a, "what": "sufficiency"}, r, ref


# --- statistics vs enumeration ---------------------------------------------

def check_marginal(max_n: int) -> Iterator[Case]:
    for p in grid():
        for n in range(0, max_n + 1):
            for l in range(0, n + 1):
                ctx = {"n": n, "l": l, "alpha": p.alpha, "theta": p.theta}
                f = ep.marginal_length(p, n, l, route="ftra")
                yield dict(ctx, vs="bruteforce"), f, ep.marginal_length(p, n, l, route="bruteforce")
                yield dict(ctx, vs="stirling"), f, ep.marginal_length(p, n, l, route="stirling")


def check_moment_length(max_n: int) -> Iterator[Case]:
    for p in grid():
        for n in range(1, max_n + 1):
            for k in range(1, min(3, n) + 1):
                ctx = {"n": n, "k": k, "alpha": p.alpha, "theta": p.theta}
                s = ep.moment_length(p, n, k, route="stirling")
                yield dict(ctx, vs="bruteforce"), s, ep.moment_length(p, n, k, route="bruteforce")
                yield dict(ctx, vs="ftra"), s, ep.moment_length(p, n, k, route="ftra")
            a, t = p.alpha, p.theta
            k1 = (t / a) * (sr.rising_factorial(t + a, n) / sr.rising_factorial(t, n) - 1)
            yield {"n": n, "k": 1, "alpha": a, "theta": t, "vs": "k=1 closed"}, ep.moment_length(p, n, 1), k1


def check_joint_sizes(max_n: int) -> Iterator[Case]:
    for p in grid():
        for n in range(1, max_n + 1):
            for vec in order_vectors(n, min(4, n)):
                ctx = {"n": n, "orders": vec, "alpha": p.alpha, "theta": p.theta}
                c = ep.joint_moment_sizes(p, n, vec, route="closed")
                yield dict(ctx, vs="bruteforce"), c, ep.joint_moment_sizes(p, n, vec, route="bruteforce")
                yield dict(ctx, vs="ftra"), c, ep.joint_moment_sizes(p, n, vec, route="ftra")


def check_conditional(max_n: int) -> Iterator[Case]:
    for p in grid():
        for size in range(1, min(5, max_n) + 1):
            for mu in pg.enumerate_level(size):
                for m in range(1, min(4, max_n - size) + 1):
                    for vec in order_vectors(m, min(3, m)):
                        q = ep.ConditionalQuery(mu, m, vec)
                        ctx = {"mu": str(mu), "m": m, "orders": vec, "alpha": p.alpha, "theta": p.theta}
                        c = ep.conditional_moment(p, q, route="closed")
                        yield dict(ctx, vs="paths"), c, ep.conditional_moment(p, q, route="paths")
                        yield dict(ctx, vs="decomposition"), c, ep.conditional_moment(
                            p, q, route="decomposition"
                        )
        q = ep.ConditionalQuery(pg.Partition.of(1), 1, (1,))
        yield {"mu": "(1)", "m": 1, "orders": (1,), "vs": "one-step"}, ep.conditional_moment(p, q), (
            p.theta + p.alpha
        ) / (p.theta + 1)


# --- Riordan infrastructure ------------------------------------------------

def _random_array(rng: random.Random, order: int) -> rd.ExpRiordan:
    d = [_rand_frac(rng) for _ in range(order + 1)]
    while d[0] == 0:
        d[0] = _rand_frac(rng)
    h = [Fraction(0)] + [_rand_frac(rng) for _ in range(order)]
    while h[1] == 0:
        h[1] = _rand_frac(rng)
    return rd.ExpRiordan(sr.ExpSeries(d, order), sr.ExpSeries(h, order))


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def check_riordan(max_n: int) -> Iterator[Case]:
    rng = _rng(20240611)
    size = 8
    order = size - 1
    ident = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for trial in range(3):
        A, B, C = (_random_array(rng, order) for _ in range(3))
        ma, mb, mc = A.matrix(size), B.matrix(size), C.matrix(size)
        ctx = {"trial": trial}
        yield dict(ctx, what="product"), rd.riordan_mul(A, B).matrix(size), _matmul(ma, mb)
        yield dict(ctx, what="associativity"), ((A * B) * C).matrix(size), (A * (B * C)).matrix(size)
        I = rd.ExpRiordan.identity(order)
        yield dict(ctx, what="left identity"), (I * A).matrix(size), ma
        yield dict(ctx, what="right identity"), (A * I).matrix(size), ma
        inv = A.inverse()
        yield dict(ctx, what="right inverse"), _matmul(ma, inv.matrix(size)), ident
        yield dict(ctx, what="left inverse"), _matmul(inv.matrix(size), ma), ident
    for trial in range(30):
        n = rng.randint(0, 10)
        R = _random_array(rng, 10)
        c = sr.ExpSeries([_rand_frac(rng) for _ in range(11)], 10)
        yield {"trial": trial, "n": n, "what": "ftra"}, rd.ftra(R, c, n), rd.row_sum(R, c, n)
    for l in range(9):
        for j in range(l + 1):
            try:
                v = rd.laguerre_row(l, j)
                yield {"l": l, "j": j, "what": "laguerre"}, v, v
            except IdentityViolation as e:
                yield {"l": l, "j": j, "what": "laguerre"}, e.left, e.right
    for a in ALPHAS:
        for n in range(min(max_n, 8) + 1):
            for l in range(min(n, 6) + 1):
                for j in range(l + 1):
                    v = ep.marginal_inner_sum(a, n, l, j)
                    yield {"alpha": a, "n": n, "l": l, "j": j, "what": "inner sum"}, v["direct"], v["riordan"]
    stir_n = min(max_n, 10)
    for a in ALPHAS:
        for t in THETAS:
            for n in range(stir_n + 1):
                for l in range(n + 1):
                    for c in {Fraction(0), t + l * a}:
                        prm = rd.GStirlingParams(-1, -a, c)
                        yield {"params": (prm.a, prm.b, prm.c), "n": n, "l": l, "what": "stirling"}, rd.gstirling(
                            prm, n, l, route="riordan"
                        ), rd.gstirling(prm, n, l, route="bell")


def check_weight_sum(max_n: int) -> Iterator[Case]:
    rng = _rng(7)
    pairs = []
    while len(pairs) < 10:
        a = Fraction(rng.randint(1, 19), rng.randint(2, 20))
        t = _rand_frac(rng)
        if a != 0:
            pairs.append((t, a))
    for t, a in pairs:
        for l in range(7):
            for j in range(l + 1):
                lhs = sf.weight_partial_sum(l, j, a)
                rhs = sf.weight_closed_form(l, j, a)
                ctx = {"l": l, "j": j, "theta": t, "alpha": a}
                yield ctx, lhs(t), rhs(t)
                # the printed right side as a rational function, away from its removable pole
                den = t + (l + j) * a
                if den != 0:
                    direct = (-1) ** j * sr.rising_factorial(t + l * a, l + 1, a) / (
                        den * a**l * math.factorial(l - j) * math.factorial(j)
                    )
                    yield dict(ctx, form="rational"), lhs(t), direct


def check_sheffer_delta(max_n: int) -> Iterator[Case]:
    for a in F_ALPHAS:
        for l in range(4):
            for i in range(7):
                for j in range(7):
                    yield {"alpha": a, "l": l, "i": i, "j": j}, sf.sheffer_delta(i, j, l, a), Fraction(int(i == j))


def check_pascal(max_n: int) -> Iterator[Case]:
    v = pg.pascal_boundary_ratio(pg.PascalVertex(1, 1), Fraction(1, 2), 10_000)
    err = abs(v - Fraction(1, 4))
    yield {"vertex": (1, 1), "p": "1/2", "n": 10_000, "error": float(err)}, err <= Fraction(1, 1000), True


CHECKS: dict[str, Callable[[int], Iterable[Case]]] = {
    "worked-example": check_worked_example,
    "normalization": check_normalization,
    "three-representations": check_three_representations,
    "pmf-routes": check_pmf_routes,
    "harmonicity": check_harmonic,
    "eppf-sufficiency": check_eppf_and_sufficiency,
    "marginal-length": check_marginal,
    "moment-length": check_moment_length,
    "joint-sizes": check_joint_sizes,
    "conditional-moments": check_conditional,
    "riordan": check_riordan,
    "weight-sum": check_weight_sum,
    "sheffer-delta": check_sheffer_delta,
    "pascal-boundary": check_pascal,
}


def run_check(name: str, max_n: int = 10) -> CheckResult:
    start = time.perf_counter()
    cases = 0
    try:
        for ctx, left, right in CHECKS[name](max_n):
            cases += 1
            if left != right:
                return CheckResult(
                    name, False, time.perf_counter() - start, cases,
                    {"context": ctx, "left": left, "right": right},
                )
    except IdentityViolation as e:
        return CheckResult(
            name, False, time.perf_counter() - start, cases,
            {"context": e.context, "left": e.left, "right": e.right, "message": str(e)},
        )
    return CheckResult(name, True, time.perf_counter() - start, cases)


def run_all(max_n: int = 10, names: Iterable[str] | None = None) -> list[CheckResult]:
    return [run_check(name, max_n) for name in (names or CHECKS)]
