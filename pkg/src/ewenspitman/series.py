"""Exact scalars, polynomials in theta and truncated exponential power series.

All arithmetic is carried out with :class:`fractions.Fraction`.  Two
containers are provided:

``ThetaPoly``
    a univariate polynomial in the variable theta with rational coefficients.

``ExpSeries``
    a power series ``sum c_i t^i / i!`` stored through a finite order ``N``.
    Every result records the order it is exact to, and asking for a
    coefficient past that order raises :class:`OrderExceeded` rather than
    returning a silent zero.

``ExpSeries`` only needs ring operations from its coefficients, so the
coefficients may themselves be ``ThetaPoly`` instances.  That is how the
generating-function pipelines are run with theta left symbolic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import NonzeroConstantTerm, NotInvertible, OrderExceeded

__all__ = [
    "ThetaPoly",
    "ExpSeries",
    "rising_factorial",
    "falling_factorial",
    "rising_poly",
    "series_mul",
    "series_compose",
    "series_reversion",
    "binomial_series",
    "exp_series",
    "log1p_series",
    "identity_series",
    "constant_series",
    "extract_coeff",
    "theta_ratio",
]

ONE = Fraction(1)
ZERO = Fraction(0)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def rising_factorial(x, k: int, a=1):
    """``x (x + a) ... (x + (k-1) a)``; equal to 1 when ``k == 0``.

    ``x`` may be a Fraction or a ThetaPoly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = ONE
    for i in range(k):
        result = result * (x + i * a)
    return result


def falling_factorial(x, k: int, a=1):
    """``x (x - a) ... (x - (k-1) a)``; equal to 1 when ``k == 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = ONE
    for i in range(k):
        result = result * (x - i * a)
    return result


class ThetaPoly:
    """Polynomial in theta with Fraction coefficients, lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def theta(cls) -> "ThetaPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "ThetaPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    @staticmethod
    def _coerce(other):
        if isinstance(other, ThetaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ThetaPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ThetaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ThetaPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ThetaPoly(c * other for c in self.coeffs)
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ThetaPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ThetaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of ThetaPoly by zero")
            return ThetaPoly(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = ThetaPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def shift(self, a) -> "ThetaPoly":
        """Return ``p(theta + a)``."""
        a = _frac(a)
        out = ThetaPoly()
        lin = ThetaPoly((a, 1))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def backward_difference(self, step) -> "ThetaPoly":
        """Return ``p(theta) - p(theta - step)``."""
        return self - self.shift(-_frac(step))

    def divide_linear(self, root):
        """Synthetic division by ``(theta - root)``; returns (quotient, remainder)."""
        root = _frac(root)
        if not self.coeffs:
            return ThetaPoly(), ZERO
        q = [ZERO] * (len(self.coeffs) - 1)
        acc = ZERO
        for i in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * root + self.coeffs[i]
            if i > 0:
                q[i - 1] = acc
        return ThetaPoly(q), acc

    def exact_div_linear(self, root) -> "ThetaPoly":
        q, r = self.divide_linear(root)
        if r != 0:
            raise ArithmeticError(f"(theta - {root}) does not divide {self}")
        return q

    def __repr__(self):
        return f"ThetaPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*theta")
            else:
                terms.append(f"{c}*theta^{i}")
        return " + ".join(terms)


def rising_poly(shift, k: int, step) -> ThetaPoly:
    """``(theta + shift)^{k rising step}`` as a ThetaPoly."""
    return ThetaPoly(()) + rising_factorial(ThetaPoly.theta() + _frac(shift), k, _frac(step))


def _is_zero(c) -> bool:
    return c == 0


def _coef(c):
    return Fraction(c) if isinstance(c, int) else c


class ExpSeries:
    """Truncated exponential power series ``sum_{i<=order} c_i t^i/i!``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [_coef(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([ZERO] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_ordinary(cls, coeffs: Sequence, order: int | None = None) -> "ExpSeries":
        """Build from ordinary coefficients ``a_i`` of ``sum a_i t^i``."""
        return cls([_coef(a) * math.factorial(i) for i, a in enumerate(coeffs)], order)

    def coeff(self, n: int):
        return extract_coeff(self, n)

    def ordinary(self, n: int):
        """The ordinary coefficient ``[t^n]``, i.e. ``c_n / n!``."""
        return extract_coeff(self, n) / math.factorial(n)

    def truncate(self, order: int) -> "ExpSeries":
        if order > self.order:
            raise OrderExceeded(f"cannot extend a series valid to {self.order} to order {order}")
        return ExpSeries(self.coeffs[: order + 1], order)

    def _match(self, other: "ExpSeries"):
        n = min(self.order, other.order)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        if not isinstance(other, ExpSeries):
            return self + constant_series(other, self.order)
        n, a, b = self._match(other)
        return ExpSeries([x + y for x, y in zip(a, b)], n)

    __radd__ = __add__

    def __neg__(self):
        return ExpSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExpSeries):
            return series_mul(self, other)
        return ExpSeries([c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return ExpSeries([other * c for c in self.coeffs], self.order)

    def __truediv__(self, other):
        if isinstance(other, ExpSeries):
            return series_mul(self, other.reciprocal())
        return ExpSeries([c / other for c in self.coeffs], self.order)

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = constant_series(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, g: "ExpSeries") -> "ExpSeries":
        return series_compose(self, g)

    def reciprocal(self) -> "ExpSeries":
        f = self.coeffs
        if _is_zero(f[0]):
            raise NotInvertible("series with zero constant term has no reciprocal")
        n = self.order
        r = [ZERO] * (n + 1)
        r[0] = ONE / f[0]
        for m in range(1, n + 1):
            acc = ZERO
            for k in range(1, m + 1):
                if not _is_zero(f[k]):
                    acc = acc + math.comb(m, k) * f[k] * r[m - k]
            r[m] = -acc / f[0]
        return ExpSeries(r, n)

    def reversion(self) -> "ExpSeries":
        return series_reversion(self)

    def falling_scale(self, k: int) -> "ExpSeries":
        """Multiply coefficient ``c_i`` by ``i^{k falling}``: the operator t^k D_t^k."""
        return ExpSeries(
            [falling_factorial(i, k) * c for i, c in enumerate(self.coeffs)], self.order
        )

    def shift_down(self, k: int) -> "ExpSeries":
        """The k-th derivative ``D_t^k``: coefficient i becomes ``c_{i+k}``."""
        if k > self.order:
            raise OrderExceeded("derivative order exceeds the series order")
        return ExpSeries(self.coeffs[k:], self.order - k)

    def __eq__(self, other):
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def agrees_with(self, other: "ExpSeries", order: int | None = None) -> bool:
        """Coefficientwise equality through ``order`` (default: common order)."""
        n = min(self.order, other.order) if order is None else order
        return all(extract_coeff(self, i) == extract_coeff(other, i) for i in range(n + 1))

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"ExpSeries([{shown}{more}], order={self.order})"


def series_mul(f: ExpSeries, g: ExpSeries) -> ExpSeries:
    """Exponential Cauchy product, valid through ``min(order(f), order(g))``."""
    n, a, b = f._match(g)
    out = []
    for m in range(n + 1):
        acc = ZERO
        for k in range(m + 1):
            x = a[k]
            if _is_zero(x):
                continue
            y = b[m - k]
            if _is_zero(y):
                continue
            acc = acc + math.comb(m, k) * x * y
        out.append(acc)
    return ExpSeries(out, n)


def series_compose(f: ExpSeries, g: ExpSeries) -> ExpSeries:
    """``f(g(t))`` for ``g`` without constant term, by Horner's scheme."""
    if not _is_zero(g.coeffs[0]):
        raise NonzeroConstantTerm("inner series of a composition must have g_0 = 0")
    n = min(f.order, g.order)
    g = g.truncate(n)
    # Horner on the ordinary coefficients a_i = c_i / i!
    acc = constant_series(f.coeffs[n] / math.factorial(n), n)
    for i in range(n - 1, -1, -1):
        acc = series_mul(acc, g) + constant_series(f.coeffs[i] / math.factorial(i), n)
    return acc


def series_reversion(h: ExpSeries) -> ExpSeries:
    """Compositional inverse ``hbar`` with ``h(hbar(t)) = t`` through order(h).

    Solved order by order: the coefficient of ``t^n/n!`` in ``h(g)`` is
    ``h_1 g_n`` plus terms involving only ``g_1..g_{n-1}``.
    """
    if not _is_zero(h.coeffs[0]):
        raise NonzeroConstantTerm("reversion needs h_0 = 0")
    if h.order < 1 or _is_zero(h.coeffs[1]):
        raise NotInvertible("reversion needs h_1 != 0")
    n = h.order
    h1 = h.coeffs[1]
    g = [ZERO] * (n + 1)
    g[1] = ONE / h1
    for m in range(2, n + 1):
        partial = series_compose(h.truncate(m), ExpSeries(g[: m + 1], m))
        g[m] = -partial.coeffs[m] / h1
    return ExpSeries(g, n)


def binomial_series(exponent, scale, order: int) -> ExpSeries:
    """``(1 + scale*t)^exponent``: coefficient n is ``exponent^{n falling} scale^n``."""
    scale = _frac(scale)
    return ExpSeries(
        [falling_factorial(exponent, i) * scale**i for i in range(order + 1)], order
    )


def exp_series(a, order: int) -> ExpSeries:
    """``exp(a t)``; ``a`` may be a Fraction or a ThetaPoly."""
    out = [ONE]
    for _ in range(order):
        out.append(out[-1] * a)
    return ExpSeries(out, order)


def log1p_series(c, order: int) -> ExpSeries:
    """``log(1 + c t)``: coefficient n is ``(-1)^(n-1) (n-1)! c^n`` for n >= 1."""
    c = _frac(c)
    out = [ZERO] + [(-1) ** (i - 1) * math.factorial(i - 1) * c**i for i in range(1, order + 1)]
    return ExpSeries(out, order)


def identity_series(order: int) -> ExpSeries:
    return ExpSeries([0, 1], order)


def constant_series(c, order: int) -> ExpSeries:
    return ExpSeries([c], order)


def extract_coeff(f: ExpSeries, n: int):
    """The exponential coefficient ``[t^n/n!] f``."""
    if n < 0:
        raise ValueError("coefficient index must be nonnegative")
    if n > f.order:
        raise OrderExceeded(f"coefficient {n} requested from a series valid to order {f.order}")
    return f.coeffs[n]


def theta_ratio(num, den, theta):
    """Evaluate ``num(theta) / den(theta)``, cancelling common roots at ``theta``.

    Needed where theta sits on a removable singularity, e.g. ``theta = 0``
    where both ``theta^{l rising alpha}`` and ``theta^{n rising}`` vanish.
    """
    theta = _frac(theta)
    num = ThetaPoly.constant(num) if not isinstance(num, ThetaPoly) else num
    den = ThetaPoly.constant(den) if not isinstance(den, ThetaPoly) else den
    while True:
        d = den(theta)
        if d != 0:
            return num(theta) / d
        if den.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        num, r = num.divide_linear(theta)
        if r != 0:
            raise ZeroDivisionError(f"pole at theta = {theta}")
        den = den.exact_div_linear(theta)
