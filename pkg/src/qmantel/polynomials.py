"""Characteristic polynomials of the extremal quotients and largest-root extraction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .partitions import QuotientMatrix

MAX_CHARPOLY_DIM = 8
NEWTON_SWITCH_WIDTH = 1e-6
NEWTON_MAX_ITER = 50


class NoSignChangeError(ValueError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending degree. Integer coefficients stay exact."""

    coefficients: tuple

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("polynomial needs at least one coefficient")
        if self.coefficients[-1] == 0 and len(self.coefficients) > 1:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        if self.degree == 0:
            return Polynomial((0,))
        return Polynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i > 0))

    def __sub__(self, other: Polynomial) -> Polynomial:
        k = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [0] * (k - len(self.coefficients))
        b = list(other.coefficients) + [0] * (k - len(other.coefficients))
        diff = [x - y for x, y in zip(a, b)]
        while len(diff) > 1 and diff[-1] == 0:
            diff.pop()
        return Polynomial(tuple(diff))

    def cauchy_bound(self) -> float:
        """Every real root lies in [-B, B]."""
        lead = self.coefficients[-1]
        return 1.0 + max((abs(float(c / lead)) for c in self.coefficients[:-1]), default=0.0)

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def characteristic_polynomial(b: QuotientMatrix | np.ndarray | Sequence[Sequence]) -> Polynomial:
    """det(xI - B) by the Faddeev-LeVerrier recurrence.

    Exact (Fractions) for quotient matrices carrying exact entries and for
    integer/rational arrays; floating point otherwise.
    """
    if isinstance(b, QuotientMatrix):
        rows = [list(r) for r in b.exact] if b.exact is not None else b.entries.tolist()
    else:
        arr = np.asarray(b)
        if np.issubdtype(arr.dtype, np.integer):
            rows = [[int(x) for x in r] for r in arr]
        elif arr.dtype == object:
            rows = [list(r) for r in arr]
        elif np.all(np.mod(arr, 1) == 0):
            rows = [[int(x) for x in r] for r in arr]
        else:
            rows = arr.astype(float).tolist()
    k = len(rows)
    if k == 0 or any(len(r) != k for r in rows):
        raise ValueError("characteristic_polynomial needs a nonempty square matrix")
    if k > MAX_CHARPOLY_DIM:
        raise ValueError(f"dimension {k} exceeds the supported maximum {MAX_CHARPOLY_DIM}")
    exact = all(isinstance(x, (int, Rational)) for r in rows for x in r)
    one = Fraction(1) if exact else 1.0
    a = [[Fraction(x) if exact else float(x) for x in r] for r in rows]

    coeffs = [one * 0] * (k + 1)
    coeffs[k] = one
    mk = [[one * 0] * k for _ in range(k)]
    for i in range(1, k + 1):
        # M_i = A M_{i-1} + c_{k-i+1} I ; c_{k-i} = -tr(A M_i) / i
        prod = [[sum(a[r][t] * mk[t][c] for t in range(k)) for c in range(k)] for r in range(k)]
        for r in range(k):
            prod[r][r] += coeffs[k - i + 1]
        mk = prod
        am = sum(sum(a[r][t] * mk[t][r] for t in range(k)) for r in range(k))
        coeffs[k - i] = -am / i
    return Polynomial(tuple(_normalize(c) for c in coeffs))


def largest_real_root(p: Polynomial, bracket: tuple[float, float] | None = None, tol: float = 1e-12) -> float:
    """Largest real root by bisection down to width 1e-6, then safeguarded Newton.

    ``bracket`` must isolate the largest root: a sign change on it and no other
    real root inside. Without a bracket one is derived from the largest critical
    point (exact for real-rooted polynomials such as characteristic polynomials
    of symmetrizable matrices), falling back to a grid scan down from the Cauchy
    bound.
    """
    coeffs = p.as_floats()
    fp = Polynomial(tuple(coeffs))
    dfp = fp.derivative()
    if bracket is None:
        lo, hi = _top_bracket(fp, tol)
        if lo == hi:
            return lo
    else:
        lo, hi = float(bracket[0]), float(bracket[1])
    if lo >= hi:
        raise ValueError(f"empty bracket ({lo}, {hi})")
    flo, fhi = fp(lo), fp(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(f"no sign change on ({lo}, {hi})")
    rising = fhi > 0

    def narrow(lo, hi, width):
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            fm = fp(mid)
            if fm == 0.0:
                return mid, mid
            if (fm > 0) == rising:
                hi = mid
            else:
                lo = mid
        return lo, hi

    lo, hi = narrow(lo, hi, max(NEWTON_SWITCH_WIDTH, tol))
    if lo == hi:
        return lo
    x = 0.5 * (lo + hi)
    for _ in range(NEWTON_MAX_ITER):
        d = dfp(x)
        if d == 0.0:
            break
        step = fp(x) / d
        x_new = x - step
        if not lo <= x_new <= hi:
            break
        x = x_new
        if abs(step) <= tol * max(1.0, abs(x)):
            return x
    # Newton left the bracket or stalled: finish by bisection
    lo, hi = narrow(lo, hi, tol * max(1.0, abs(hi)))
    return 0.5 * (lo + hi)


def _top_bracket(p: Polynomial, tol: float) -> tuple[float, float]:
    bound = p.cauchy_bound()
    if p.degree == 1:
        root = -p.coefficients[0] / p.coefficients[1]
        return root, root
    try:
        c = largest_real_root(p.derivative(), None, tol)
    except NoSignChangeError:
        return _scan_for_top_sign_change(p, bound)
    fc = p(c)
    if fc == 0.0:
        return c, c
    if (fc > 0) != (p.coefficients[-1] > 0) and c < bound:
        return c, bound
    return _scan_for_top_sign_change(p, bound)


def _scan_for_top_sign_change(p: Polynomial, bound: float, steps: int = 20000) -> tuple[float, float]:
    grid = np.linspace(bound, -bound, steps + 1)
    prev = grid[0]
    fprev = p(prev)
    for x in grid[1:]:
        fx = p(x)
        if fx == 0.0 or (fx > 0) != (fprev > 0):
            return float(x), float(prev)
        prev, fprev = x, fx
    raise NoSignChangeError("no real root found by grid scan")


def theorem1_cubic(n: int) -> Polynomial:
    """x^3 - (n+2)x^2 + (3n-2)x - 4, whose largest root is q(C5 o (n-4,1,1,1,1))."""
    if n < 5:
        raise ValueError("cubic is defined for n >= 5")
    return Polynomial((-4, 3 * n - 2, -(n + 2), 1))


def theorem2_quartic(m: int) -> Polynomial:
    """x^4 - (m+3)x^3 + (5m-5)x^2 + (8-5m)x + 4."""
    if m < 5:
        raise ValueError("quartic is defined for m >= 5")
    return Polynomial((4, 8 - 5 * m, 5 * m - 5, -(m + 3), 1))


def cubic_root_bracket(n: int) -> tuple[Fraction, Fraction]:
    """(n - 1 - 1/n, n - 1/n) as exact rationals."""
    return Fraction(n - 1) - Fraction(1, n), Fraction(n) - Fraction(1, n)


def cubic_root_in_bracket(n: int) -> bool:
    """Exact certificate that the cubic's largest root lies strictly inside (n-1-1/n, n-1/n).

    Needs f(lo) < 0, f(hi) > 0 and f' > 0 on [hi, inf): hi is right of the
    vertex of f' and f'(hi) > 0, so f has no root at or beyond hi.
    """
    f = theorem1_cubic(n)
    lo, hi = cubic_root_bracket(n)
    df = f.derivative()
    return f(lo) < 0 and f(hi) > 0 and hi >= Fraction(n + 2, 3) and df(hi) > 0


def cubic_largest_root(n: int, tol: float = 1e-12) -> float:
    p = theorem1_cubic(n)
    lo, _ = cubic_root_bracket(n)
    return largest_real_root(p, (float(lo), p.cauchy_bound()), tol)


def quartic_largest_root(m: int, tol: float = 1e-12) -> float:
    p = theorem2_quartic(m)
    return largest_real_root(p, (float(m - 2), p.cauchy_bound()), tol)


def case2_quintic(n1: int, n2: int) -> Polynomial:
    """f(n1, n2, x): characteristic polynomial of the 5x5 quotient of C5 o (n1, n2, 1, 1, 1)."""
    if n1 < 1 or n2 < 1:
        raise ValueError("n1 and n2 must be positive")
    s, p = n1 + n2, n1 * n2
    return Polynomial((
        -4 * p,
        s * s + 4 * s + 2 * p * (s + 3) + 3,
        -(3 * s * s + 11 * s + p * (s + 4) + 10),
        s * s + 9 * s + p + 12,
        -2 * (s + 3),
        1,
    ))


def case2_largest_root(n1: int, n2: int, tol: float = 1e-12) -> float:
    return largest_real_root(case2_quintic(n1, n2), None, tol)


def case2_difference_identity(n1: int, n2: int, x) -> tuple[float, float]:
    """Both sides of f(n1,n2,x) - f(n1+1,n2-1,x) = (2n1 - n + 4)(x-2)(x^2 - (n-1)x + 2).

    Evaluated exactly in rationals (a float x is converted without rounding),
    then returned as floats.
    """
    if n2 < 2:
        raise ValueError("identity needs n2 >= 2")
    n = n1 + n2 + 3
    xr = Fraction(x)
    lhs = case2_quintic(n1, n2)(xr) - case2_quintic(n1 + 1, n2 - 1)(xr)
    rhs = (2 * n1 - n + 4) * (xr - 2) * (xr * xr - (n - 1) * xr + 2)
    return float(lhs), float(rhs)


def quotient_order(n: int) -> list[list[int]]:
    """The 3x3 quotient of Q(C5 o (n-4,1,1,1,1)) as printed."""
    return [[2, 2, 0], [n - 4, n - 3, 1], [0, 1, 3]]


def quotient_size(m: int) -> list[list[int]]:
    """The 4x4 quotient of Q(C5 with pendant K_{1,m-5})."""
    return [[3, 1, 0, 0], [1, 2, 0, 1], [0, 0, 1, 1], [0, 2, m - 5, m - 3]]


def quotient_case2(n1: int, n2: int) -> list[list[int]]:
    """The 5x5 quotient of Q(C5 o (n1, n2, 1, 1, 1)) on V1, V2, V3, V4, {w}."""
    return [
        [1 + n2, n2, 0, 0, 1],
        [n1, 1 + n1, 1, 0, 0],
        [0, n2, 1 + n2, 1, 0],
        [0, 0, 1, 2, 1],
        [n1, 0, 0, 1, 1 + n1],
    ]
