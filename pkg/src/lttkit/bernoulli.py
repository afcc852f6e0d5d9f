"""Bernoulli numbers as solutions of triangular linear systems, exactly.

The library knows eight routes to the list B_0, B_2, B_4, ...:

* two dense lower triangular binomial systems (rows of even, respectively
  odd, binomial coefficients with right-hand sides 1, 2, 3, ... and
  1, 3/2, 5/2, ...);
* six lower triangular Toeplitz systems, one per family (even, odd,
  ramanujan) and type. A type I system is solved by the scaled vector
  (B_{2i} x**i / (2i)!)_{i>=0}; the corresponding type II system by the same
  vector shifted one slot (B_0 dropped) and is smaller by one row. The
  ramanujan family's coefficient column has two zero diagonals between
  consecutive nonzero ones, which lets a base-3 solver skip its first
  nullification level.

All routes return identical rationals for every count and every nonzero
scaling parameter x; cross checking them is the point of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import series
from .solver import ltt_solve_fast

__all__ = [
    "FAMILIES",
    "KINDS",
    "METHODS",
    "BernoulliSystem",
    "BinomialSystem",
    "ConversionError",
    "gen_system",
    "scaling_diag",
    "binomial_system",
    "tartaglia_check",
    "ramanujan_rhs",
    "convert_type",
    "bernoulli_numbers",
    "zeta_consistency",
    "von_staudt_check",
]

FAMILIES = ("even", "odd", "ramanujan")
KINDS = ("typeI", "typeII")
METHODS = (
    "binom-even",
    "binom-odd",
    "ltt-even-I",
    "ltt-odd-I",
    "ltt-ram-I",
    "ltt-even-II",
    "ltt-odd-II",
    "ltt-ram-II",
)


class ConversionError(ValueError):
    """System data is inconsistent with the requested type conversion."""


def _a_value(family: str, i: int, x: Fraction) -> Fraction:
    if family == "even":
        return 2 * x**i / Fraction(factorial(2 * i + 2))
    if family == "odd":
        return x**i / Fraction(factorial(2 * i + 1))
    if i % 3:
        return Fraction(0)
    return 2 * x**i / Fraction(factorial(2 * i + 2) * (2 * i // 3 + 1))


def _q_value(family: str, i: int) -> Fraction:
    if family == "even":
        return Fraction(1, 2 * i + 1)
    if family == "odd":
        return Fraction(1) if i == 0 else Fraction(1, 2)
    v = Fraction(1, (2 * i + 1) * (i + 1))
    if i % 3 == 2:
        v = v * Fraction(-1, 2)
    return v


def _z_value(family: str, i: int) -> Fraction:
    # defined for i >= 1
    if family == "even":
        return Fraction(i, i + 1)
    if family == "odd":
        return Fraction(2 * i - 1, 2 * i + 1)
    if i % 3 == 0:
        return 1 - Fraction(1, 2 * i // 3 + 1)
    return Fraction(1)


@dataclass(frozen=True)
class BernoulliSystem:
    """One generated l.t.T. system: L(a) y = rhs with y a scaled Bernoulli vector.

    For typeI the unknown is y_i = B_{2i} x**i / (2i)! (i = 0..n-1); for
    typeII it is y_i = B_{2i+2} x**(i+1) / (2i+2)! and ``q``/``zscale`` hold
    the family weights shifted to start at index one.
    """

    family: str
    kind: str
    n: int
    x: Fraction
    a: list
    q: list
    zscale: list | None = None

    def rhs(self) -> list:
        if self.kind == "typeI":
            return [self.x**i / Fraction(factorial(2 * i)) * self.q[i] for i in range(self.n)]
        return [
            self.zscale[i] * self.x ** (i + 1) / Fraction(factorial(2 * i + 2)) * self.q[i]
            for i in range(self.n)
        ]

    def bernoulli_from_solution(self, y) -> list:
        """Undo the diagonal scaling; typeII gets B_0 = 1 prepended."""
        if self.kind == "typeI":
            return [y[i] * factorial(2 * i) / self.x**i for i in range(self.n)]
        out = [Fraction(1)]
        out.extend(y[i] * factorial(2 * i + 2) / self.x ** (i + 1) for i in range(self.n))
        return out


@dataclass(frozen=True)
class BinomialSystem:
    """Dense lower triangular binomial system; ``rows`` are ragged rows."""

    parity: str
    n: int
    rows: list
    rhs: list


def gen_system(family: str, kind: str, n: int, x: Fraction) -> BernoulliSystem:
    """Generate the family system of the requested kind and size."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family: {family!r}")
    if kind not in KINDS:
        raise ValueError(f"unknown kind: {kind!r}")
    if n < 1:
        raise ValueError("system size must be >= 1")
    x = Fraction(x)
    if x == 0:
        raise ValueError("scaling parameter x must be nonzero")
    a = [_a_value(family, i, x) for i in range(n)]
    if kind == "typeI":
        return BernoulliSystem(family, kind, n, x, a, [_q_value(family, i) for i in range(n)])
    q = [_q_value(family, i + 1) for i in range(n)]
    zsc = [_z_value(family, i + 1) for i in range(n)]
    return BernoulliSystem(family, kind, n, x, a, q, zsc)


def scaling_diag(n: int, x: Fraction) -> list:
    """Diagonal x**i / (2i)!, i = 0..n-1; conjugating the weighted shift by it
    leaves x times the plain lower shift."""
    if n < 1:
        raise ValueError("size must be >= 1")
    x = Fraction(x)
    return [x**i / Fraction(factorial(2 * i)) for i in range(n)]


def binomial_system(parity: str, n: int) -> BinomialSystem:
    """Even rows C(2j, 2k) with rhs j; odd rows C(2j-1, 2k) with rhs (2j-1)/2.

    Row one of the odd system is the normalization B_0 = 1.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"unknown parity: {parity!r}")
    if n < 1:
        raise ValueError("size must be >= 1")
    if parity == "even":
        rows = [[Fraction(comb(2 * j, 2 * k)) for k in range(j)] for j in range(1, n + 1)]
        rhs = [Fraction(j) for j in range(1, n + 1)]
    else:
        rows = [[Fraction(comb(2 * j - 1, 2 * k)) for k in range(j)] for j in range(1, n + 1)]
        rhs = [Fraction(1)] + [Fraction(2 * j - 1, 2) for j in range(2, n + 1)]
    return BinomialSystem(parity, n, rows, rhs)


def _solve_lower(rows, rhs):
    x = []
    for i, row in enumerate(rows):
        s = rhs[i] - sum(row[j] * x[j] for j in range(i))
        x.append(s / row[i])
    return x


def _zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _matmul(a, b):
    n = len(a)
    out = _zeros(n)
    for i in range(n):
        ai = a[i]
        for k in range(n):
            v = ai[k]
            if v:
                bk = b[k]
                row = out[i]
                for j in range(k + 1):  # all our factors are lower triangular
                    row[j] += v * bk[j]
    return out


def _weighted_shift(n):
    m = _zeros(n)
    for i in range(1, n):
        m[i][i - 1] = Fraction(i)
    return m


def _even_weighted_shift(n):
    # subdiagonal 1*2, 3*4, 5*6, ...
    m = _zeros(n)
    for i in range(1, n):
        m[i][i - 1] = Fraction((2 * i - 1) * (2 * i))
    return m


def _nilpotent_series(coeff, m, n):
    out = _zeros(n)
    power = _zeros(n)
    for i in range(n):
        power[i][i] = Fraction(1)
    for k in range(n):
        c = coeff(k)
        for i in range(n):
            for j in range(n):
                out[i][j] += c * power[i][j]
        power = _matmul(power, m)
    return out


def tartaglia_check(n: int) -> bool:
    """Exact structural identities behind the binomial systems.

    Checks that the binomial (Pascal) triangle equals the exponential series
    of the weighted shift, and that both binomial system matrices equal their
    series representations over the even weighted shift.
    """
    if n < 1 or n > 16:
        raise ValueError("check is meant for 1 <= n <= 16")
    pascal = [[Fraction(comb(i, j)) for j in range(n)] for i in range(n)]
    pascal_series = _nilpotent_series(lambda k: Fraction(1, factorial(k)), _weighted_shift(n), n)
    for i in range(n):
        for j in range(i + 1):
            if pascal[i][j] != pascal_series[i][j]:
                return False
        if any(pascal_series[i][j] for j in range(i + 1, n)):
            return False

    # even matrix needs one extra row before the shift-up
    m = n + 1
    s = _nilpotent_series(lambda k: Fraction(1, factorial(2 * k + 2)), _even_weighted_shift(m), m)
    ps = _matmul(_even_weighted_shift(m), s)
    binom_even = binomial_system("even", n)
    for i in range(n):
        row = [ps[i + 1][j] for j in range(i + 1)]
        if row != binom_even.rows[i]:
            return False

    s = _nilpotent_series(lambda k: Fraction(1, factorial(2 * k + 1)), _even_weighted_shift(n), n)
    binom_odd = binomial_system("odd", n)
    for i in range(n):
        row = [(2 * i + 1) * s[i][j] for j in range(i + 1)]
        if row != binom_odd.rows[i]:
            return False
    return True


def ramanujan_rhs(n: int) -> list:
    """Right-hand side entries f_1 .. f_{n-1} of the unscaled sparse system.

    f_i multiplies out both corrections at once; it factors exactly as
    z_i * q_i of the ramanujan family.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for i in range(1, n):
        v = Fraction(1)
        if i % 3 == 2:
            v -= Fraction(3, 2)
        if i % 3 == 0:
            v -= Fraction(1, 2 * i // 3 + 1)
        out.append(v / ((2 * i + 1) * (i + 1)))
    return out


def convert_type(sys: BernoulliSystem, direction: str) -> BernoulliSystem:
    """Rebuild a system as its other type, verifying consistency exactly.

    I_to_II drops the first row and column and removes the B_0 contribution
    from the right-hand side; II_to_I prepends the row a_0 * B_0 = 1. Both
    directions check the transformed right-hand side against the family
    formulas and refuse tampered data.
    """
    if direction == "I_to_II":
        if sys.kind != "typeI":
            raise ConversionError("expected a typeI system")
        if sys.n < 2:
            raise ConversionError("need at least two rows to drop one")
        out = gen_system(sys.family, "typeII", sys.n - 1, sys.x)
        old = sys.rhs()
        expect = out.rhs()
        for i in range(out.n):
            if old[i + 1] - sys.a[i + 1] != expect[i]:
                raise ConversionError(f"right-hand side row {i + 1} does not transform")
        return out
    if direction == "II_to_I":
        if sys.kind != "typeII":
            raise ConversionError("expected a typeII system")
        if sys.a[0] != 1:
            raise ConversionError("consistency requires a leading coefficient of one")
        out = gen_system(sys.family, "typeI", sys.n + 1, sys.x)
        old = sys.rhs()
        new = out.rhs()
        for i in range(sys.n):
            if new[i + 1] - out.a[i + 1] != old[i]:
                raise ConversionError(f"right-hand side row {i} does not transform back")
        return out
    raise ValueError(f"unknown direction: {direction!r}")


def _next_power(m: int, base: int) -> int:
    n = base
    while n < m:
        n *= base
    return n


def bernoulli_numbers(
    count: int,
    method: str = "binom-even",
    x: Fraction = Fraction(1),
    solver: str = "forward",
    base: int | None = None,
) -> list:
    """[B_0, B_2, ..., B_{2(count-1)}] via the chosen system and solver.

    ``solver`` is "forward" (quadratic substitution) or "fast" (the
    nullification solver; the system is generated at the next power of the
    base and the solution truncated). The result never depends on x, the
    scaling cancels exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if method not in METHODS:
        raise ValueError(f"unknown method: {method!r}")
    if solver not in ("forward", "fast"):
        raise ValueError(f"unknown solver: {solver!r}")
    x = Fraction(x)
    if x == 0:
        raise ValueError("scaling parameter x must be nonzero")

    if method.startswith("binom-"):
        bs = binomial_system(method.removeprefix("binom-"), count)
        return _solve_lower(bs.rows, bs.rhs)

    _, fam_key, kind_key = method.split("-")
    family = {"even": "even", "odd": "odd", "ram": "ramanujan"}[fam_key]
    kind = "typeI" if kind_key == "I" else "typeII"
    m = count if kind == "typeI" else count - 1
    if m == 0:
        return [Fraction(1)]

    if solver == "forward":
        sys_ = gen_system(family, kind, m, x)
        y = series.ltt_solve_forward(sys_.a, sys_.rhs())
    else:
        b = base if base is not None else (3 if family == "ramanujan" else 2)
        padded = gen_system(family, kind, _next_power(m, b), x)
        y = ltt_solve_fast(padded.a, padded.rhs(), b)[:m]
        sys_ = gen_system(family, kind, m, x)
    return sys_.bernoulli_from_solution(y)[:count]


def zeta_consistency(j: int, terms: int) -> float:
    """Ratio of |B_2j| (2 pi)**2j / (2 (2j)!) to the zeta(2j) partial sum.

    Tends to one as ``terms`` grows; already closer than float precision for
    moderate j because the tail decays like terms**(1 - 2j).
    """
    if j < 1:
        raise ValueError("need j >= 1")
    if terms < 1:
        raise ValueError("need at least one term")
    b2j = bernoulli_numbers(j + 1)[j]
    closed = float(abs(b2j) / (2 * Fraction(factorial(2 * j)))) * (2 * math.pi) ** (2 * j)
    partial = sum(1.0 / k ** (2 * j) for k in range(1, terms + 1))
    return closed / partial


def _primes_upto(m: int) -> list:
    if m < 2:
        return []
    sieve = bytearray([1]) * (m + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(m**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, m + 1) if sieve[p]]


def von_staudt_check(j: int) -> bool:
    """True iff the denominator of B_2j is the product of the primes p with
    p - 1 dividing 2j."""
    if j < 1:
        raise ValueError("need j >= 1")
    denom = bernoulli_numbers(j + 1)[j].denominator
    prod = 1
    for p in _primes_upto(2 * j + 1):
        if (2 * j) % (p - 1) == 0:
            prod *= p
    return denom == prod
