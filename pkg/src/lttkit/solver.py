"""Non-recursive l.t.T. solver by repeated diagonal nullification.

For a unit lower triangular Toeplitz system of order n = base**k the solve
runs in two sweeps:

* First sweep: at each level the current column ``a`` (length m) is
  multiplied by a companion column ``hat`` chosen so that the product column
  vanishes at every index not divisible by base. The survivors, read off at
  indexes 0, base, 2*base, ..., form the next column of length m/base. After
  k levels the column is [1] and the accumulated left factors have turned
  the matrix into the identity.
* Second sweep: the inverse's first column is the product of the collected
  companion matrices applied to e_1, evaluated right to left with every
  matrix-vector product at its own block size (the zero structure of the
  intermediate vectors keeps each step cheap).

The companion column is free for base 2 (alternate the signs of ``a``), has
an exact integer-coefficient closed form for base 3, and for larger bases is
the truncated product of the rotations a(z*t), ..., a(z*t**(base-1)) with t
the base-th root of unity, which only exists here in complex arithmetic.

Rational inputs (base 2 and 3) are solved exactly with the quadratic naive
kernels at shrinking block sizes; complex inputs may route every block
product through the radix-base FFT, giving the O(n log n) operation count
that the multiplication counter in SolveTrace records.

The companion columns are built from products of the input column with
itself, so their dynamic range roughly squares at every level. Exact
arithmetic is immune; in floating point large systems need well scaled
columns (decaying coefficients, or flat ones of small magnitude) for the
result to carry precision.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from operator import mul

from . import fft, series
from .opcount import OpCounter
from .scalars import COMPLEX, RATIONAL, field_of, principal_root
from .series import SingularMatrixError

__all__ = [
    "SparsifyResult",
    "SolveTrace",
    "sparsify_hat",
    "sparsify_step",
    "invert_first_column",
    "ltt_solve_fast",
]

_BACKENDS = ("auto", "naive", "fft")


@dataclass(frozen=True)
class SparsifyResult:
    """One nullification step: the companion column and the shrunken column."""

    hat: list
    next: list


@dataclass(frozen=True)
class SolveTrace:
    """Companion columns and cost of one inversion, longest level first."""

    base: int
    levels: int
    hat_columns: list
    mult_count: int

    def report(self) -> str:
        return f"base={self.base} levels={self.levels} mult_count={self.mult_count}"


def _hat_base2(a):
    # a(-z): sign flip on odd coefficients, no arithmetic
    return [v if i % 2 == 0 else -v for i, v in enumerate(a)]


def _hat_base3_exact(a, ops: OpCounter | None):
    """Companion column for base 3 over exact scalars.

    hat_i collects the products a_r * a_q over r + q = i with coefficient
    +2 when the gap q - r is divisible by 3, -1 otherwise, and +1 for the
    square term at even i. The coefficients are integers, so rational input
    gives rational output.
    """
    n = len(a)
    out = []
    mults = 0
    for i in range(n):
        s = 0
        for r in range((i + 1) // 2):
            q = i - r
            p = a[r] * a[q]
            s = s + p + p if (q - r) % 3 == 0 else s - p
            mults += 1
        if i % 2 == 0:
            h = a[i // 2]
            s = s + h * h
            mults += 1
        out.append(s)
    if ops is not None:
        ops.add(mults)
    return out


def _hat_product(a, base, ops, matvec):
    """Companion column as the product of rotated copies of a, truncated.

    Rotation i multiplies coefficient k by t**(i*k), t the principal base-th
    root of unity; the rotations are folded together with base-2 many l.t.T.
    products through the supplied matvec.
    """
    n = len(a)
    t = principal_root(base)
    out = None
    for i in range(1, base):
        ti = t**i
        rot = []
        p = 1.0 + 0j
        for k in range(n):
            rot.append(complex(a[k]) * p if k else complex(a[0]))
            p *= ti
        if ops is not None:
            ops.add(2 * (n - 1))  # rotation scalings and the power ladder
        out = rot if out is None else matvec(out, rot, ops)
    return out


def _resolve_backend(field: str, matvec_backend: str) -> str:
    if matvec_backend not in _BACKENDS:
        raise ValueError(f"unknown matvec backend: {matvec_backend!r}")
    if matvec_backend == "auto":
        return "fft" if field == COMPLEX else "naive"
    if matvec_backend == "fft" and field == RATIONAL:
        raise ValueError("fft backend works on complex scalars only")
    return matvec_backend


def _matvec_for(backend: str, base: int):
    if backend == "naive":
        return lambda a, v, ops: series.ltt_matvec_naive(a, v, ops)
    return lambda a, v, ops: fft.ltt_matvec_fft(a, v, base, ops)


def sparsify_hat(a, base: int, ops: OpCounter | None = None):
    """Column hat with (L(a) hat)_i = 0 at every index i with i % base != 0.

    Requires a[0] == 1. Rational input is supported for bases 2 and 3 (the
    closed forms have integer coefficients); larger bases fall back to the
    complex product of rotations.
    """
    if not a or a[0] != 1:
        raise ValueError("column must be normalized to leading coefficient 1")
    if base < 2:
        raise ValueError("base must be >= 2")
    field = field_of(a)
    if base == 2:
        return _hat_base2(a)
    if field == RATIONAL:
        if base == 3:
            return _hat_base3_exact(a, ops)
        raise ValueError(f"no exact companion form for base {base}; use complex scalars")
    return _hat_product(a, base, ops, _matvec_for("naive", base))


def _subsampled_next(col, hat, base, ops, matvec):
    """Entries 0, base, 2*base, ... of L(col) hat via base products of size m/base.

    Splitting the running index by residue class mod base turns the one
    length-m product into base length-m/base l.t.T. products: class 0 pairs
    col[0::base] with hat[0::base]; class r >= 1 pairs col[base-r::base] with
    hat[r::base] and lands one slot later.
    """
    mb = len(col) // base
    nxt = matvec(col[0::base], hat[0::base], ops)
    for r in range(1, base):
        tail = matvec(col[base - r :: base], hat[r::base], ops)
        for i in range(1, mb):
            nxt[i] += tail[i - 1]
    return nxt


def sparsify_step(a, base: int, ops: OpCounter | None = None) -> SparsifyResult:
    """Companion column plus the next, base-times-shorter column.

    ``next`` holds the surviving coefficients of L(a) hat; its length is
    len(a) // base and next[0] == 1.
    """
    if len(a) % base:
        raise ValueError(f"length {len(a)} not divisible by base {base}")
    hat = sparsify_hat(a, base, ops)
    nxt = _subsampled_next(a, hat, base, ops, _matvec_for("naive", base))
    return SparsifyResult(hat=hat, next=nxt)


def _already_sparse(col, base):
    return not any(col[i] for i in range(1, len(col)) if i % base)


def _matvec_on_spread(col, w, base, out_len, ops):
    # L(col) applied to the vector with w[j] at index base*j, zeros elsewhere
    out = []
    mults = 0
    for i in range(out_len):
        out.append(sum(map(mul, col[i::-base], w)))
        mults += i // base + 1
    if ops is not None:
        ops.add(mults)
    return out


def invert_first_column(a, base: int, matvec_backend: str = "auto", ops: OpCounter | None = None):
    """First column of the inverse of the n x n l.t.T. matrix built on ``a``.

    n must be a power of ``base``. Returns (x, SolveTrace). Exact over
    rationals (bases 2 and 3); with complex scalars the default backend runs
    every block product through the radix-base FFT.

    A column whose off-multiple entries are already zero skips its
    nullification level, the shorter column is read off directly.
    """
    n = len(a)
    levels = fft._check_power(n, base)
    if not a:
        raise ValueError("empty column")
    a0 = a[0]
    if a0 == 0:
        raise SingularMatrixError("leading coefficient is zero")
    field = field_of(a)
    backend = _resolve_backend(field, matvec_backend)
    if field == RATIONAL and base > 3:
        raise ValueError(f"no exact companion form for base {base}; use complex scalars")
    matvec = _matvec_for(backend, base)
    counter = ops if ops is not None else OpCounter()
    start = counter.mults
    col = list(a) if a0 == 1 else [v / a0 for v in a]
    if levels == 0:
        trace = SolveTrace(base=base, levels=0, hat_columns=[], mult_count=0)
        return [col[0] if a0 == 1 else col[0] / a0], trace

    hats = []
    for _ in range(levels):
        m = len(col)
        if _already_sparse(col, base):
            hat = [col[0]] + [0] * (m - 1)
            nxt = col[::base]
        else:
            if base == 2:
                hat = _hat_base2(col)
            elif field == RATIONAL:
                hat = _hat_base3_exact(col, counter)
            else:
                hat = _hat_product(col, base, counter, matvec)
            if m > base:
                nxt = _subsampled_next(col, hat, base, counter, matvec)
            else:
                nxt = [col[0]]
        hats.append(hat)
        col = nxt

    # Apply the companion matrices to e_1 right to left; the first product
    # is just the shortest companion column itself.
    w = list(hats[-1])
    size = base
    for j in range(levels - 2, -1, -1):
        size *= base
        if backend == "naive":
            w = _matvec_on_spread(hats[j], w, base, size, counter)
        else:
            w = matvec(hats[j], series.spread(w, base, 1, size), counter)
    x = w if a0 == 1 else [v / a0 for v in w]
    trace = SolveTrace(base=base, levels=levels, hat_columns=hats, mult_count=counter.mults - start)
    return x, trace


def ltt_solve_fast(a, f, base: int, matvec_backend: str = "auto", with_trace: bool = False):
    """Solve L(a) x = f: invert the first column, then one l.t.T. product.

    With ``with_trace`` the returned pair carries a SolveTrace whose count
    includes the final product.
    """
    if len(f) != len(a):
        raise ValueError(f"length mismatch: column {len(a)}, rhs {len(f)}")
    ops = OpCounter()
    inv_col, trace = invert_first_column(a, base, matvec_backend, ops)
    backend = _resolve_backend(field_of(a), matvec_backend)
    x = _matvec_for(backend, base)(inv_col, list(f), ops)
    if with_trace:
        return x, replace(trace, mult_count=ops.mults)
    return x
