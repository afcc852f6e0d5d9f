"""Truncated lower triangular Toeplitz (l.t.T.) columns and their naive algebra.

A length-n coefficient list ``a`` stands for the n x n matrix with ``a[k]``
on the k-th subdiagonal, equivalently for the power series
``a[0] + a[1] z + ... + a[n-1] z**(n-1)`` truncated mod ``z**n``. Every
product here is the upper-left n x n block of the corresponding semi-infinite
product, i.e. plain series multiplication mod ``z**n``.

The quadratic routines in this module are exact over rationals and serve as
the reference implementations (and test oracles) for every fast path in the
package.
"""

from __future__ import annotations

from operator import mul

from .opcount import OpCounter
from .scalars import COMPLEX, RATIONAL, field_of, format_scalar, parse_scalar


class SingularMatrixError(ZeroDivisionError):
    """Leading coefficient is zero, the triangular system has no inverse."""


def _conv_trunc(a, v, ops=None):
    # w_i = sum_{j<=i} a_{i-j} v_j for i < len(a); all pair products are formed
    n = len(a)
    ar = a[::-1]
    out = [sum(map(mul, ar[n - 1 - i :], v)) for i in range(n)]
    if ops is not None:
        ops.add(n * (n + 1) // 2)
    return out


def ltt_matvec_naive(a, v, ops: OpCounter | None = None):
    """Multiply the l.t.T. matrix with first column ``a`` by ``v``, O(n^2)."""
    if len(a) != len(v):
        raise ValueError(f"length mismatch: column {len(a)}, vector {len(v)}")
    if not a:
        raise ValueError("empty column")
    return _conv_trunc(a, v, ops)


def ltt_compose(a, u, ops: OpCounter | None = None):
    """First column of the product of the l.t.T. matrices built on a and u.

    Identical to the truncated series product a(z)*u(z) mod z**n, so the
    result column again generates the product matrix.
    """
    if len(a) != len(u):
        raise ValueError(f"length mismatch: {len(a)} vs {len(u)}")
    if not a:
        raise ValueError("empty column")
    return _conv_trunc(a, u, ops)


def ltt_solve_forward(a, f):
    """Solve the l.t.T. system with first column ``a`` by forward substitution.

    Exact over rationals, O(n^2). The quadratic oracle against which the
    fast solver is checked.
    """
    n = len(a)
    if len(f) != n:
        raise ValueError(f"length mismatch: column {n}, rhs {len(f)}")
    if not a:
        raise ValueError("empty column")
    a0 = a[0]
    if a0 == 0:
        raise SingularMatrixError("leading coefficient is zero")
    ar = a[::-1]
    x = []
    for i in range(n):
        s = f[i] - sum(map(mul, ar[n - 1 - i : n - 1], x))
        x.append(s if a0 == 1 else s / a0)
    return x


def spread(v, base: int, power: int, out_len: int):
    """Insert base**power - 1 zeros after each component, truncate to out_len.

    Component v[j] lands at index j * base**power; indexes past out_len are
    dropped.
    """
    if base < 2 or power < 1:
        raise ValueError("spread needs base >= 2 and power >= 1")
    if out_len < 1:
        raise ValueError("output length must be >= 1")
    step = base**power
    out = [0] * out_len
    for j, value in enumerate(v):
        pos = j * step
        if pos >= out_len:
            break
        out[pos] = value
    return out


def unspread(v, base: int, power: int = 1):
    """Keep the components at indexes 0, base**power, 2*base**power, ..."""
    if base < 2 or power < 1:
        raise ValueError("unspread needs base >= 2 and power >= 1")
    return list(v[:: base**power])


def write_vector(path, values, field: str | None = None) -> None:
    """Write one scalar per line, preceded by a '# n=<len> field=<field>' header."""
    if field is None:
        field = field_of(values)
    lines = [f"# n={len(values)} field={field}"]
    lines.extend(format_scalar(v) for v in values)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vector(path):
    """Read a vector file, returning (values, field).

    The header line is optional; without it the field is inferred from the
    first value line (a comma, dot or exponent marks the complex field).
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    field = None
    declared = None
    if lines and lines[0].startswith("#"):
        header = lines.pop(0)
        for tok in header[1:].split():
            if tok.startswith("field="):
                field = tok[len("field=") :]
            elif tok.startswith("n="):
                declared = int(tok[len("n=") :])
    if not lines:
        raise ValueError(f"empty vector file: {path}")
    if field is None:
        field = COMPLEX if any(c in lines[0] for c in ",.eE") else RATIONAL
    if field not in (RATIONAL, COMPLEX):
        raise ValueError(f"bad field in header of {path}: {field!r}")
    values = [parse_scalar(ln, field) for ln in lines]
    if declared is not None and declared != len(values):
        raise ValueError(f"header says n={declared} but file has {len(values)} values")
    return values, field
