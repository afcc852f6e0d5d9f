"""Lower triangular Toeplitz kernels and exact Bernoulli number drivers.

Layers, bottom up: ``scalars`` (exact rational and complex fields),
``series`` (naive l.t.T. algebra, the reference oracles), ``fft`` (radix-b
transforms and fast Toeplitz products), ``solver`` (the non-recursive
nullification solver), ``bernoulli`` (system generators and number-theoretic
checks), ``cli`` (the ``lttkit`` command).
"""

from .bernoulli import (
    METHODS,
    BernoulliSystem,
    BinomialSystem,
    bernoulli_numbers,
    binomial_system,
    convert_type,
    gen_system,
    ramanujan_rhs,
    scaling_diag,
    tartaglia_check,
    von_staudt_check,
    zeta_consistency,
)
from .fft import (
    DftPlan,
    ToeplitzSpec,
    circulant_matvec,
    dft,
    idft,
    neg_circulant_matvec,
    plan_for,
    toeplitz_matvec_embed,
    toeplitz_matvec_split,
)
from .opcount import OpCounter
from .scalars import Rational, field_of, format_scalar, neg_root, parse_scalar, principal_root
from .series import (
    SingularMatrixError,
    ltt_compose,
    ltt_matvec_naive,
    ltt_solve_forward,
    read_vector,
    spread,
    unspread,
    write_vector,
)
from .solver import (
    SolveTrace,
    SparsifyResult,
    invert_first_column,
    ltt_solve_fast,
    sparsify_hat,
    sparsify_step,
)

__all__ = [
    "METHODS",
    "BernoulliSystem",
    "BinomialSystem",
    "DftPlan",
    "OpCounter",
    "Rational",
    "SingularMatrixError",
    "SolveTrace",
    "SparsifyResult",
    "ToeplitzSpec",
    "bernoulli_numbers",
    "binomial_system",
    "circulant_matvec",
    "convert_type",
    "dft",
    "field_of",
    "format_scalar",
    "gen_system",
    "idft",
    "invert_first_column",
    "ltt_compose",
    "ltt_matvec_naive",
    "ltt_solve_fast",
    "ltt_solve_forward",
    "neg_circulant_matvec",
    "neg_root",
    "parse_scalar",
    "plan_for",
    "principal_root",
    "ramanujan_rhs",
    "read_vector",
    "scaling_diag",
    "sparsify_hat",
    "sparsify_step",
    "spread",
    "tartaglia_check",
    "toeplitz_matvec_embed",
    "toeplitz_matvec_split",
    "unspread",
    "von_staudt_check",
    "write_vector",
    "zeta_consistency",
]
