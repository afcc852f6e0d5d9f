import random
from fractions import Fraction

import pytest

from oracles import Eisenstein, max_rel_err, product_form_hat3

from lttkit.series import (
    SingularMatrixError,
    ltt_compose,
    ltt_matvec_naive,
    ltt_solve_forward,
    spread,
)
from lttkit.solver import (
    invert_first_column,
    ltt_solve_fast,
    sparsify_hat,
    sparsify_step,
)


def _rat_column(rng, n, lo=-9, hi=9, den=9):
    return [Fraction(1)] + [Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(n - 1)]


def _cx_column(rng, n, scale=0.35):
    return [1 + 0j] + [complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for _ in range(n - 1)]


def _e1(n):
    return [Fraction(1)] + [Fraction(0)] * (n - 1)


# ----------------------------------------------------------- sparsification


def test_hat_base2_is_sign_flip():
    assert sparsify_hat([1, 1, 1, 1], 2) == [1, -1, 1, -1]
    a = [1, 5, -2, 7, 0, 3]
    assert sparsify_hat(a, 2) == [1, -5, -2, -7, 0, -3]


def test_hat_base3_low_order_closed_forms():
    rng = random.Random(61)
    a = _rat_column(rng, 8)
    hat = sparsify_hat(a, 3)
    assert hat[0] == 1
    assert hat[1] == -a[1]
    assert hat[2] == -a[2] + a[1] ** 2
    assert hat[3] == 2 * a[3] - a[1] * a[2]


def test_hat_identity_column():
    e1 = _e1(5)
    assert sparsify_hat(e1, 2) == e1
    assert sparsify_hat(e1, 3) == e1


def test_hat_requires_unit_head():
    with pytest.raises(ValueError):
        sparsify_hat([Fraction(2), Fraction(1)], 2)


def test_hat_rational_large_base_rejected():
    with pytest.raises(ValueError):
        sparsify_hat(_e1(8), 4)


def test_hat_nullifies_off_multiples():
    rng = random.Random(67)
    for base in (2, 3):
        for n in (8, 16, 27, 81):
            a = _rat_column(rng, n)
            w = ltt_compose(a, sparsify_hat(a, base))
            assert w[0] == 1
            for i in range(1, n):
                if i % base:
                    assert w[i] == 0, (base, n, i)


def test_hat_base3_matches_exact_product_form():
    # closed form against the product of rotated columns, exactly in Q(w)
    rng = random.Random(71)
    columns = [[Fraction(1)] * 9] + [_rat_column(rng, n) for n in (5, 12, 26)]
    for a in columns:
        closed = sparsify_hat(a, 3)
        product = product_form_hat3(a)
        assert product == [Eisenstein(c) for c in closed]


def test_hat_complex_path_is_real_for_rational_input():
    rng = random.Random(73)
    for base, n in ((3, 81), (3, 243), (4, 16), (5, 25)):
        a = _rat_column(rng, n, lo=-3, hi=3, den=3)
        hat = sparsify_hat([complex(v) for v in a], base)
        assert max(abs(v.imag) for v in hat) < 1e-10
        if base == 3:
            exact = sparsify_hat(a, 3)
            assert max(abs(h - complex(e)) for h, e in zip(hat, exact)) < 1e-8


def test_sparsify_step_examples():
    res = sparsify_step([Fraction(1)] * 4, 2)
    assert res.hat == [1, -1, 1, -1]
    assert res.next == [1, 1]

    rng = random.Random(79)
    a = _rat_column(rng, 9)
    res = sparsify_step(a, 3)
    assert res.next[0] == 1
    assert res.next[1] == 3 * a[3] - 3 * a[1] * a[2] + a[1] ** 3
    full = ltt_compose(a, res.hat)
    assert res.next == [full[3 * i] for i in range(3)]

    e1 = _e1(6)
    res = sparsify_step(e1, 2)
    assert res.hat == e1 and res.next == _e1(3)


def test_sparsify_step_length_check():
    with pytest.raises(ValueError):
        sparsify_step(_e1(7), 2)


# ------------------------------------------------------------------- invert


def test_invert_examples():
    x, _ = invert_first_column([Fraction(1)] * 8, 2)
    assert x == [1, -1, 0, 0, 0, 0, 0, 0]
    x, _ = invert_first_column([Fraction(v) for v in (1, 2, 3, 4)], 2)
    assert x == [1, -2, 1, 0]


def test_invert_matches_forward_oracle_exactly():
    rng = random.Random(83)
    for base, sizes in ((2, (4, 8, 16, 64)), (3, (9, 27, 81))):
        for n in sizes:
            for _ in range(5):
                a = _rat_column(rng, n, lo=-4, hi=4, den=4)
                x, trace = invert_first_column(a, base)
                assert x == ltt_solve_forward(a, _e1(n))
                assert trace.levels == len(trace.hat_columns)
                assert [len(h) for h in trace.hat_columns] == [n // base**j for j in range(trace.levels)]


def test_invert_skips_presparsified_level():
    # a column already zero off multiples of 3 costs no first-level work
    rng = random.Random(89)
    n = 27
    a = [Fraction(0)] * n
    a[0] = Fraction(1)
    for i in range(3, n, 3):
        a[i] = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
    x, trace = invert_first_column(a, 3)
    assert x == ltt_solve_forward(a, _e1(n))
    assert trace.hat_columns[0] == _e1(n)
    dense = _rat_column(rng, n)
    _, dense_trace = invert_first_column(dense, 3)
    assert trace.mult_count < dense_trace.mult_count


def test_invert_normalizes_leading_coefficient():
    rng = random.Random(97)
    a = [Fraction(5, 2)] + _rat_column(rng, 8)[1:]
    x, _ = invert_first_column(a, 2)
    assert x == ltt_solve_forward(a, _e1(8))


def test_invert_errors():
    with pytest.raises(SingularMatrixError):
        invert_first_column([Fraction(0), Fraction(1)], 2)
    with pytest.raises(ValueError):
        invert_first_column(_e1(6), 2)
    with pytest.raises(ValueError):
        invert_first_column(_e1(8), 2, matvec_backend="fft")  # rational scalars


def test_invert_telescopes_to_identity():
    # composing the spread companion columns onto a yields the identity column
    rng = random.Random(101)
    for base, n in ((2, 16), (3, 27)):
        a = _rat_column(rng, n)
        _, trace = invert_first_column(a, base)
        col = list(a)
        for j, hat in enumerate(trace.hat_columns):
            full = spread(hat, base, j, n) if j else list(hat)
            col = ltt_compose(full, col)
        assert col == _e1(n)


def test_invert_complex_fft_backend_accuracy():
    rng = random.Random(103)
    for base, n in ((2, 64), (3, 81), (4, 64), (5, 125)):
        a = _cx_column(rng, n, scale=0.3)
        x, trace = invert_first_column(a, base)
        ref = ltt_solve_forward(a, [1 + 0j] + [0j] * (n - 1))
        assert max_rel_err(x, ref) < 1e-8
        assert trace.mult_count > 0


def test_invert_complex_naive_backend():
    rng = random.Random(107)
    a = _cx_column(rng, 27)
    x_fft, _ = invert_first_column(a, 3, matvec_backend="fft")
    x_naive, _ = invert_first_column(a, 3, matvec_backend="naive")
    assert max_rel_err(x_fft, x_naive) < 1e-9


def test_invert_complex_large_well_scaled():
    # decaying coefficients keep the companion-column cascade bounded, so
    # the float path stays accurate at large orders
    import cmath

    rng = random.Random(131)
    for base, n in ((2, 1024), (3, 729)):
        a = [1 + 0j]
        mag = 1.0
        for _ in range(n - 1):
            mag *= 0.5
            a.append(0.8 * mag * cmath.exp(1j * rng.uniform(0, 2 * cmath.pi)))
        x, _ = invert_first_column(a, base)
        ref = ltt_solve_forward(a, [1 + 0j] + [0j] * (n - 1))
        assert max_rel_err(x, ref) < 1e-10


def test_invert_trivial_order_one():
    x, trace = invert_first_column([Fraction(4)], 2)
    assert x == [Fraction(1, 4)] and trace.levels == 0


def test_complexity_growth_bound():
    rng = random.Random(109)
    for base in (2, 3):
        counts = []
        for k in range(3, 8):
            n = base**k
            _, trace = invert_first_column(_cx_column(rng, n), base)
            counts.append(trace.mult_count)
        for prev, nxt in zip(counts, counts[1:]):
            assert nxt <= 2.6 * base * prev


# --------------------------------------------------------------- fast solve


def test_solve_fast_examples():
    ones = [Fraction(1)] * 4
    assert ltt_solve_fast(ones, [Fraction(v) for v in (1, 2, 3, 4)], 2) == ones
    a = [Fraction(v) for v in (1, 2, 3, 4)]
    assert ltt_solve_fast(a, _e1(4), 2) == invert_first_column(a, 2)[0]


def test_solve_fast_matches_oracle_base3():
    rng = random.Random(113)
    n = 81
    a = _rat_column(rng, n, lo=-3, hi=3, den=3)
    f = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
    assert ltt_solve_fast(a, f, 3) == ltt_solve_forward(a, f)


def test_solve_fast_trace_includes_final_product():
    a = [Fraction(v) for v in (1, 2, 3, 4)]
    _, trace_inv = invert_first_column(a, 2)
    _, trace_full = ltt_solve_fast(a, _e1(4), 2, with_trace=True)
    assert trace_full.mult_count > trace_inv.mult_count


def test_solve_fast_rejects_fft_on_rationals():
    with pytest.raises(ValueError):
        ltt_solve_fast(_e1(4), _e1(4), 2, matvec_backend="fft")


def test_solve_fast_complex_full_pipeline():
    rng = random.Random(127)
    n = 64
    a = _cx_column(rng, n, scale=0.25)
    f = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
    got = ltt_solve_fast(a, f, 2)
    ref = ltt_solve_forward(a, f)
    assert max_rel_err(got, ref) < 1e-8
    check = ltt_matvec_naive(a, got)
    assert max_rel_err(check, f) < 1e-8
