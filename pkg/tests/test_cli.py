import json
from fractions import Fraction

import pytest

from lttkit import bernoulli
from lttkit.cli import main
from lttkit.scalars import parse_scalar
from lttkit.series import read_vector, write_vector


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bernoulli_plain_table(capsys):
    code, out, _ = run(capsys, "bernoulli", "--count", "9", "--method", "ltt-ram-I")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "B_0 = 1"
    assert lines[1] == "B_2 = 1/6"
    assert lines[-1] == "B_16 = -3617/510"


def test_bernoulli_count_one(capsys):
    code, out, _ = run(capsys, "bernoulli", "--count", "1")
    assert code == 0 and out == "B_0 = 1\n"


def test_bernoulli_csv_cross_method_identical(capsys):
    code, csv_a, _ = run(capsys, "bernoulli", "--count", "16", "--method", "binom-even", "--format", "csv")
    assert code == 0
    code, csv_b, _ = run(capsys, "bernoulli", "--count", "16", "--method", "ltt-odd-II", "--format", "csv")
    assert code == 0
    assert csv_a == csv_b
    rows = csv_a.strip().splitlines()
    assert rows[0] == "index,numerator,denominator"
    assert len(rows) == 17


def test_bernoulli_csv_round_trips_through_parse(capsys):
    _, out, _ = run(capsys, "bernoulli", "--count", "12", "--format", "csv")
    expected = bernoulli.bernoulli_numbers(12)
    for row, want in zip(out.strip().splitlines()[1:], expected):
        idx, num, den = row.split(",")
        assert parse_scalar(f"{num}/{den}", "rational") == want
        assert int(idx) % 2 == 0


def test_bernoulli_json_round_trips(capsys):
    _, out, _ = run(capsys, "bernoulli", "--count", "10", "--format", "json")
    records = json.loads(out)
    expected = bernoulli.bernoulli_numbers(10)
    assert [r["j"] for r in records] == [2 * j for j in range(10)]
    for rec, want in zip(records, expected):
        assert parse_scalar(f"{rec['num']}/{rec['den']}", "rational") == want


def test_bernoulli_deterministic_output(capsys):
    _, first, _ = run(capsys, "bernoulli", "--count", "20", "--solver", "fast", "--x", "7/3")
    _, second, _ = run(capsys, "bernoulli", "--count", "20", "--solver", "fast", "--x", "7/3")
    assert first == second


def test_bernoulli_rejects_bad_method(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bernoulli", "--count", "4", "--method", "pascal"])
    assert exc.value.code == 2


def test_bernoulli_out_file(tmp_path, capsys):
    target = tmp_path / "table.txt"
    code, out, _ = run(capsys, "bernoulli", "--count", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "B_0 = 1\nB_2 = 1/6\nB_4 = -1/30\n"


def test_solve_forward_from_files(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [Fraction(1), Fraction(2), Fraction(3), Fraction(4)])
    write_vector(rhs, [Fraction(1), Fraction(0), Fraction(0), Fraction(0)])
    code, out, _ = run(capsys, "solve", "--coeffs", str(coeffs), "--rhs", str(rhs))
    assert code == 0
    assert out.splitlines() == ["# n=4 field=rational", "1", "-2", "1", "0"]


def test_solve_identity_echoes_rhs(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [Fraction(1), Fraction(0), Fraction(0)])
    write_vector(rhs, [Fraction(7), Fraction(8), Fraction(9)])
    code, out, _ = run(capsys, "solve", "--coeffs", str(coeffs), "--rhs", str(rhs))
    assert code == 0
    assert out.splitlines()[1:] == ["7", "8", "9"]


def test_solve_fast_with_trace(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [Fraction(1), Fraction(2), Fraction(3), Fraction(4)])
    write_vector(rhs, [Fraction(1), Fraction(0), Fraction(0), Fraction(0)])
    code, out, _ = run(
        capsys, "solve", "--coeffs", str(coeffs), "--rhs", str(rhs), "--solver", "fast", "--trace"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[1:5] == ["1", "-2", "1", "0"]
    assert lines[5].startswith("# trace base=2 levels=2 mult_count=")


def test_solve_singular_exits_three(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [Fraction(0), Fraction(2)])
    write_vector(rhs, [Fraction(1), Fraction(0)])
    code, _, err = run(capsys, "solve", "--coeffs", str(coeffs), "--rhs", str(rhs))
    assert code == 3
    assert "singular" in err


def test_solve_shape_mismatch_exits_two(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [Fraction(1), Fraction(2)])
    write_vector(rhs, [Fraction(1)])
    code, _, err = run(capsys, "solve", "--coeffs", str(coeffs), "--rhs", str(rhs))
    assert code == 2 and err


def test_solve_complex_fast_fft(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    rhs = tmp_path / "f.txt"
    write_vector(coeffs, [1 + 0j, 0.5 + 0.25j, -0.25 + 0j, 0.125 - 0.125j])
    write_vector(rhs, [1 + 0j, 0j, 0j, 0j])
    code, out, _ = run(
        capsys,
        "solve", "--coeffs", str(coeffs), "--rhs", str(rhs),
        "--solver", "fast", "--impl", "fft", "--base", "2",
    )
    assert code == 0
    values = [parse_scalar(ln, "complex") for ln in out.splitlines()[1:]]
    assert abs(values[0] - 1) < 1e-12
    assert abs(values[1] + (0.5 + 0.25j)) < 1e-12


def test_matvec_ltt_naive(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    vec = tmp_path / "v.txt"
    write_vector(coeffs, [Fraction(1), Fraction(1), Fraction(1)])
    write_vector(vec, [Fraction(1), Fraction(1), Fraction(1)])
    code, out, _ = run(capsys, "matvec", "--coeffs", str(coeffs), "--vec", str(vec))
    assert code == 0
    assert out.splitlines()[1:] == ["1", "2", "3"]


def test_matvec_toeplitz_split_matches_naive(tmp_path, capsys):
    diags = tmp_path / "t.txt"
    vec = tmp_path / "v.txt"
    write_vector(diags, [0.5 + 0j, -1 + 0j, 1 + 0j, 2 + 0j, 0 + 3j, 0.25 + 0j, 1 - 1j])
    write_vector(vec, [1 + 0j, 2 + 0j, 0j, -1 + 0j])
    code, naive_out, _ = run(
        capsys, "matvec", "--coeffs", str(diags), "--vec", str(vec), "--type", "toeplitz"
    )
    assert code == 0
    code, split_out, _ = run(
        capsys,
        "matvec", "--coeffs", str(diags), "--vec", str(vec),
        "--type", "toeplitz", "--impl", "split", "--base", "2",
    )
    assert code == 0
    naive_vals = [parse_scalar(ln, "complex") for ln in naive_out.splitlines()[1:]]
    split_vals = [parse_scalar(ln, "complex") for ln in split_out.splitlines()[1:]]
    assert max(abs(p - q) for p, q in zip(naive_vals, split_vals)) < 1e-10


def test_matvec_fft_requires_complex(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    vec = tmp_path / "v.txt"
    write_vector(coeffs, [Fraction(1), Fraction(2)])
    write_vector(vec, [Fraction(1), Fraction(0)])
    code, _, err = run(capsys, "matvec", "--coeffs", str(coeffs), "--vec", str(vec), "--impl", "embed")
    assert code == 2 and err


def test_matvec_out_file_round_trips(tmp_path, capsys):
    coeffs = tmp_path / "a.txt"
    vec = tmp_path / "v.txt"
    target = tmp_path / "out.txt"
    write_vector(coeffs, [Fraction(1), Fraction(2), Fraction(3)])
    write_vector(vec, [Fraction(1), Fraction(0), Fraction(0)])
    code, _, _ = run(capsys, "matvec", "--coeffs", str(coeffs), "--vec", str(vec), "--out", str(target))
    assert code == 0
    values, field = read_vector(target)
    assert values == [Fraction(1), Fraction(2), Fraction(3)] and field == "rational"


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.strip().endswith("all suites passed")
    code2, out2, _ = run(capsys, "selftest")
    assert code2 == 0 and out2 == out  # deterministic


def test_selftest_catches_injected_sign_flip(capsys, monkeypatch):
    original = bernoulli._a_value

    def flipped(family, i, x):
        value = original(family, i, x)
        if family == "ramanujan" and i == 3:
            return -value
        return value

    monkeypatch.setattr(bernoulli, "_a_value", flipped)
    code, out, _ = run(capsys, "selftest")
    assert code == 1
    assert "FAIL" in out


def test_bench_single_row(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "64", "--base", "2", "--impl", "dft")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    fields = lines[1].split()
    assert fields[0] == "64"
    assert int(fields[2]) > 0


def test_bench_ratio_column_roughly_constant(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "16,32,64,128", "--base", "2", "--impl", "solve")
    assert code == 0
    ratios = [float(line.split()[3]) for line in out.strip().splitlines()[1:]]
    assert len(ratios) == 4
    assert max(ratios) / min(ratios) < 1.6


def test_bench_rejects_non_power_size(capsys):
    code, _, err = run(capsys, "bench", "--sizes", "48", "--base", "2")
    assert code == 2 and err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--coeffs", "only.txt"])
    assert exc.value.code == 2
