from fractions import Fraction

import pytest

from estimators.exact import ExactMatrix, dot, format_rational, parse_rational, to_exact
from estimators.exceptions import InconsistentSystemError, PreconditionError
from estimators.linalg import psd_project_residual, quadratic_form, solve_linear_system


# -----------------------------
# Scalars
# -----------------------------
@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/4", Fraction(3, 4)),
        (" -2 / 6 ", Fraction(-1, 3)),
        ("0.25", Fraction(1, 4)),
        ("7", Fraction(7)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1/0", "abc", "1/2/3", ""])
def test_parse_rational_rejects_garbage(text):
    with pytest.raises(PreconditionError):
        parse_rational(text)


def test_format_rational_is_always_p_over_q():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(3) == "3/1"
    assert format_rational(Fraction(-6, 4)) == "-3/2"


def test_to_exact_keeps_float_binary_value():
    assert to_exact(0.5) == Fraction(1, 2)
    assert to_exact(0.1) == Fraction(3602879701896397, 36028797018963968)


def test_to_exact_rejects_bool():
    with pytest.raises(PreconditionError):
        to_exact(True)


def test_dot_length_mismatch():
    with pytest.raises(PreconditionError):
        dot((Fraction(1),), (Fraction(1), Fraction(2)))


# -----------------------------
# Matrices
# -----------------------------
def test_matrix_products():
    A = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert A.shape == (2, 2)
    assert (A @ ExactMatrix.identity(2)).to_rows() == A.to_rows()
    assert A.transpose()[0, 1] == 3
    assert A.matvec([1, 1]) == (3, 7)
    assert not A.is_symmetric()


def test_ragged_rows_rejected():
    with pytest.raises(PreconditionError):
        ExactMatrix.from_rows([[1, 2], [3]])


# -----------------------------
# Linear systems
# -----------------------------
def test_solve_hilbert_system_exactly():
    H = ExactMatrix.from_rows([[Fraction(1, i + j + 1) for j in range(4)] for i in range(4)])
    x = (Fraction(1), Fraction(-2), Fraction(3), Fraction(-4))
    assert solve_linear_system(H, H.matvec(x)) == x


def test_solve_rank_deficient_pins_free_variables():
    A = ExactMatrix.from_rows([[1, 1], [2, 2]])
    assert solve_linear_system(A, [2, 4]) == (2, 0)


def test_inconsistent_system_names_first_bad_row():
    A = ExactMatrix.from_rows([[1, 0], [0, 1], [1, 1], [2, 2]])
    with pytest.raises(InconsistentSystemError) as excinfo:
        solve_linear_system(A, [1, 1, 3, 4])
    assert excinfo.value.row == 3


def test_underdetermined_system_rejected():
    with pytest.raises(PreconditionError):
        solve_linear_system(ExactMatrix.from_rows([[1, 1]]), [1])


def test_psd_projection_zero_design():
    Sigma = ExactMatrix.from_rows([[2, 0], [0, 3]])
    alpha, residual = psd_project_residual([1, 1], ExactMatrix.zeros(2, 1), Sigma)
    assert alpha == (0,)
    assert residual == quadratic_form((Fraction(1), Fraction(1)), Sigma) == 5


def test_psd_projection_exact_fit():
    Xi = ExactMatrix.from_rows([[1], [2]])
    alpha, residual = psd_project_residual([3, 6], Xi, ExactMatrix.identity(2))
    assert alpha == (3,)
    assert residual == 0


def test_psd_projection_requires_symmetric_sigma():
    with pytest.raises(PreconditionError):
        psd_project_residual([1, 1], ExactMatrix.identity(2), ExactMatrix.from_rows([[1, 1], [0, 1]]))
