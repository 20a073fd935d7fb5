import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exact import ExactMatrix, ExactVector, dot, vector
from .exceptions import InconsistentSystemError, PreconditionError

logger = logging.getLogger(__name__)


def _reduce(rows: List[List[Fraction]], rhs: List[Fraction]):
    """
    Gauss-Jordan elimination in place.

    Returns (pivot_columns, free_columns, order) where ``order[k]`` is the
    original index of the row now stored at position k.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    order = list(range(n_rows))
    pivots: List[int] = []
    free: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        found = next((i for i in range(piv_r, n_rows) if rows[i][piv_c] != 0), None)
        if found is None:
            free.append(piv_c)
            continue
        if found != piv_r:
            rows[piv_r], rows[found] = rows[found], rows[piv_r]
            rhs[piv_r], rhs[found] = rhs[found], rhs[piv_r]
            order[piv_r], order[found] = order[found], order[piv_r]
        fp = rows[piv_r][piv_c]
        rows[piv_r] = [v / fp for v in rows[piv_r]]
        rhs[piv_r] = rhs[piv_r] / fp
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = rows[r][piv_c]
            if fr == 0:
                continue
            rows[r] = [a - fr * b for a, b in zip(rows[r], rows[piv_r])]
            rhs[r] -= fr * rhs[piv_r]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            free.extend(range(piv_c + 1, n_cols))
            break
    return pivots, free, order


def solve_linear_system(A: ExactMatrix, b: Sequence) -> ExactVector:
    """
    Solve ``A x = b`` exactly.

    Rank-deficient but consistent systems return the particular solution with
    every free variable set to zero. Inconsistent systems raise
    ``InconsistentSystemError`` naming the first contradictory row (1-based,
    in the caller's row order).
    """
    b = vector(b)
    if A.rows < A.cols:
        raise PreconditionError(
            f"Expected at least as many rows as columns, got a {A.rows}x{A.cols} system."
        )
    if len(b) != A.rows:
        raise PreconditionError(f"Right-hand side has length {len(b)}, expected {A.rows}.")

    rows = [list(A.row(i)) for i in range(A.rows)]
    rhs = list(b)
    pivots, free, order = _reduce(rows, rhs)
    rank = len(pivots)

    contradictions = [order[r] for r in range(rank, A.rows) if rhs[r] != 0]
    if contradictions:
        raise InconsistentSystemError(min(contradictions) + 1)
    if free:
        logger.debug("Rank-deficient system (rank %d of %d); free columns %s set to zero.", rank, A.cols, free)

    solution = [Fraction(0)] * A.cols
    for r, piv_c in enumerate(pivots):
        solution[piv_c] = rhs[r]
    return tuple(solution)


def quadratic_form(values: Sequence[Fraction], matrix: ExactMatrix) -> Fraction:
    return dot(values, matrix.matvec(values))


def psd_project_residual(A: Sequence, Xi: ExactMatrix, Sigma: ExactMatrix) -> Tuple[ExactVector, Fraction]:
    """
    Weighted least squares: minimise (A - Xi a)^T Sigma (A - Xi a) over a.

    Returns a solution of the normal equations and the exact residual
    quadratic. Any solution gives the same residual, so singular normal
    matrices are handled with free variables pinned to zero.
    """
    A = vector(A)
    n = len(A)
    if Sigma.shape != (n, n):
        raise PreconditionError(f"Sigma has shape {Sigma.shape}, expected ({n}, {n}).")
    if Xi.rows != n:
        raise PreconditionError(f"Xi has {Xi.rows} rows, expected {n}.")
    if not Sigma.is_symmetric():
        raise PreconditionError("Sigma must be symmetric.")

    p = Xi.cols
    if p == 0 or all(v == 0 for v in Xi.entries):
        return (Fraction(0),) * p, quadratic_form(A, Sigma)

    weighted = Xi.transpose() @ Sigma
    normal = weighted @ Xi
    alpha = solve_linear_system(normal, weighted.matvec(A))
    fitted = Xi.matvec(alpha)
    residual = tuple(a - f for a, f in zip(A, fitted))
    return alpha, quadratic_form(residual, Sigma)
