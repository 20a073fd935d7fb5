"""
Exact linear programming.

A two-phase primal simplex over ``Fraction`` with Bland's anti-cycling rule,
plus the minimax (Chebyshev) fit built on top of it. The problems solved here
have a handful of variables and at most a few dozen rows, so the dense
tableau is rebuilt freely and reduced costs are recomputed every iteration.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exact import ExactMatrix, ExactVector, dot, vector
from .exceptions import AnalysisError, InfeasibleProgramError, PreconditionError, UnboundedProgramError
from .linalg import solve_linear_system

logger = logging.getLogger(__name__)

LE, EQ, GE = "<=", "=", ">="
FREE, NONNEG = "free", "nonneg"

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    """minimise c^T x subject to rows[i] . x (sense[i]) rhs[i] and the variable bounds."""

    objective: ExactVector
    rows: ExactMatrix
    rhs: ExactVector
    senses: Tuple[str, ...]
    bounds: Tuple[str, ...]

    def __post_init__(self):
        n = len(self.objective)
        if self.rows.cols != n:
            raise PreconditionError(f"Constraint matrix has {self.rows.cols} columns, objective has {n}.")
        if len(self.rhs) != self.rows.rows or len(self.senses) != self.rows.rows:
            raise PreconditionError("Right-hand sides and senses must match the number of constraints.")
        if len(self.bounds) != n:
            raise PreconditionError("One bound per variable is required.")
        if any(s not in (LE, EQ, GE) for s in self.senses):
            raise PreconditionError(f"Unknown constraint sense in {self.senses}.")
        if any(b not in (FREE, NONNEG) for b in self.bounds):
            raise PreconditionError(f"Unknown variable bound in {self.bounds}.")


@dataclass(frozen=True)
class StandardForm:
    """min c^T x, A x = b, x >= 0 after splitting free variables and adding slacks."""

    matrix: Tuple[ExactVector, ...]
    rhs: ExactVector
    costs: ExactVector
    row_signs: Tuple[int, ...]
    kept_rows: Tuple[int, ...]


@dataclass(frozen=True)
class LPSolution:
    x: ExactVector
    objective: Fraction
    basis: Tuple[int, ...]
    duals: ExactVector
    iterations: int
    standard: StandardForm = field(repr=False)
    x_standard: ExactVector = field(repr=False)
    y_standard: ExactVector = field(repr=False)

    def certify(self) -> bool:
        """Primal feasibility, dual feasibility and a zero duality gap, checked exactly."""
        sf = self.standard
        if any(v < 0 for v in self.x_standard):
            return False
        for i in sf.kept_rows:
            if dot(sf.matrix[i], self.x_standard) != sf.rhs[i]:
                return False
        n_cols = len(sf.costs)
        for j in range(n_cols):
            column_value = sum((sf.matrix[i][j] * y for i, y in zip(sf.kept_rows, self.y_standard)), ZERO)
            if column_value > sf.costs[j]:
                return False
        primal = dot(sf.costs, self.x_standard)
        dual = sum((sf.rhs[i] * y for i, y in zip(sf.kept_rows, self.y_standard)), ZERO)
        return primal == dual


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.iterations = 0

    def objective(self, costs):
        return sum((costs[b] * row[-1] for b, row in zip(self.basis, self.rows)), ZERO)

    def reduced_cost(self, costs, j):
        return costs[j] - sum((costs[b] * row[j] for b, row in zip(self.basis, self.rows)), ZERO)

    def pivot(self, r, j):
        pivot_row = self.rows[r]
        factor = pivot_row[j]
        pivot_row = [v / factor for v in pivot_row]
        self.rows[r] = pivot_row
        for i, row in enumerate(self.rows):
            if i == r or row[j] == 0:
                continue
            coef = row[j]
            self.rows[i] = [a - coef * b for a, b in zip(row, pivot_row)]
        self.basis[r] = j
        self.iterations += 1

    def run(self, costs, allowed: Sequence[int]):
        while True:
            entering = next((j for j in allowed if self.reduced_cost(costs, j) < 0), None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise UnboundedProgramError(f"Objective is unbounded along column {entering}.")
            self.pivot(best[1], entering)


def _standardise(lp: LinearProgram):
    columns = []  # (original variable, sign)
    for j, bound in enumerate(lp.bounds):
        columns.append((j, 1))
        if bound == FREE:
            columns.append((j, -1))
    n_struct = len(columns)

    m = lp.rows.rows
    base_rows, rhs, senses, signs = [], [], [], []
    for i in range(m):
        row = [lp.rows[i, j] * s for (j, s) in columns]
        b, sense, sign = lp.rhs[i], lp.senses[i], 1
        if b < 0:
            row, b, sign = [-v for v in row], -b, -1
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        base_rows.append(row)
        rhs.append(b)
        senses.append(sense)
        signs.append(sign)

    n_slack = sum(1 for s in senses if s != EQ)
    slack_rows = [[ZERO] * n_slack for _ in range(m)]
    needs_artificial = []
    basis_hint: List[Optional[int]] = [None] * m
    k = 0
    for i, sense in enumerate(senses):
        if sense == LE:
            slack_rows[i][k] = ONE
            basis_hint[i] = n_struct + k
            k += 1
        elif sense == GE:
            slack_rows[i][k] = -ONE
            needs_artificial.append(i)
            k += 1
        else:
            needs_artificial.append(i)

    matrix = tuple(tuple(base_rows[i] + slack_rows[i]) for i in range(m))
    costs = tuple([lp.objective[j] * s for (j, s) in columns] + [ZERO] * n_slack)
    return columns, matrix, tuple(rhs), costs, tuple(signs), needs_artificial, basis_hint


def solve_lp(lp: LinearProgram) -> LPSolution:
    columns, matrix, rhs, costs, signs, needs_artificial, basis_hint = _standardise(lp)
    m, n_std = len(matrix), len(costs)
    n_art = len(needs_artificial)

    rows = []
    for i in range(m):
        art = [ZERO] * n_art
        if i in needs_artificial:
            art[needs_artificial.index(i)] = ONE
            basis_hint[i] = n_std + needs_artificial.index(i)
        rows.append(list(matrix[i]) + art + [rhs[i]])
    tableau = _Tableau(rows, list(basis_hint))
    row_ids = list(range(m))

    if n_art:
        phase_one = [ZERO] * n_std + [ONE] * n_art
        tableau.run(phase_one, range(n_std + n_art))
        if tableau.objective(phase_one) > 0:
            raise InfeasibleProgramError("Phase one ended with positive infeasibility.")
        for r in reversed(range(len(tableau.rows))):
            if tableau.basis[r] < n_std:
                continue
            swap = next((j for j in range(n_std) if tableau.rows[r][j] != 0), None)
            if swap is None:
                logger.debug("Dropping redundant constraint %d.", row_ids[r])
                del tableau.rows[r]
                del tableau.basis[r]
                del row_ids[r]
            else:
                tableau.pivot(r, swap)
        tableau.rows = [row[:n_std] + [row[-1]] for row in tableau.rows]

    tableau.run(costs, range(n_std))

    x_std = [ZERO] * n_std
    for b, row in zip(tableau.basis, tableau.rows):
        x_std[b] = row[-1]
    x = [ZERO] * len(lp.bounds)
    for col, (j, s) in enumerate(columns):
        x[j] += s * x_std[col]

    basis_matrix = ExactMatrix.from_rows(
        [[matrix[i][b] for b in tableau.basis] for i in row_ids], cols=len(tableau.basis)
    )
    y_kept = solve_linear_system(basis_matrix.transpose(), [costs[b] for b in tableau.basis]) if row_ids else ()
    duals = [ZERO] * m
    for i, y in zip(row_ids, y_kept):
        duals[i] = signs[i] * y

    logger.debug("Simplex finished after %d pivots on %d rows.", tableau.iterations, m)
    return LPSolution(
        x=tuple(x),
        objective=dot(lp.objective, x),
        basis=tuple(tableau.basis),
        duals=tuple(duals),
        iterations=tableau.iterations,
        standard=StandardForm(matrix, rhs, costs, signs, tuple(row_ids)),
        x_standard=tuple(x_std),
        y_standard=tuple(y_kept),
    )


@dataclass(frozen=True)
class MinimaxFit:
    g: Fraction
    coeffs: ExactVector
    residuals: ExactVector
    active: Tuple[int, ...]
    solution: LPSolution = field(repr=False)


def minimax_residuals(targets: Sequence[Fraction], features: ExactMatrix, coeffs: Sequence[Fraction]) -> ExactVector:
    return tuple(t - dot(features.row(i), coeffs) for i, t in enumerate(targets))


def lp_minimax(points: Sequence, targets: Sequence, features: ExactMatrix) -> MinimaxFit:
    """
    Minimise max_i |targets[i] - features[i] . coeffs| exactly.

    Phrased as: minimise g subject to f_i.c - g <= t_i and -f_i.c - g <= -t_i,
    with c free and g >= 0.
    """
    targets = vector(targets)
    if not targets:
        raise PreconditionError("At least one point is required.")
    if len(points) != len(targets) or features.rows != len(targets):
        raise PreconditionError("One target and one feature row per point are required.")

    p = features.cols
    rows, rhs = [], []
    for i, t in enumerate(targets):
        f = features.row(i)
        rows.append(list(f) + [-ONE])
        rhs.append(t)
        rows.append([-v for v in f] + [-ONE])
        rhs.append(-t)
    lp = LinearProgram(
        objective=(ZERO,) * p + (ONE,),
        rows=ExactMatrix.from_rows(rows, cols=p + 1),
        rhs=tuple(rhs),
        senses=(LE,) * len(rhs),
        bounds=(FREE,) * p + (NONNEG,),
    )
    solution = solve_lp(lp)
    if not solution.certify():
        raise AnalysisError("Simplex terminal tableau failed its optimality certificate.")

    coeffs = solution.x[:p]
    g = solution.x[p]
    residuals = minimax_residuals(targets, features, coeffs)
    worst = max(abs(r) for r in residuals)
    if worst != g:
        raise AnalysisError(f"Minimax value {g} disagrees with recomputed residual maximum {worst}.")
    active = tuple(i for i, r in enumerate(residuals) if abs(r) == g)
    return MinimaxFit(g=g, coeffs=coeffs, residuals=residuals, active=active, solution=solution)


def axis_directional_derivatives(targets: Sequence, features: ExactMatrix, coeffs: Sequence) -> List[Tuple[int, int, Fraction]]:
    """
    One-sided derivatives of max_i |t_i - f_i.c| along +e_k and -e_k.

    The objective is convex and piecewise linear, so a step along an axis can
    only lower it if the derivative over the active set is negative.
    """
    targets = vector(targets)
    coeffs = vector(coeffs)
    residuals = minimax_residuals(targets, features, coeffs)
    g = max(abs(r) for r in residuals)
    active = [i for i, r in enumerate(residuals) if abs(r) == g]
    out = []
    for k in range(features.cols):
        for sign in (1, -1):
            slopes = []
            for i in active:
                f = features[i, k]
                r = residuals[i]
                if r > 0:
                    slopes.append(-sign * f)
                elif r < 0:
                    slopes.append(sign * f)
                else:
                    slopes.append(abs(f))
            out.append((k, sign, max(slopes)))
    return out
