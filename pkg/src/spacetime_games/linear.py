"""Exact rational linear feasibility: simplex phase I, Gaussian elimination, certificates.

Matrices are lists of rows of ``Fraction``.  Columns of the constraint
matrix are usually sparse 0/1 vectors, so the simplex is a revised one that
prices columns through the dual vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

Matrix = list[list[Fraction]]


def _frac_rows(A) -> Matrix:
    return [[Fraction(v) for v in row] for row in A]


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None  # z with A^T z >= 0 and b.z < 0
    pivots: int = 0


def _columns(A: Matrix) -> list[list[tuple[int, Fraction]]]:
    m = len(A)
    n = len(A[0]) if A else 0
    cols = [[] for _ in range(n)]
    for i in range(m):
        for j, v in enumerate(A[i]):
            if v:
                cols[j].append((i, v))
    return cols


def nonnegative_feasibility(A, b) -> LPResult:
    """Decide ``A x = b, x >= 0`` exactly; return a solution or a Farkas vector.

    Phase I of the simplex method with one artificial per row and Bland's
    rule.  At the phase-I optimum the dual vector ``y`` satisfies
    ``A^T y <= 0`` and ``b.y`` equals the optimal artificial sum, so when that
    sum is positive ``z = -y`` (mapped back through row sign flips) certifies
    infeasibility.
    """
    A = _frac_rows(A)
    b = [Fraction(v) for v in b]
    m = len(A)
    n = len(A[0]) if m else 0
    sign = [1 if bi >= 0 else -1 for bi in b]
    A = [[v * sign[i] for v in A[i]] for i in range(m)]
    b = [b[i] * sign[i] for i in range(m)]
    cols = _columns(A)
    int_cols = None
    if all(v.denominator == 1 for col in cols for _, v in col):
        int_cols = [[(i, int(v)) for i, v in col] for col in cols]
    # variables 0..n-1 structural, n..n+m-1 artificial
    basis = list(range(n, n + m))
    Binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    xB = list(b)
    cost = lambda j: Fraction(1) if j >= n else Fraction(0)  # noqa: E731

    def column(j):
        if j >= n:
            return [(j - n, Fraction(1))]
        return cols[j]

    pivots = 0
    while True:
        # phase-I costs are 1 on artificials, so y is the sum of their rows of B^-1
        art_rows = [Binv[k] for k in range(m) if basis[k] >= n]
        y = [sum((row[i] for row in art_rows), Fraction(0)) for i in range(m)]
        entering = None
        in_basis = set(basis)
        # price with integers: scale y by a common denominator
        scale = math.lcm(*(v.denominator for v in y)) if y else 1
        yi = [int(v * scale) for v in y]
        for j in range(n + m):
            if j in in_basis:
                continue
            if j < n and int_cols is not None:
                rc_scaled = -sum(yi[i] * v for i, v in int_cols[j])
            else:
                rc_scaled = cost(j) * scale - sum((yi[i] * v for i, v in column(j)), Fraction(0))
            if rc_scaled < 0:
                entering = j
                break
        if entering is None:
            break
        col = column(entering)
        d = [sum((Binv[r][i] * v for i, v in col if Binv[r][i]), Fraction(0)) for r in range(m)]
        leave = None
        best = None
        for r in range(m):
            if d[r] > 0:
                ratio = xB[r] / d[r]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # cannot happen in phase I: objective is bounded below
            raise ArithmeticError("unbounded phase-I problem")
        piv = d[leave]
        Binv[leave] = [v / piv for v in Binv[leave]]
        xB[leave] = xB[leave] / piv
        for r in range(m):
            if r != leave and d[r]:
                f = d[r]
                Binv[r] = [a - f * c if c else a for a, c in zip(Binv[r], Binv[leave])]
                xB[r] = xB[r] - f * xB[leave]
        basis[leave] = entering
        pivots += 1
    objective = sum((xB[r] for r in range(m) if basis[r] >= n), Fraction(0))
    if objective == 0:
        x = [Fraction(0)] * n
        for r, j in enumerate(basis):
            if j < n:
                x[j] = xB[r]
        return LPResult(True, tuple(x), None, pivots)
    z = tuple(-y[i] * sign[i] for i in range(m))
    return LPResult(False, None, z, pivots)


def verify_farkas(A, b, z) -> bool:
    """Check ``A^T z >= 0`` and ``b.z < 0``, which rules out ``A x = b, x >= 0``."""
    A = _frac_rows(A)
    m = len(A)
    n = len(A[0]) if m else 0
    for j in range(n):
        if sum((A[i][j] * z[i] for i in range(m)), Fraction(0)) < 0:
            return False
    return sum((Fraction(b[i]) * z[i] for i in range(m)), Fraction(0)) < 0


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None  # y with A^T y = 0 and b.y != 0


def solve_linear_system(A, b) -> SolveResult:
    """Any solution of ``A x = b`` (free variables set to 0), or a row combination ``0 = c != 0``."""
    A = _frac_rows(A)
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [A[i] + [Fraction(b[i])] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    pivcols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return SolveResult(False, None, tuple(rows[i][n + 1:]))
    x = [Fraction(0)] * n
    for i, c in enumerate(pivcols):
        x[c] = rows[i][n]
    return SolveResult(True, tuple(x), None)


def verify_inconsistency(A, b, y) -> bool:
    A = _frac_rows(A)
    m = len(A)
    n = len(A[0]) if m else 0
    if any(sum((A[i][j] * y[i] for i in range(m)), Fraction(0)) != 0 for j in range(n)):
        return False
    return sum((Fraction(b[i]) * y[i] for i in range(m)), Fraction(0)) != 0


def residual(A, x, b) -> tuple[Fraction, ...]:
    return tuple(sum((Fraction(a) * xi for a, xi in zip(row, x)), Fraction(0)) - Fraction(bi) for row, bi in zip(A, b))


def rank(A) -> int:
    A = _frac_rows(A)
    return sum(1 for _ in _independent_rows(A))


def _independent_rows(A: Matrix):
    basis: list[tuple[int, list[Fraction]]] = []
    for idx, row in enumerate(A):
        v = list(row)
        for c, brow in basis:
            if v[c] != 0:
                f = v[c]
                v = [a - f * bb for a, bb in zip(v, brow)]
        c = next((k for k, val in enumerate(v) if val != 0), None)
        if c is not None:
            pv = v[c]
            v = [a / pv for a in v]
            basis = [(cc, [a - br[c] * vv for a, vv in zip(br, v)]) if br[c] else (cc, br) for cc, br in basis]
            basis.append((c, v))
            yield idx


def vertex_enumeration_feasible(A, b, max_vars: int = 20) -> tuple[Fraction, ...] | None:
    """Brute-force oracle: try every basic solution of ``A x = b, x >= 0``.

    Only meant for small problems; it shares no code path with the simplex.
    """
    A = _frac_rows(A)
    n = len(A[0]) if A else 0
    if n > max_vars:
        raise ValueError(f"vertex enumeration is limited to {max_vars} variables")
    aug = [row + [Fraction(bi)] for row, bi in zip(A, b)]
    keep = list(_independent_rows(aug))
    if len(list(_independent_rows([A[i] for i in keep]))) < len(keep):
        return None  # b is outside the column space
    A = [A[i] for i in keep]
    b = [Fraction(b[i]) for i in keep]
    r = len(A)
    if r == 0:
        return tuple([Fraction(0)] * n)
    for subset in _promising_bases(A, b, n, r):
        sub = [[row[j] for j in subset] for row in A]
        sol = _square_solve(sub, b)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(subset, sol):
            x[j] = v
        return tuple(x)
    return None


def _promising_bases(A: Matrix, b, n: int, r: int):
    """All r-column subsets, minus those a float solve shows to be clearly infeasible.

    Subsets that are near-singular or borderline in floating point are kept,
    so every candidate is still decided by the exact solve.  With an integer
    matrix a determinant below 1/2 in magnitude is exactly zero, so those
    subsets are dropped.
    """
    subsets = list(itertools.combinations(range(n), r))
    if not subsets:
        return
    Af = np.array([[float(v) for v in row] for row in A])
    bf = np.array([float(v) for v in b])
    idx = np.array(subsets)
    mats = np.transpose(Af[:, idx], (1, 0, 2))  # (k, r, r)
    dets = np.linalg.det(mats)
    regular = np.abs(dets) > 1e-9
    ok = ~regular
    if all(v.denominator == 1 for row in A for v in row):
        # integer determinants: anything below 1/2 in magnitude is exactly zero
        ok &= np.abs(dets) > 0.5
    if regular.any():
        sols = np.linalg.solve(mats[regular], np.broadcast_to(bf, (int(regular.sum()), r))[..., None])[..., 0]
        ok[regular] = sols.min(axis=1) > -1e-7
    for k in np.nonzero(ok)[0]:
        yield subsets[k]


def _square_solve(M: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    n = len(M)
    rows = [list(M[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return None
        rows[c], rows[p] = rows[p], rows[c]
        pv = rows[c][c]
        rows[c] = [v / pv for v in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[c])]
    return [rows[i][n] for i in range(n)]


__all__ = [
    "LPResult",
    "SolveResult",
    "nonnegative_feasibility",
    "rank",
    "residual",
    "solve_linear_system",
    "verify_farkas",
    "verify_inconsistency",
    "vertex_enumeration_feasible",
]
