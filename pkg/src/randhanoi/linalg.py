"""Linear solvers for Dirichlet problems on the state graph.

Every system solved in this package has the same shape: the vertex set is
split into fixed ("boundary") vertices and unknowns, and for each unknown v

    deg(v) * x(v) - sum(x(u) for u in adj(v) if u is unknown) = b(v)

with boundary values folded into ``b``.  Hitting times, absorption
probabilities and grounded Laplacian potentials all reduce to this.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .core import StateGraph
from .errors import SolveFailure

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_SWEEPS = 10**7


def unknown_index(g: StateGraph, boundary: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    """Codes of the unknowns (ascending) and a code -> row map (-1 on boundary)."""
    fixed = np.zeros(g.num_vertices, dtype=bool)
    fixed[list(boundary)] = True
    unknowns = np.nonzero(~fixed)[0]
    row = np.full(g.num_vertices, -1, dtype=np.int64)
    row[unknowns] = np.arange(unknowns.size)
    return unknowns, row


# -- exact -------------------------------------------------------------------


def gauss_solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Dense Gaussian elimination with partial pivoting over the rationals."""
    m = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for k in range(m):
        piv = max(range(k, m), key=lambda i: abs(aug[i][k]))
        if aug[piv][k] == 0:
            raise SolveFailure("singular matrix")
        aug[k], aug[piv] = aug[piv], aug[k]
        pivot_row = aug[k]
        for i in range(k + 1, m):
            f = aug[i][k] / pivot_row[k]
            if f:
                row = aug[i]
                for j in range(k, m + 1):
                    row[j] -= f * pivot_row[j]
    x = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        s = aug[k][m] - sum(aug[k][j] * x[j] for j in range(k + 1, m))
        x[k] = s / aug[k][k]
    return x


def dirichlet_matrix_rows(g: StateGraph, row: np.ndarray, unknowns: np.ndarray) -> list[dict[int, int]]:
    rows = []
    for i, v in enumerate(unknowns.tolist()):
        r = {i: g.degree(v)}
        for u in g.neighbors(v):
            j = int(row[u])
            if j >= 0:
                r[j] = r.get(j, 0) - 1
        rows.append(r)
    return rows


def sparse_exact_solve(rows: list[dict], rhs: list[list]) -> list[list[Fraction]]:
    """Solve ``A X = B`` exactly for a sparse A given as column dicts.

    ``rhs[i]`` is the list of right-hand-side values of row i, one per
    column of B.  Elimination runs in natural order without row exchanges,
    which is valid for the nonsingular, diagonally dominant M-matrices built
    here; a vanishing pivot raises :class:`SolveFailure`.
    """
    m = len(rows)
    a = [{j: Fraction(x) for j, x in r.items()} for r in rows]
    b = [[Fraction(x) for x in r] for r in rhs]
    ncol = len(b[0]) if b else 0
    # rows below the diagonal holding an entry in each column, kept up to date with fill-in
    col_rows = [set() for _ in range(m)]
    for i, r in enumerate(a):
        for j in r:
            if i > j:
                col_rows[j].add(i)
    for k in range(m):
        rk = a[k]
        pivot = rk.get(k, 0)
        if pivot == 0:
            raise SolveFailure(f"zero pivot at row {k}")
        upper = [j for j in rk if j > k]
        bk = b[k]
        for i in sorted(col_rows[k]):
            ri = a[i]
            aik = ri.pop(k, 0)
            if not aik:
                continue
            f = aik / pivot
            for j in upper:
                if j not in ri and j < i:
                    col_rows[j].add(i)
                ri[j] = ri.get(j, 0) - f * rk[j]
            bi = b[i]
            for c in range(ncol):
                bi[c] -= f * bk[c]
    x = [[Fraction(0)] * ncol for _ in range(m)]
    for k in range(m - 1, -1, -1):
        rk = a[k]
        acc = list(b[k])
        for j, akj in rk.items():
            if j > k and akj:
                xj = x[j]
                for c in range(ncol):
                    acc[c] -= akj * xj[c]
        pivot = rk[k]
        x[k] = [s / pivot for s in acc]
    return x


# -- floating point ----------------------------------------------------------


def dirichlet_matrix(g: StateGraph, row: np.ndarray, unknowns: np.ndarray) -> sp.csr_matrix:
    deg = g.degrees()
    src = np.repeat(np.arange(g.num_vertices), deg)
    keep = (row[src] >= 0) & (row[g.indices] >= 0)
    off = sp.coo_matrix(
        (-np.ones(int(keep.sum())), (row[src[keep]], row[g.indices[keep]])),
        shape=(unknowns.size, unknowns.size),
    )
    return (sp.diags(deg[unknowns].astype(float)) + off).tocsr()


def direct_solve(matrix: sp.spmatrix, rhs: np.ndarray) -> np.ndarray:
    try:
        lu = spla.splu(matrix.tocsc())
    except RuntimeError as exc:  # singular factor
        raise SolveFailure(str(exc)) from exc
    x = lu.solve(np.asarray(rhs, dtype=float))
    if not np.all(np.isfinite(x)):
        raise SolveFailure("non-finite solution")
    return x


def gauss_seidel(
    matrix: sp.csr_matrix,
    rhs: np.ndarray,
    tolerance: float = DEFAULT_TOLERANCE,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> np.ndarray:
    """Forward Gauss-Seidel sweeps on a CSR system, one column at a time.

    Stops when the max-norm residual falls below ``tolerance * max(1, |x|_inf)``.
    """
    rhs = np.asarray(rhs, dtype=float)
    squeeze = rhs.ndim == 1
    cols = rhs.reshape(rhs.shape[0], -1)
    indptr = matrix.indptr.tolist()
    indices = matrix.indices.tolist()
    data = matrix.data.tolist()
    diag = matrix.diagonal().tolist()
    m = len(diag)
    out = np.empty_like(cols)
    for c in range(cols.shape[1]):
        b = cols[:, c].tolist()
        x = [0.0] * m
        for _ in range(max_sweeps):
            for i in range(m):
                s = b[i]
                for p in range(indptr[i], indptr[i + 1]):
                    j = indices[p]
                    if j != i:
                        s -= data[p] * x[j]
                x[i] = s / diag[i]
            xa = np.asarray(x)
            resid = np.abs(matrix @ xa - cols[:, c]).max(initial=0.0)
            if resid < tolerance * max(1.0, np.abs(xa).max(initial=0.0)):
                break
        else:
            raise SolveFailure(f"Gauss-Seidel did not converge in {max_sweeps} sweeps")
        out[:, c] = x
    return out[:, 0] if squeeze else out
