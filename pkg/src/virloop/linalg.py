"""Exact dense and sparse linear algebra over the Gaussian rationals.

Two flavours are used throughout the package:

* dense matrices as lists of lists, for Gram matrices and their kernels;
* sparse vectors as dicts keyed by arbitrary orderable coordinates, for
  span closures (ideal generation, submodule search, generation checks).

Everything is plain Gaussian elimination with exact division in Q(i).
Pivots are always chosen leftmost in the declared coordinate order, which
makes every echelon basis deterministic and regression-friendly.
"""

from __future__ import annotations

from .scalars import GaussianRational, ONE, ZERO, scalar

Matrix = list[list[GaussianRational]]
SparseVec = dict


def rref(matrix: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1]) if matrix else 0


def nullspace(matrix: Matrix) -> list[list[GaussianRational]]:
    """Basis of {x : A x = 0}, echelonized with one vector per free column.

    The vector for free column f has entry 1 at f and 0 at every other
    free column, so the output is canonical given the column order.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][f]
        basis.append(vec)
    return basis


def solve(matrix: Matrix, target: list[GaussianRational]):
    """One exact solution of A x = target, or None if the system is inconsistent."""
    if not matrix:
        return None
    ncols = len(matrix[0])
    aug = [list(row) + [t] for row, t in zip(matrix, target)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x


class SpanBasis:
    """Incrementally maintained reduced echelon basis of sparse vectors.

    Vectors are dicts mapping orderable coordinate keys to nonzero scalars.
    The pivot of each stored vector is its smallest coordinate; stored
    vectors are fully reduced against each other and pivot-normalized, so
    the basis is canonical for the span regardless of insertion order.
    """

    def __init__(self, key=None):
        self._key = key
        self._rows: dict[object, SparseVec] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Remainder of vec after eliminating every stored pivot."""
        out = {k: v for k, v in vec.items() if v}
        while True:
            hit = None
            for coord in out:
                if coord in self._rows:
                    hit = coord
                    break
            if hit is None:
                return out
            factor = out[hit]
            for c, v in self._rows[hit].items():
                acc = out.get(c, ZERO) - factor * v
                if acc:
                    out[c] = acc
                else:
                    out.pop(c, None)

    def add(self, vec: SparseVec) -> bool:
        """Insert vec's residue; returns True when the span grew."""
        rem = self.reduce(vec)
        if not rem:
            return False
        pivot = min(rem, key=self._key) if self._key else min(rem)
        inv = ONE / rem[pivot]
        row = {c: v * inv for c, v in rem.items()}
        for other in self._rows.values():
            if pivot in other:
                f = other[pivot]
                for c, v in row.items():
                    acc = other.get(c, ZERO) - f * v
                    if acc:
                        other[c] = acc
                    else:
                        other.pop(c, None)
        self._rows[pivot] = row
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> set:
        return set(self._rows)

    def vectors(self) -> list[SparseVec]:
        """Echelon basis sorted by pivot coordinate."""
        keys = sorted(self._rows, key=self._key) if self._key else sorted(self._rows)
        return [dict(self._rows[k]) for k in keys]

    def support(self) -> set:
        out = set()
        for row in self._rows.values():
            out.update(row)
        return out


def vec_add_scaled(acc: SparseVec, vec: SparseVec, factor: GaussianRational) -> None:
    """acc += factor * vec, dropping entries that cancel to zero."""
    if not factor:
        return
    for c, v in vec.items():
        s = acc.get(c, ZERO) + factor * v
        if s:
            acc[c] = s
        else:
            acc.pop(c, None)


def parse_matrix(rows: list[list]) -> Matrix:
    return [[scalar(x) for x in row] for row in rows]
