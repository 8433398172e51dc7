"""
Path expansion of minors: determinants, singularity, and inhomogeneity.

A path of a p x p minor picks one entry per column, all rows distinct; a
nonzero path avoids forced zeros.  The determinant is the signed sum over
nonzero paths, and distinct nonzero paths never share a variable set, so no
cancellation can occur (asserted during assembly).

All structural tests below work from the pivot pattern alone: an entry in
bottom-indexed row i, column j is nonzero exactly when it is not above the 1
of column j and not right of the 1 of row i.  Row indices fed to these tests
are bottom-indexed, so the 1 of column j sits in row n - v(j) + 1.

A recurring move ("peel"): a nonzero path through a variable that sits below
an in-minor 1 must pick a variable from the 1's row strictly to the left, so
that row and the chosen column can be removed and the search recurses on the
smaller minor.  Where the column-by-column feasibility conditions leave the
treatment of the target column itself ambiguous, the reading implemented here
simply skips that column (its pick is pinned to the target cell); the
enumeration oracle in tests pins this reading down.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .minors import MinorSpec
from .permutations import Permutation
from .polynomials import Monomial, Polynomial
from .zmatrix import Cell, ZMatrix


@lru_cache(maxsize=None)
def _pivots(v: Permutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(pivot row of each column, pivot column of each row), 1-based maps."""
    n = v.n
    prow = [0] * (n + 1)
    pcol = [0] * (n + 1)
    for j in range(1, n + 1):
        i = n - v(j) + 1
        prow[j] = i
        pcol[i] = j
    return tuple(prow), tuple(pcol)


def _nonzero(prow, pcol, i: int, j: int) -> bool:
    return i <= prow[j] and j <= pcol[i]


def _is_one(prow, i: int, j: int) -> bool:
    return prow[j] == i


Path = tuple[Cell, ...]


def enumerate_nonzero_paths(m: MinorSpec, z: ZMatrix) -> list[Path]:
    """All nonzero paths, columns left-to-right, rows tried in ascending order."""
    prow, pcol = _pivots(z.v)
    cols = m.cols
    rows = m.rows
    out: list[Path] = []
    picks: list[int] = []

    def rec(k: int) -> None:
        if k == len(cols):
            out.append(tuple(Cell(i, j) for i, j in zip(picks, cols)))
            return
        j = cols[k]
        for i in rows:
            if i not in picks and _nonzero(prow, pcol, i, j):
                picks.append(i)
                rec(k + 1)
                picks.pop()

    rec(0)
    return out


def path_sign(m: MinorSpec, path: Path) -> int:
    """Parity of the picked row order against the sorted row list."""
    order = [m.rows.index(cell.row) for cell in path]
    inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                     if order[a] > order[b])
    return -1 if inversions % 2 else 1


def path_monomial(m: MinorSpec, z: ZMatrix, path: Path) -> Monomial:
    """Signed product of the path's variable cells (1 picks drop out)."""
    vars_ = frozenset(c for c in path if z.entry(c).is_variable)
    return Monomial(path_sign(m, path), vars_)


def determinant(m: MinorSpec, z: ZMatrix) -> Polynomial:
    """Signed sum over nonzero paths; equals the cofactor-expansion oracle.

    The sign convention is det of the matrix whose rows are listed in
    ascending bottom index.
    """
    paths = enumerate_nonzero_paths(m, z)
    terms = {}
    for path in paths:
        mono = path_monomial(m, z, path)
        key = mono.as_mono()
        # distinct nonzero paths always carry distinct variable sets
        assert key not in terms, f"cancelling paths in {m}: {path}"
        terms[key] = mono.sign
    return Polynomial(terms)


def has_zero_row_or_col(m: MinorSpec, v: Permutation) -> bool:
    """Some row or column of the minor consists entirely of forced zeros.

    A column dies when its 1 sits below every selected row, or when the 1 is
    outside the selected rows and each selected row below it has its own 1
    strictly to the left.  Rows are the mirror image.
    """
    prow, pcol = _pivots(v)
    rows, cols = m.rows, m.cols
    for j in cols:
        pj = prow[j]
        if pj < rows[0]:
            return True
        if pj in rows:
            continue
        if all(pcol[i] < j for i in rows if i < pj):
            return True
    for i in rows:
        pi = pcol[i]
        if pi < cols[0]:
            return True
        if pi in cols:
            continue
        if all(prow[j] < i for j in cols if j < pi):
            return True
    return False


def _complete(prow, pcol, rows: tuple[int, ...], cols: Iterable[int],
              used: set[int]) -> bool:
    """Can the remaining columns pick nonzero entries in distinct unused rows?"""
    cols = list(cols)

    def rec(k: int) -> bool:
        if k == len(cols):
            return True
        j = cols[k]
        for i in rows:
            if i not in used and _nonzero(prow, pcol, i, j):
                used.add(i)
                if rec(k + 1):
                    used.remove(i)
                    return True
                used.remove(i)
        return False

    return rec(0)


def delta_conditions_hold(m: MinorSpec, v: Permutation, alpha1: int) -> bool:
    """Starting from the given nonzero pick in the first column, every later
    column still offers a nonzero entry in a fresh row (checked by search, so
    earlier picks can be revised)."""
    if has_zero_row_or_col(m, v):
        raise ValueError("minor has a zero row or column; feasibility scan does not apply")
    prow, pcol = _pivots(v)
    if alpha1 not in m.rows or not _nonzero(prow, pcol, alpha1, m.cols[0]):
        raise ValueError(f"row {alpha1} is not a nonzero entry of column {m.cols[0]}")
    return _complete(prow, pcol, m.rows, m.cols[1:], {alpha1})


def is_singular(m: MinorSpec, z: ZMatrix) -> bool:
    """True iff the minor has no nonzero path (equivalently, determinant 0)."""
    prow, pcol = _pivots(z.v)
    if m.p == 1:
        return not _nonzero(prow, pcol, m.rows[0], m.cols[0])
    if has_zero_row_or_col(m, z.v):
        return True
    j1 = m.cols[0]
    return not any(
        delta_conditions_hold(m, z.v, i)
        for i in m.rows if _nonzero(prow, pcol, i, j1)
    )


def exists_nonzero_path_through(m: MinorSpec, v: Permutation, cell: Cell) -> bool:
    """True iff some nonzero path of the minor picks the given variable cell."""
    prow, pcol = _pivots(v)
    if cell.row not in m.rows or cell.col not in m.cols:
        raise ValueError(f"{cell} is not a cell of {m}")
    if not _nonzero(prow, pcol, cell.row, cell.col) or _is_one(prow, cell.row, cell.col):
        raise ValueError(f"{cell} is not a variable entry")

    def rec(rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
        pj = prow[cell.col]
        if pj in rows:
            # peel: the path must take a variable from the 1's row, left of the cell
            for jp in cols:
                if jp >= cell.col:
                    break
                if _nonzero(prow, pcol, pj, jp):
                    if rec(tuple(r for r in rows if r != pj),
                           tuple(c for c in cols if c != jp)):
                        return True
            return False
        other = [j for j in cols if j != cell.col]
        return _complete(prow, pcol, rows, other, {cell.row})

    return rec(m.rows, m.cols)


def is_unit_determinant(m: MinorSpec, v: Permutation) -> bool:
    """True iff the determinant is exactly +1 or -1.

    That happens precisely when every column's 1 falls inside the minor: the
    all-ones path then exists and forces out every other path.
    """
    prow, _ = _pivots(v)
    return all(prow[j] in m.rows for j in m.cols)


def is_inhomogeneous_det(m: MinorSpec, v: Permutation) -> bool:
    """True iff the determinant mixes degrees.

    This happens exactly when some column carries its 1 inside the minor with
    a variable below it that a nonzero path can reach: swapping that path's
    two crossing picks for the 1 and the complementary variable drops the
    degree by one, and no cancellation can hide either term.
    """
    if m.p == 1:
        return False
    prow, pcol = _pivots(v)
    for j in m.cols:
        pj = prow[j]
        if pj not in m.rows:
            continue
        for i in m.rows:
            if i >= pj:
                break
            if _nonzero(prow, pcol, i, j) and exists_nonzero_path_through(m, v, Cell(i, j)):
                return True
    return False


def homogeneous_components(f: Polynomial) -> list[Polynomial]:
    """Degree slices, highest degree first; their sum reproduces f."""
    if f.is_zero:
        raise ValueError("zero polynomial has no homogeneous components")
    return [f.degree_slice(d) for d in sorted(f.degrees(), reverse=True)]
