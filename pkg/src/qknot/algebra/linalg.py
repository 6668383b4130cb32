"""Fraction-free linear algebra over polynomial rings.

Matrices are lists of rows of FLINT multivariate polynomials (any ring with
exact ``/`` works). Elimination is Bareiss style so every division is exact;
rank questions are settled first modulo a prime at a random point.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

import flint

PRIME = (1 << 61) - 1


def _exact(a, b):
    return a / b


def bareiss(A: List[list], ncols: Optional[int] = None):
    """In-place fraction-free echelon form.

    Returns ``(pivot_cols, last_pivot)``; rows are permuted in place so that
    row ``i`` carries pivot ``i``. Only the first ``ncols`` columns are used as
    pivot candidates.
    """
    nrows = len(A)
    if not nrows:
        return [], None
    width = len(A[0])
    ncols = width if ncols is None else ncols
    prev = None
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            row = A[i]
            for k in range(c, width):
                v = piv * row[k] - a * A[r][k]
                if prev is not None and not v.is_zero():
                    v = _exact(v, prev)
                row[k] = v
        # the entries left of c in rows below are zero already
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, prev


def nullspace(A: List[list], zero) -> List[list]:
    """Basis of the right kernel of ``A`` with polynomial entries.

    Each vector is scaled to have polynomial entries; the caller can strip
    content afterwards.
    """
    if not A:
        return []
    width = len(A[0])
    M = [list(row) for row in A]
    pivots, det = bareiss(M)
    rank = len(pivots)
    free = [c for c in range(width) if c not in pivots]
    out = []
    for f in free:
        y = [zero] * width
        y[f] = det if det is not None else zero + 1
        y[f] = -y[f]
        # back substitution y_i = (-sum_k U_ik y_k) / U_ii from the bottom row
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            s = zero
            for k in range(c + 1, width):
                if not y[k].is_zero() and not M[i][k].is_zero():
                    s = s + M[i][k] * y[k]
            y[c] = _exact(-s, M[i][c]) if not s.is_zero() else zero
        out.append(y)
    return out


def check_kernel(A: Sequence[Sequence], y: Sequence) -> bool:
    for row in A:
        s = None
        for a, b in zip(row, y):
            if a.is_zero() or b.is_zero():
                continue
            s = a * b if s is None else s + a * b
        if s is not None and not s.is_zero():
            return False
    return True


# modular rank


def _mod_ctx(ctx, p: int):
    return flint.nmod_mpoly_ctx.get(ctx.names(), modulus=p, ordering="lex")


def eval_mod(f, point: Sequence[int], p: int) -> int:
    """Value of an integer polynomial at ``point`` modulo ``p``."""
    if f.is_zero():
        return 0
    g = _mod_ctx(f.context(), p).from_dict(f.to_dict())
    return int(g(*point))


def modular_rank(A: Sequence[Sequence], point: Sequence[int], p: int = PRIME,
                 ncols: Optional[int] = None) -> Tuple[int, List[int]]:
    """Rank of ``A`` at ``point`` modulo ``p`` and a list of independent rows.

    The rows returned are independent on the first ``ncols`` columns.
    """
    if not A:
        return 0, []
    width = len(A[0]) if ncols is None else ncols
    vals = [[eval_mod(A[i][j], point, p) for j in range(width)] for i in range(len(A))]
    rows = list(range(len(A)))
    chosen: List[int] = []
    basis: List[Tuple[int, List[int]]] = []  # (pivot col, reduced row)
    for i in rows:
        v = vals[i][:]
        for c, b in basis:
            if v[c]:
                f = v[c] * pow(b[c], -1, p) % p
                v = [(x - f * y) % p for x, y in zip(v, b)]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is not None:
            basis.append((c, v))
            chosen.append(i)
    return len(chosen), chosen


def random_point(nvars: int, rng: Optional[random.Random] = None, p: int = PRIME) -> List[int]:
    rng = rng or random.Random(0)
    return [rng.randrange(2, p - 1) for _ in range(nvars)]
