"""Exact Gaussian elimination over GF(q).

Matrices are numpy integer arrays holding element encodings (see
:mod:`grminfo.field`).  For prime q the elimination is blocked: pivots are
found on a narrow column panel with plain row operations, and the trailing
update is one floating-point matrix product reduced mod p.  Entries stay below p
and panel widths are small, so every intermediate is an exactly
representable integer.  Prime-power q uses the field's lookup tables.

:func:`rank_reference` is a deliberately plain, unblocked elimination on
Python integers, kept separate from the fast path so it can serve as an
independent second opinion.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .field import GF

PANEL = 128


def _as_field(field: int | GF):
    if isinstance(field, (int, np.integer)):
        from .numtheory import is_prime

        if not is_prime(int(field)):
            raise ValueError(f"pass a GF instance for non-prime order {field}")
        return int(field), None
    if field.s == 1:
        return field.p, None
    return field.q, field


def _fmod(x: np.ndarray, p: int) -> None:
    # the half offset keeps (x + 0.5) / p clear of integers, so floor is exact
    # for |x| far below 2**52
    x -= p * np.floor((x + 0.5) * (1.0 / p))


def _panel_pivots(panel: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Pivot rows (indices into ``panel``) and pivot columns of a narrow block."""
    h, width = panel.shape
    head = 4 * width
    if h > head:
        # a short prefix that already has full column rank fixes every pivot column
        prow, pcol = _panel_scan(panel[:head], p)
        if len(pcol) == width:
            return prow, pcol
    return _panel_scan(panel, p)


def _panel_scan(panel: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    w = panel.copy()
    rows = np.arange(w.shape[0])
    prow: list[int] = []
    pcol: list[int] = []
    r = 0
    for c in range(w.shape[1]):
        if r == w.shape[0]:
            break
        nz = np.flatnonzero(w[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            w[[r, i]] = w[[i, r]]
            rows[[r, i]] = rows[[i, r]]
        w[r] = w[r] * pow(int(w[r, c]), -1, p) % p
        below = r + 1 + np.flatnonzero(w[r + 1:, c])
        if below.size:
            w[below] = (w[below] - np.outer(w[below, c], w[r])) % p
        prow.append(int(rows[r]))
        pcol.append(c)
        r += 1
    return prow, pcol


def inverse(A: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over the prime field GF(p)."""
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    if n <= 32:
        R, piv = _rref_small(aug, p, ncols=n)
    else:
        Rf = aug.astype(np.float64)
        piv, _ = _echelon_prime(Rf, p, reduced=True, width=16)
        _fmod(Rf, p)
        R = Rf.astype(np.int64)
        piv = [c for c in piv if c < n]
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def _rref_small(A: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    R = A.copy() % p
    m, n = R.shape
    ncols = n if ncols is None else ncols
    piv: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, c], R[r])) % p
        piv.append(c)
        r += 1
    return R, piv


def _echelon_prime(R: np.ndarray, p: int, reduced: bool, width: int) -> tuple[list[int], np.ndarray]:
    """Blocked elimination of the float array ``R`` in place.

    Returns the pivot columns and the row order: ``order[i]`` is the input
    row now sitting at position i.  The first ``len(pivots)`` input rows in
    that order span the row space.  Trailing blocks are left unreduced
    (each panel adds at most k (p-1)^2 per entry); callers reduce mod p.
    """
    m, n = R.shape
    if n * p * p >= _exact_limit(R.dtype):
        raise ValueError(f"matrix too wide for exact {R.dtype} accumulation")
    order = np.arange(m)
    pivots: list[int] = []
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + width, n)
        panel = R[r:, c0:c1].copy()
        _fmod(panel, p)
        if width <= 16:
            prow, pcol = _panel_pivots(panel.astype(np.int64), p)
        else:
            pcol, sub_order = _echelon_prime(panel, p, reduced=False, width=width // 8)
            prow = [int(i) for i in sub_order[: len(pcol)]]
        if not prow:
            c0 = c1
            continue
        k = len(prow)
        # move the pivot rows to the top; displaced rows take their slots
        chosen = set(prow)
        vacated = [i for i in prow if i >= k]
        displaced = [i for i in range(k) if i not in chosen]
        dst = np.array(list(range(k)) + vacated) + r
        src = np.array(prow + displaced) + r
        R[dst] = R[src]
        order[dst] = order[src]
        cols = [c0 + c for c in pcol]
        top = R[r:r + k, c0:].copy()
        _fmod(top, p)
        Sinv = inverse(top[:, pcol].astype(np.int64), p).astype(R.dtype)
        top = Sinv @ top
        _fmod(top, p)
        R[r:r + k, c0:] = top
        lo = 0 if reduced else r + k
        X = R[lo:, cols].copy()
        _fmod(X, p)
        if reduced:
            X[r:r + k] = 0
        live = np.flatnonzero(X.any(axis=1))
        if 2 * live.size > X.shape[0]:
            R[lo:, c0:] -= X @ top
        elif live.size:
            # sparse update: only rows with a nonzero entry under the pivots change
            R[lo + live, c0:] -= X[live] @ top
        pivots += cols
        r += k
        c0 = c1
    return pivots, order


def _exact_limit(dtype) -> int:
    # entries never exceed n (p-1)^2 + p in magnitude; _fmod needs that far
    # below 2**(mantissa bits - 1)
    return 2**22 if dtype == np.float32 else 2**50


def _rref_prime(A: np.ndarray, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    A = np.asarray(A, dtype=np.int64) % p
    # single precision halves the product cost whenever it is still exact
    dtype = np.float32 if A.shape[1] * p * p < _exact_limit(np.float32) else np.float64
    R = A.astype(dtype)
    pivots, _ = _echelon_prime(R, p, reduced, PANEL)
    _fmod(R, p)
    return R.astype(np.int64), pivots


def _rref_tables(A: np.ndarray, F: GF, reduced: bool) -> tuple[np.ndarray, list[int]]:
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    R = np.asarray(A, dtype=np.int64).copy()
    m, n = R.shape
    piv: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = mul[inv[R[r, c]], R[r]]
        others = np.flatnonzero(R[:, c])
        others = others[others > r] if not reduced else others[others != r]
        if others.size:
            f = neg[R[others, c]]
            R[others] = add[R[others], mul[f[:, None], R[r][None, :]]]
        piv.append(c)
        r += 1
    return R, piv


def rref(A, field: int | GF) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of ``A`` over GF(q)."""
    q, F = _as_field(field)
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    if A.size == 0:
        return A.copy(), []
    if F is None:
        return _rref_prime(A, q, reduced=True)
    return _rref_tables(A, F, reduced=True)


def rank(A, field: int | GF) -> int:
    q, F = _as_field(field)
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    if A.size == 0:
        return 0
    if F is None:
        return len(_rref_prime(A, q, reduced=False)[1])
    return len(_rref_tables(A, F, reduced=False)[1])


def kernel(A, field: int | GF) -> np.ndarray:
    """Basis (as rows) of the right null space {x : A x = 0}."""
    return kernel_basis(A, field)[0]


def kernel_basis(A, field: int | GF) -> tuple[np.ndarray, list[int]]:
    """Null-space basis K with the free columns: ``K[:, free]`` is the identity."""
    q, F = _as_field(field)
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    n = A.shape[1]
    R, piv = rref(A, field)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    K[np.arange(len(free)), free] = 1
    if piv and free:
        block = R[: len(piv)][:, free].T
        K[:, piv] = (-block) % q if F is None else F.neg_table[block]
    return K, free


def rank_reference(A, field: int | GF) -> int:
    """Rank by textbook elimination on Python ints; slow, independent of :func:`rank`."""
    q, F = _as_field(field)
    rows = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(A))]
    if F is None:
        add = lambda a, b: (a + b) % q  # noqa: E731
        mul = lambda a, b: a * b % q  # noqa: E731
        neg = lambda a: -a % q  # noqa: E731
        inv = lambda a: pow(a, -1, q)  # noqa: E731
    else:
        add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        s = inv(rows[r][c])
        rows[r] = [mul(s, x) for x in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                nf = neg(f)
                rows[i] = [add(x, mul(nf, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
