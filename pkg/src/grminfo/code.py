"""Affine-invariant codes realized from their defining sets, and the rank oracle.

A codeword is a length-q^m vector over GF(q) in the position order
(0, alpha^0, alpha^1, ..., alpha^(n-1)).  The code with defining set D is
the common kernel of the GF(q^m)-valued maps phi_s, s in D, each expanded
into m GF(q)-linear parity rows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cosets import DefiningSetZ, grm_defining_set
from .field import GF, ExtField, ext_field
from .linalg import kernel_basis, rank, rank_reference

DEFAULT_MAX_VERIFY = 3200
MAX_VERIFY_ENV = "GRMINFO_MAX_VERIFY"


class TooLarge(ValueError):
    pass


class RankAnomaly(AssertionError):
    pass


def max_verify_size() -> int:
    """Largest q^m the oracle will build; raised via $GRMINFO_MAX_VERIFY."""
    return int(os.environ.get(MAX_VERIFY_ENV, DEFAULT_MAX_VERIFY))


def code_dimension(q: int, m: int, D: DefiningSetZ) -> int:
    return q**m - len(D)


@dataclass(frozen=True)
class PhiEvaluator:
    ext: ExtField
    s: int

    def __call__(self, c: Sequence[int]) -> int:
        """phi_s(c) as a top-field encoding, with 0^0 = 1."""
        ext, top = self.ext, self.ext.top
        c = np.asarray(c, dtype=np.int64)
        if c.shape != (ext.n + 1,):
            raise ValueError(f"expected a length-{ext.n + 1} vector")
        coef = ext.embed[c]
        points = np.empty(ext.n + 1, dtype=np.int64)
        points[0] = 1 if self.s == 0 else 0
        points[1:] = top.exp[(np.arange(ext.n) * self.s) % ext.n]
        terms = top.mul_vec(coef, points)
        digits = top.digits[terms].sum(axis=0) % top.p
        return int((digits * top.p ** np.arange(top.s)).sum())


def phi_check(c: Sequence[int], s: int, ext: ExtField) -> int:
    return PhiEvaluator(ext, s)(c)


@dataclass(frozen=True)
class GeneratorMatrix:
    q: int
    m: int
    rows: np.ndarray
    field: GF
    unit_cols: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.unit_cols is not None:
            block = self.rows[:, list(self.unit_cols)]
            if len(self.unit_cols) != self.k or not np.array_equal(block, np.eye(self.k, dtype=block.dtype)):
                raise ValueError("unit_cols does not index an identity block")

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def length(self) -> int:
        return self.rows.shape[1]

    def linalg_field(self):
        return self.field.p if self.field.s == 1 else self.field


def parity_rows(ext: ExtField, D: DefiningSetZ) -> np.ndarray:
    """The expanded parity system over GF(q): m rows per coset representative of D."""
    n = ext.n
    blocks = []
    for coset in D.cosets():
        s = coset[0]
        row = np.empty(n + 1, dtype=np.int64)
        row[0] = 1 if s == 0 else 0
        row[1:] = ext.top.exp[(np.arange(n) * s) % n]
        blocks.append(ext.expansion[row].T)  # (m, q^m)
    if not blocks:
        return np.zeros((0, n + 1), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def build_generator_matrix(
    q: int, m: int, D: DefiningSetZ, max_size: int | None = None, moduli: tuple = ()
) -> GeneratorMatrix:
    """Generator matrix of the affine-invariant code with defining set D."""
    limit = max_verify_size() if max_size is None else max_size
    if q**m > limit:
        raise TooLarge(f"q^m = {q**m} exceeds the verification bound {limit}")
    if D.n != q**m - 1 or D.q != q:
        raise ValueError("defining set does not match (q, m)")
    ext = ext_field(q, m, moduli)
    H = parity_rows(ext, D)
    lf = ext.base.p if ext.base.s == 1 else ext.base
    if H.shape[0]:
        G, free = kernel_basis(H, lf)
    else:
        G, free = np.eye(q**m, dtype=np.int64), list(range(q**m))
    expected = code_dimension(q, m, D)
    if G.shape[0] != expected:
        raise RankAnomaly(f"kernel has dimension {G.shape[0]}, expected q^m - |D| = {expected}")
    return GeneratorMatrix(q, m, G, ext.base, tuple(free))


@lru_cache(maxsize=16)
def grm_generator(q: int, m: int, rho: int, moduli: tuple = (), max_size: int | None = None) -> GeneratorMatrix:
    """Cached generator matrix of R_q(rho, m)."""
    return build_generator_matrix(q, m, grm_defining_set(q, m, rho), max_size=max_size, moduli=moduli)


@dataclass(frozen=True)
class InfoSetCertificate:
    ok: bool
    k: int
    size: int
    rank: int
    method: str

    def __bool__(self):
        return self.ok


def is_information_set(G: GeneratorMatrix, positions: Sequence[int], reference: bool = False) -> InfoSetCertificate:
    """Whether the columns of G at ``positions`` have full rank k, with the rank found.

    ``positions`` is taken as a sequence, so a repeated position contributes a
    repeated column.  ``reference=True`` runs the plain elimination on the
    whole submatrix.  Otherwise, when G carries an identity block, each
    selected unit column clears its row and only the remaining block is
    eliminated: rank = #distinct unit columns + rank(leftover rows x other columns).
    """
    pos = [int(p) for p in positions]
    if any(not 0 <= p < G.length for p in pos):
        raise ValueError("position out of range")
    lf = G.linalg_field()
    if reference:
        r, method = rank_reference(G.rows[:, pos], lf), "reference"
    elif G.unit_cols is not None:
        row_of = {c: i for i, c in enumerate(G.unit_cols)}
        hit: set[int] = set()
        rest = []
        for p in pos:
            if p in row_of and row_of[p] not in hit:
                hit.add(row_of[p])
            else:
                rest.append(p)
        left = [i for i in range(G.k) if i not in hit]
        r = len(hit) + (rank(G.rows[np.ix_(left, rest)], lf) if left and rest else 0)
        method = "systematic"
    else:
        r, method = rank(G.rows[:, pos], lf), "blocked"
    return InfoSetCertificate(ok=len(pos) == G.k and r == G.k, k=G.k, size=len(pos), rank=r, method=method)
