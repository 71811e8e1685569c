"""Check positions and information sets for first- and second-order GRM codes.

The general engine works from the punctured defining set of the dual code
viewed two-dimensionally through a CRT isomorphism T; the closed forms give
the same grids directly from (q, m, a).  Both produce a :class:`GammaSet` of
cells in Z_r1 x Z_r2, and :func:`to_information_sets` pulls it back through T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cosets import (
    CrtIso,
    DefiningSetZ,
    RepSystem,
    cyclotomic_coset,
    grm_defining_set,
    suitable_representatives,
)
from .numtheory import multiplicative_order, unitary_divisors


class NonIntegralM(ArithmeticError):
    pass


class SizeMismatch(AssertionError):
    pass


class BadDecomposition(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class DimensionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class GammaSet:
    r1: int
    r2: int
    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        bad = [c for c in self.cells if not (0 <= c[0] < self.r1 and 0 <= c[1] < self.r2)]
        if bad:
            raise BadDecomposition(f"cells {sorted(bad)[:3]} fall outside Z_{self.r1} x Z_{self.r2}")

    @classmethod
    def from_boxes(cls, r1: int, r2: int, boxes) -> GammaSet:
        """Union of half-open boxes ``((lo1, hi1), (lo2, hi2))``."""
        cells = frozenset(
            (i1, i2) for (lo1, hi1), (lo2, hi2) in boxes for i1 in range(lo1, hi1) for i2 in range(lo2, hi2)
        )
        return cls(r1, r2, cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __contains__(self, cell):
        return tuple(cell) in self.cells

    def pullback(self, T: CrtIso) -> list[int]:
        """Sorted exponents T^-1(cells)."""
        if (T.r1, T.r2) != (self.r1, self.r2):
            raise BadDecomposition("isomorphism and grid disagree on (r1, r2)")
        return sorted(T.inverse(c) for c in self.cells)


@dataclass(frozen=True)
class MfgProfile:
    M: dict[int, int]
    f: tuple[int, ...]
    g: tuple[int, ...]
    r1_sizes: dict[int, int]

    @property
    def s(self) -> int:
        return len(self.f)


@dataclass(frozen=True)
class Decomposition:
    q: int
    m: int
    r1: int
    r2: int
    a: int

    @property
    def n(self) -> int:
        return self.r1 * self.r2

    @property
    def b(self) -> int:
        return self.m // self.a

    @property
    def second_order_valid(self) -> bool:
        return self.r1 == self.q**self.a - 1


@dataclass(frozen=True)
class InformationSetSpec:
    code: tuple[int, int, int]
    positions: tuple[int, ...]
    role: str

    @property
    def exponents(self) -> list[int]:
        """alpha-exponents of the nonzero-field-element positions."""
        return [p - 1 for p in self.positions if p > 0]


def gamma_general(Dstar: DefiningSetZ, T: CrtIso, reps: RepSystem | None = None) -> tuple[MfgProfile, GammaSet]:
    """Check positions of the two-dimensional image of a cyclic code with defining set ``Dstar``."""
    if not len(Dstar):
        raise ValueError("empty defining set")
    if gcd(T.r1, Dstar.q) != 1 or gcd(T.r2, Dstar.q) != 1:
        raise BadDecomposition("q must be a unit modulo r1 and r2")
    rs = reps or suitable_representatives(Dstar, T)
    n, q = Dstar.n, Dstar.q
    M: dict[int, int] = {}
    sizes: dict[int, int] = {}
    for u in rs.U:
        size_r1 = len(cyclotomic_coset(u % T.r1, T.r1, q))
        total = sum(len(cyclotomic_coset(v, n, q)) for v in rs.orbits[u])
        value = Fraction(total, size_r1)
        if value.denominator != 1:
            raise NonIntegralM(f"M({u}) = {value} is not an integer")
        M[u] = int(value)
        sizes[u] = size_r1
    f = tuple(sorted(set(M.values()), reverse=True))
    g = tuple(sum(sizes[u] for u in rs.U if M[u] >= fk) for fk in f)
    bands = f + (0,)
    boxes = [((0, g[j]), (bands[j + 1], bands[j])) for j in range(len(f))]
    gamma = GammaSet.from_boxes(T.r1, T.r2, boxes)
    if len(gamma) != len(Dstar):
        raise SizeMismatch(f"|Gamma| = {len(gamma)} but |D*| = {len(Dstar)}")
    return MfgProfile(M=M, f=f, g=g, r1_sizes=sizes), gamma


def _check_split(q: int, m: int, r1: int, r2: int) -> int:
    n = q**m - 1
    if r1 * r2 != n or r1 <= 1 or r2 <= 1 or gcd(r1, r2) != 1:
        raise BadDecomposition(f"({r1}, {r2}) is not a coprime split of {n} with both factors > 1")
    a = multiplicative_order(q, r1)
    if m % a:
        raise BadDecomposition(f"Ord_{r1}({q}) = {a} does not divide m = {m}")  # pragma: no cover
    return a


def gamma_first_order(q: int, m: int, r1: int, r2: int) -> GammaSet:
    """Check positions [0, a) x [0, m/a) for the dual of R_q(1, m)."""
    a = _check_split(q, m, r1, r2)
    return GammaSet.from_boxes(r1, r2, [((0, a), (0, m // a))])


def second_order_boxes(a: int, b: int):
    t0, t1, t2 = a * (a - 1) // 2, a * (a + 1) // 2, a * (a + 3) // 2
    return [((0, t0), (0, b * b)), ((t0, t1), (0, b * (b + 1) // 2)), ((t1, t2), (0, b))]


def gamma_second_order(q: int, m: int, a: int, r1: int | None = None) -> GammaSet:
    """Check positions gamma1 | gamma2 | gamma3 for the dual of R_q(2, m), r1 = q^a - 1."""
    if q == 2:
        raise NotApplicable("the second-order construction needs q > 2")
    if a < 1 or m % a:
        raise BadDecomposition(f"a = {a} must divide m = {m}")
    if r1 is not None and r1 != q**a - 1:
        raise NotApplicable(f"r1 = {r1} is not of the form q^a - 1")
    r1 = q**a - 1
    n = q**m - 1
    r2 = n // r1
    _check_split(q, m, r1, r2)
    b = m // a
    gamma = GammaSet.from_boxes(r1, r2, second_order_boxes(a, b))
    expected = 2 * m + m * (m - 1) // 2
    if len(gamma) != expected:  # pragma: no cover - an algebraic identity
        raise SizeMismatch(f"|Gamma| = {len(gamma)} != {expected}")
    return gamma


def gamma_closed_form(d: Decomposition, order: int) -> GammaSet:
    if order == 1:
        return gamma_first_order(d.q, d.m, d.r1, d.r2)
    if order == 2:
        if not d.second_order_valid:
            raise NotApplicable(f"r1 = {d.r1} is not of the form q^a - 1")
        return gamma_second_order(d.q, d.m, d.a)
    raise ValueError(f"order must be 1 or 2, not {order}")


def dual_order(q: int, m: int, rho: int) -> int:
    return m * (q - 1) - rho - 1


def count_low_weight(q: int, m: int, bound: int) -> int:
    """Number of m-digit base-q integers of q-weight < bound."""
    ways = [1] + [0] * max(bound - 1, 0)
    if bound <= 0:
        return 0
    for _ in range(m):
        nxt = [0] * bound
        for w, c in enumerate(ways):
            if c:
                for d in range(min(q - 1, bound - 1 - w) + 1):
                    nxt[w + d] += c
        ways = nxt
    return sum(ways)


def grm_dimension(q: int, m: int, rho: int) -> int:
    """q^m - |D(R_q(rho, m))|, counting the defining set without listing it."""
    if not 0 < rho <= m * (q - 1):
        raise ValueError(f"order {rho} outside (0, {m * (q - 1)}]")
    # i = q^m - 1 has full weight and is never below the bound
    return q**m - count_low_weight(q, m, m * (q - 1) - rho)


def to_information_sets(
    gamma: GammaSet, T: CrtIso, q: int, m: int, rho: int
) -> tuple[InformationSetSpec, InformationSetSpec]:
    """Information sets for R_q(rho, m) and its dual from check positions of the dual's punctured code.

    Positions use the canonical order: 0 is the field element 0, 1 + e is alpha^e.
    """
    n = q**m - 1
    if T.n != n:
        raise BadDecomposition(f"T acts on Z_{T.n}, code has n = {n}")
    checks = set(gamma.pullback(T))
    low = (0,) + tuple(1 + e for e in sorted(checks))
    dual = tuple(1 + e for e in range(n) if e not in checks)
    rho_dual = dual_order(q, m, rho)
    k_low, k_dual = grm_dimension(q, m, rho), grm_dimension(q, m, rho_dual)
    if len(low) != k_low:
        raise DimensionMismatch(f"|A| = {len(low)} but dim R_{q}({rho},{m}) = {k_low}")
    if len(dual) != k_dual:
        raise DimensionMismatch(f"|B| = {len(dual)} but dim R_{q}({rho_dual},{m}) = {k_dual}")
    return (
        InformationSetSpec((q, m, rho), low, "information-set-for-low-order"),
        InformationSetSpec((q, m, rho_dual), dual, "information-set-for-dual"),
    )


def dual_punctured_defining_set(q: int, m: int, order: int) -> DefiningSetZ:
    """D* of the punctured dual of R_q(order, m)."""
    return grm_defining_set(q, m, dual_order(q, m, order), punctured=True)


def find_decompositions(q: int, m: int, order: int) -> list[Decomposition]:
    """All coprime splits n = r1 r2 (r1, r2 > 1) of n = q^m - 1, sorted by r1.

    For order 2 only splits with r1 = q^a - 1 are kept.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, not {order}")
    if m < 2:
        raise ValueError("m must be at least 2")
    n = q**m - 1
    out = []
    for r1 in unitary_divisors(n):
        if r1 in (1, n):
            continue
        a = multiplicative_order(q, r1)
        d = Decomposition(q, m, r1, n // r1, a)
        if order == 2 and not d.second_order_valid:
            continue
        out.append(d)
    return out
