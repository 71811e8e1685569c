"""Integer-side combinatorics: q-weights, cyclotomic cosets, q-orbits, the CRT
isomorphism and GRM defining sets, plus the choice of representatives that
the check-position engine works on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .numtheory import crt_pair


class NotCoprime(ValueError):
    pass


class BadOrder(ValueError):
    pass


class InternalContradiction(AssertionError):
    pass


def q_weight(k: int, q: int) -> int:
    """Sum of the base-q digits of k."""
    if k < 0 or q < 2:
        raise ValueError("need k >= 0 and q >= 2")
    total = 0
    while k:
        k, d = divmod(k, q)
        total += d
    return total


def cyclotomic_coset(a: int, r: int, q: int) -> tuple[int, ...]:
    """The q-cyclotomic coset {a q^i mod r}, sorted."""
    if gcd(r, q) != 1:
        raise NotCoprime(f"gcd({r}, {q}) != 1")
    start = a % r
    seen = [start]
    x = start * q % r
    while x != start:
        seen.append(x)
        x = x * q % r
    return tuple(sorted(seen))


def coset_partition(r: int, q: int, elements: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Cyclotomic cosets mod r covering ``elements`` (default: all of Z_r), ordered by minimum."""
    if gcd(r, q) != 1:
        raise NotCoprime(f"gcd({r}, {q}) != 1")
    pending = sorted({e % r for e in (range(r) if elements is None else elements)})
    done: set[int] = set()
    out = []
    for e in pending:
        if e in done:
            continue
        c = cyclotomic_coset(e, r, q)
        done.update(c)
        out.append(c)
    return out


def q_orbit(a1: int, a2: int, r1: int, r2: int, q: int) -> frozenset[tuple[int, int]]:
    """The q-orbit of (a1, a2) in Z_r1 x Z_r2."""
    if gcd(r1, q) != 1 or gcd(r2, q) != 1:
        raise NotCoprime(f"q = {q} must be a unit modulo {r1} and {r2}")
    start = (a1 % r1, a2 % r2)
    orbit = set()
    x = start
    while x not in orbit:
        orbit.add(x)
        x = (x[0] * q % r1, x[1] * q % r2)
    return frozenset(orbit)


@dataclass(frozen=True)
class CrtIso:
    """T: Z_n -> Z_r1 x Z_r2, e -> (delta1 e mod r1, delta2 e mod r2)."""

    n: int
    r1: int
    r2: int
    delta1: int = 1
    delta2: int = 1

    def __post_init__(self):
        if self.r1 * self.r2 != self.n:
            raise ValueError(f"{self.r1} * {self.r2} != {self.n}")
        if self.r1 <= 1 or self.r2 <= 1:
            raise ValueError("both factors must exceed 1")
        if gcd(self.r1, self.r2) != 1:
            raise NotCoprime(f"gcd({self.r1}, {self.r2}) != 1")
        if gcd(self.delta1, self.r1) != 1 or gcd(self.delta2, self.r2) != 1:
            raise NotCoprime("delta1, delta2 must be units modulo r1, r2")
        object.__setattr__(self, "delta1", self.delta1 % self.r1)
        object.__setattr__(self, "delta2", self.delta2 % self.r2)

    def t1(self, e: int) -> int:
        return self.delta1 * e % self.r1

    def t2(self, e: int) -> int:
        return self.delta2 * e % self.r2

    def __call__(self, e: int) -> tuple[int, int]:
        return self.t1(e), self.t2(e)

    def inverse(self, pair: tuple[int, int]) -> int:
        i1, i2 = pair
        x1 = i1 * pow(self.delta1, -1, self.r1) % self.r1
        x2 = i2 * pow(self.delta2, -1, self.r2) % self.r2
        return crt_pair(x1, self.r1, x2, self.r2)


def crt_map(e: int, T: CrtIso) -> tuple[int, int]:
    return T(e)


def crt_inv(pair: tuple[int, int], T: CrtIso) -> int:
    return T.inverse(pair)


@dataclass(frozen=True)
class DefiningSetZ:
    """A union of q-cyclotomic cosets modulo n.

    ``includes_zero`` reports whether exponent 0 (the overall-parity
    functional of the extended code) is part of the set.
    """

    n: int
    q: int
    exponents: frozenset[int]

    def __post_init__(self):
        ex = frozenset(e % self.n for e in self.exponents)
        object.__setattr__(self, "exponents", ex)
        for e in ex:
            if e * self.q % self.n not in ex:
                raise ValueError(f"exponent set is not closed under multiplication by {self.q}")

    @property
    def includes_zero(self) -> bool:
        return 0 in self.exponents

    def punctured(self) -> DefiningSetZ:
        """The defining set of the punctured cyclic code: drop exponent 0."""
        return DefiningSetZ(self.n, self.q, self.exponents - {0})

    def cosets(self) -> list[tuple[int, ...]]:
        return coset_partition(self.n, self.q, self.exponents)

    def sorted(self) -> list[int]:
        return sorted(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __contains__(self, e):
        return e in self.exponents

    def __iter__(self):
        return iter(sorted(self.exponents))


def _digit_vectors(q: int, m: int, max_weight: int) -> Iterable[tuple[int, int]]:
    """Yield (value, weight) for every m-digit base-q number of weight <= max_weight."""
    def rec(pos: int, value: int, weight: int):
        if pos == m:
            yield value, weight
            return
        for d in range(min(q - 1, max_weight - weight) + 1):
            yield from rec(pos + 1, value + d * q**pos, weight + d)

    if max_weight >= 0:
        yield from rec(0, 0, 0)


def grm_defining_set(q: int, m: int, rho: int, punctured: bool = False) -> DefiningSetZ:
    """Exponents i < q^m - 1 with wt_q(i) < m(q-1) - rho."""
    if not 0 < rho <= m * (q - 1):
        raise BadOrder(f"order {rho} outside (0, {m * (q - 1)}]")
    n = q**m - 1
    bound = m * (q - 1) - rho
    ex = frozenset(v for v, _ in _digit_vectors(q, m, bound - 1) if v < n)
    D = DefiningSetZ(n, q, ex)
    return D.punctured() if punctured else D


def omega(q: int, m: int, K: int) -> frozenset[int]:
    """Nonzero exponents below q^m - 1 of q-weight exactly K."""
    n = q**m - 1
    return frozenset(v for v, w in _digit_vectors(q, m, K) if w == K and 0 < v < n)


@dataclass(frozen=True)
class RepSystem:
    reps: tuple[int, ...]
    U: tuple[int, ...]
    orbits: dict[int, tuple[int, ...]] = field(hash=False)
    r1: int = 0

    def orbit_of(self, e: int) -> int:
        """The u in U with u = e (mod r1)."""
        for u in self.U:
            if (u - e) % self.r1 == 0:
                return u
        raise KeyError(e)


def suitable_representatives(Dstar: DefiningSetZ, T: CrtIso) -> RepSystem:
    """Deterministic suitable representative system of ``Dstar`` with respect to T.

    Cosets mod n whose projections lie in the same q-cyclotomic coset mod r1
    all get a representative in one common residue class mod r1: the smallest
    member of that r1-coset.  Within an n-coset the smallest qualifying
    element wins, and U takes the smallest representative of each class.
    """
    n, q, r1 = Dstar.n, Dstar.q, T.r1
    if n != T.n:
        raise ValueError(f"defining set lives in Z_{n}, T in Z_{T.n}")
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for c in Dstar.cosets():
        key = cyclotomic_coset(c[0] % r1, r1, q)
        groups.setdefault(key, []).append(c)
    reps = []
    for r1_coset, members in groups.items():
        u = r1_coset[0]
        for c in members:
            candidates = [e for e in c if e % r1 == u]
            if not candidates:
                raise InternalContradiction(f"coset {c} never reaches residue {u} mod {r1}")
            reps.append(min(candidates))
    reps.sort()
    orbits: dict[int, list[int]] = {}
    for e in reps:
        orbits.setdefault(e % r1, []).append(e)
    U = tuple(sorted(min(v) for v in orbits.values()))
    return RepSystem(
        reps=tuple(reps),
        U=U,
        orbits={min(v): tuple(v) for v in orbits.values()},
        r1=r1,
    )


def check_rep_system(rs: RepSystem, Dstar: DefiningSetZ) -> None:
    """Raise InternalContradiction unless ``rs`` satisfies the representative-system invariants."""

    def require(cond: bool, msg: str) -> None:
        if not cond:
            raise InternalContradiction(msg)

    cosets = Dstar.cosets()
    hit = [sum(1 for e in rs.reps if e in set(c)) for c in cosets]
    require(hit == [1] * len(cosets), "representatives must hit each coset exactly once")
    q, r1 = Dstar.q, rs.r1
    for a in rs.reps:
        for b in rs.reps:
            if cyclotomic_coset(a % r1, r1, q) == cyclotomic_coset(b % r1, r1, q):
                require((a - b) % r1 == 0, f"{a}, {b} share an r1-coset but not a residue")
    union = [e for u in rs.U for e in rs.orbits[u]]
    require(sorted(union) == sorted(rs.reps) and len(union) == len(set(union)), "Or(u) must partition the reps")
    for u in rs.U:
        require(all((e - u) % r1 == 0 for e in rs.orbits[u]), f"Or({u}) leaves its residue class")
        require(u == min(rs.orbits[u]), f"U must hold the smallest representative of each class, not {u}")
