"""Exact arithmetic in GF(p^s) and in the extension GF(q^m) used by the codes.

Elements of a field GF(p^s) are encoded as integers ``0 <= v < p**s`` whose
base-p digits are the coefficients (low degree first) of the representing
polynomial modulo the field's modulus.  :class:`FieldElement` wraps such an
integer for operator-style use; the hot paths work on the raw integers and on
the numpy tables held by :class:`GF`.

GF(q^m) for q = p^s is realized flat, as GF(p^(s*m)), with GF(q) identified
as the set of Frobenius fixed points ``x**q == x``.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .numtheory import factorize, is_prime, prime_power


class FieldError(Exception):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class BasisSingular(FieldError):
    pass


# Lexicographically first primitive polynomial (low coefficient first,
# candidates ordered by their integer encoding) for each (p, degree).
# Regenerate with ``first_primitive_polynomial``; tests recheck irreducibility.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (1, 2, 1, 0, 0, 0, 0, 1),
    (3, 8): (2, 0, 0, 1, 0, 0, 0, 0, 1),
    (3, 9): (1, 0, 1, 2, 0, 0, 0, 0, 0, 1),
    (3, 10): (2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (5, 1): (2, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 5): (2, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 7): (2, 3, 0, 0, 0, 0, 0, 1),
    (7, 1): (2, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 3, 0, 1),
    (7, 4): (5, 3, 1, 0, 1),
    (7, 5): (4, 1, 0, 0, 0, 1),
}

TABLE_LIMIT = 2**16


# --- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    b = _trim([x % p for x in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    _trim(a)
    while len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return poly_mod(prod, modulus, p)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Brute-force check: no monic factor of degree 1..deg//2 divides ``poly``."""
    f = _trim([c % p for c in poly])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for low in product(range(p), repeat=k):
            if not poly_mod(f, list(low) + [1], p):
                return False
    return True


def _coeffs(v: int, p: int, s: int) -> tuple[int, ...]:
    out = []
    for _ in range(s):
        v, r = divmod(v, p)
        out.append(r)
    return tuple(out)


def _encode(coeffs: Iterable[int], p: int) -> int:
    v = 0
    for c in reversed(list(coeffs)):
        v = v * p + (c % p)
    return v


def _pow_slow(v: int, k: int, spec: "FieldSpec") -> int:
    p, s = spec.p, spec.s
    result = [1]
    base = list(_coeffs(v, p, s))
    while k:
        if k & 1:
            result = poly_mulmod(result, base, spec.modulus, p)
        base = poly_mulmod(base, base, spec.modulus, p)
        k >>= 1
    return _encode(result, p)


def _has_full_order(v: int, spec: "FieldSpec") -> bool:
    n = spec.q - 1
    if v == 0:
        return False
    if _pow_slow(v, n, spec) != 1:
        return False
    return all(_pow_slow(v, n // ell, spec) != 1 for ell, _ in factorize(n)) if n > 1 else True


def first_primitive_polynomial(p: int, d: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree d over GF(p) whose root x is primitive."""
    for low in range(p**d):
        poly = _coeffs(low, p, d) + (1,)
        if poly[0] == 0 or not is_irreducible(poly, p):
            continue
        spec = FieldSpec(p, d, poly)
        root = p if d > 1 else -poly[0] % p
        if _has_full_order(root, spec):
            return poly
    raise FieldError(f"no primitive polynomial of degree {d} over GF({p})")  # pragma: no cover


def load_moduli_config(path: str | os.PathLike) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read modulus overrides from an INI file.

    Format::

        [moduli]
        # p^s = coefficients, low degree first, monic
        3^2 = 1 0 1
    """
    cfg = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path) as fh:
        cfg.read_file(fh)
    out: dict[tuple[int, int], tuple[int, ...]] = {}
    if cfg.has_section("moduli"):
        for key, value in cfg.items("moduli"):
            p_str, _, s_str = key.partition("^")
            try:
                p, s = int(p_str), int(s_str)
                coeffs = tuple(int(c) for c in value.replace(",", " ").split())
            except ValueError as exc:
                raise FieldError(f"bad modulus entry {key!r} = {value!r}") from exc
            out[(p, s)] = coeffs
    return out


def get_modulus(p: int, s: int, overrides: Mapping[tuple[int, int], Sequence[int]] | None = None) -> tuple[int, ...]:
    if overrides and (p, s) in overrides:
        return tuple(overrides[(p, s)])
    if (p, s) in BUILTIN_MODULI:
        return BUILTIN_MODULI[(p, s)]
    return first_primitive_polynomial(p, s)


# --- fields ------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    s: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"p = {self.p} is not prime")
        if self.s < 1:
            raise FieldError(f"s = {self.s} must be positive")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.s + 1 or mod[-1] != 1:
            raise FieldError(f"modulus {mod} is not monic of degree {self.s}")

    @property
    def q(self) -> int:
        return self.p**self.s

    def validate(self) -> None:
        """Check irreducibility of the modulus (brute force; small degrees only)."""
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @classmethod
    def default(cls, q: int, overrides=None) -> FieldSpec:
        p, s = prime_power(q)
        return cls(p, s, get_modulus(p, s, overrides))


def find_primitive(spec: FieldSpec) -> int:
    """First element, in increasing integer-encoding order, of multiplicative order q - 1."""
    for v in range(1, spec.q):
        if _has_full_order(v, spec):
            return v
    raise FieldError("no primitive element found")  # pragma: no cover


class GF:
    """The finite field described by a :class:`FieldSpec`.

    For fields of at most ``TABLE_LIMIT`` elements, exp/log tables with
    respect to the primitive element make multiplication O(1).
    """

    def __init__(self, spec: FieldSpec, check: bool = True):
        if check:
            spec.validate()
        self.spec = spec
        self.p, self.s, self.q = spec.p, spec.s, spec.q
        self.primitive = find_primitive(spec)
        self._tables = self.q <= TABLE_LIMIT
        if self._tables:
            self._build_tables()

    @classmethod
    def of_order(cls, q: int, overrides=None) -> GF:
        return _gf_cached(FieldSpec.default(q, overrides))

    def __repr__(self):
        return f"GF({self.p}^{self.s})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def _build_tables(self):
        n = self.q - 1
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        g = list(_coeffs(self.primitive, self.p, self.s))
        x = [1]
        for i in range(n):
            v = _encode(x, self.p)
            exp[i] = v
            log[v] = i
            x = poly_mulmod(x, g, self.spec.modulus, self.p)
        exp[n:2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        self.exp, self.log = exp, log
        pw = self.p ** np.arange(self.s)
        self.digits = (np.arange(self.q)[:, None] // pw) % self.p  # (q, s)
        self._pw = pw

    # element construction
    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise FieldError(f"{v} is not an element encoding of {self}")
            return FieldElement(self, v)
        return FieldElement(self, _encode(value, self.p))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def coeffs(self, v: int) -> tuple[int, ...]:
        return _coeffs(v, self.p, self.s)

    # raw integer arithmetic
    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        return _encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))], self.p)

    def neg(self, a: int) -> int:
        if self.s == 1:
            return -a % self.p
        return _encode([-x for x in self.coeffs(a)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.s == 1:
            return a * b % self.p
        if self._tables:
            return int(self.exp[self.log[a] + self.log[b]])
        return _encode(poly_mulmod(self.coeffs(a), self.coeffs(b), self.spec.modulus, self.p), self.p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.s == 1:
            return pow(a, -1, self.p)
        if self._tables:
            return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.q - 1
        for ell, e in factorize(n) if n > 1 else ():
            for _ in range(e):
                if self.pow(a, n // ell) == 1:
                    n //= ell
                else:
                    break
        return n

    # vectorized helpers (table-backed fields only)
    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return (a + b) % self.p
        da = (a[..., None] // self._pw) % self.p
        db = (b[..., None] // self._pw) % self.p
        return (((da + db) % self.p) * self._pw).sum(axis=-1)

    def neg_vec(self, a: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return (-a) % self.p
        da = (a[..., None] // self._pw) % self.p
        return (((-da) % self.p) * self._pw).sum(axis=-1)

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return a * b % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    @cached_property
    def add_table(self) -> np.ndarray:
        e = np.arange(self.q)
        return self.add_vec(e[:, None], e[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        e = np.arange(self.q)
        return self.mul_vec(e[:, None], e[None, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.neg_vec(np.arange(self.q))

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(v) for v in range(1, self.q)], dtype=np.int64)


@lru_cache(maxsize=None)
def _gf_cached(spec: FieldSpec) -> GF:
    return GF(spec)


@dataclass(frozen=True)
class FieldElement:
    field: GF = dc_field(repr=False)
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.field, v)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.value, k))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field!r}({list(self.coeffs)})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str, k: int | None = None) -> FieldElement:
    """Dispatch ``add|sub|mul|div`` on two elements, or ``pow`` with exponent ``k``."""
    if op == "pow":
        if k is None:
            raise ValueError("pow needs an exponent k")
        return a**k
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](b)


class ExtField:
    """GF(q^m) over GF(q), with a primitive element alpha and coordinates over GF(q).

    ``top`` is the flat field GF(p^(s*m)); ``embed[b]`` is the top-field
    encoding of base element ``b``.  ``expansion[x]`` holds the coordinates
    (c_0, ..., c_{m-1}) of x in the basis 1, alpha, ..., alpha^(m-1), each
    c_i an element encoding of the base field.
    """

    def __init__(self, q: int, m: int, overrides=None):
        if m < 1:
            raise FieldError("extension degree must be positive")
        self.base = GF.of_order(q, overrides)
        p, s = self.base.p, self.base.s
        self.q, self.m = q, m
        self.top = GF.of_order(q**m, overrides)
        if self.top.q > TABLE_LIMIT:
            raise FieldError(f"GF({q}^{m}) exceeds the table-backed size limit {TABLE_LIMIT}")
        self.alpha = self.top.primitive
        self.n = q**m - 1
        self.embed = self._embedding()
        self._unembed = {int(v): b for b, v in enumerate(self.embed)}
        self.expansion = self._expansion_table()

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m})"

    def alpha_pow(self, k: int) -> int:
        return int(self.top.exp[k % self.n])

    def _embedding(self) -> np.ndarray:
        top, base = self.top, self.base
        if base.s == 1:
            # constants of the prime field encode as themselves
            return np.arange(base.q, dtype=np.int64)
        fixed = [x for x in range(top.q) if top.pow(x, self.q) == x]
        mod = base.spec.modulus
        for theta in fixed:
            acc, xp = 0, 1
            for c in mod:
                acc = top.add(acc, top.mul(c, xp))
                xp = top.mul(xp, theta)
            if acc == 0:
                break
        else:  # pragma: no cover - a root always exists in the subfield
            raise FieldError("base modulus has no root in the fixed field")
        emb = []
        for b in range(base.q):
            acc, xp = 0, 1
            for c in base.coeffs(b):
                acc = top.add(acc, top.mul(c, xp))
                xp = top.mul(xp, theta)
            emb.append(acc)
        return np.array(emb, dtype=np.int64)

    def subfield(self) -> set[int]:
        """Top-field encodings of the embedded GF(q)."""
        return {int(v) for v in self.embed}

    def _expansion_table(self) -> np.ndarray:
        from .linalg import inverse

        top, base = self.top, self.base
        p, s, m = base.p, base.s, self.m
        d = top.s
        # columns: digit vectors of theta^j * alpha^i, ordered (i, j)
        theta_pows = [int(self.embed[p**j]) if s > 1 else 1 for j in range(s)]
        cols = []
        for i in range(m):
            ai = top.pow(self.alpha, i)
            for tj in theta_pows:
                cols.append(top.coeffs(top.mul(ai, tj)))
        basis = np.array(cols, dtype=np.int64).T  # (d, m*s)
        try:
            binv = inverse(basis, p)
        except ValueError as exc:
            raise BasisSingular(f"1, alpha, ..., alpha^{m - 1} is not a basis over GF({self.q})") from exc
        digits = top.digits  # (Q, d)
        coords = (digits @ binv.T) % p  # (Q, m*s)
        coords = coords.reshape(top.q, m, s)
        return (coords * (p ** np.arange(s))).sum(axis=-1).astype(np.int64)

    def expand_over_base(self, x: int | FieldElement) -> tuple[int, ...]:
        v = x.value if isinstance(x, FieldElement) else int(x)
        return tuple(int(c) for c in self.expansion[v])

    def from_base(self, b: int) -> int:
        return int(self.embed[b])

    def to_base(self, x: int) -> int:
        """Inverse of the embedding; raises for elements outside GF(q)."""
        try:
            return self._unembed[int(x)]
        except KeyError:
            raise FieldError(f"{x} is not in the embedded GF({self.q})") from None


def freeze_moduli(overrides: Mapping[tuple[int, int], Sequence[int]] | None) -> tuple:
    """Hashable form of a modulus-override mapping, usable as a cache key."""
    return tuple(sorted((key, tuple(v)) for key, v in (overrides or {}).items()))


@lru_cache(maxsize=32)
def ext_field(q: int, m: int, moduli: tuple = ()) -> ExtField:
    """Cached :class:`ExtField`; ``moduli`` is a :func:`freeze_moduli` tuple."""
    return ExtField(q, m, dict(moduli) or None)


def expand_over_base(x: int | FieldElement, ext: ExtField) -> tuple[int, ...]:
    return ext.expand_over_base(x)
