"""End-to-end computation for one (q, m, order, T) instance."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from math import gcd

from .code import TooLarge, grm_generator, is_information_set, max_verify_size
from .cosets import CrtIso
from .infoset import (
    BadDecomposition,
    Decomposition,
    GammaSet,
    InformationSetSpec,
    NotApplicable,
    dual_order,
    dual_punctured_defining_set,
    find_decompositions,
    gamma_closed_form,
    gamma_general,
    to_information_sets,
)
from .numtheory import multiplicative_order, prime_power


@dataclass
class InfosetReport:
    q: int
    m: int
    order: int
    decomposition: Decomposition
    T: CrtIso
    gamma: GammaSet
    check_positions: list[int]
    low: InformationSetSpec
    dual: InformationSetSpec
    engines_agree: bool
    verified: bool = False
    certificates: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        d = self.decomposition
        return {
            "q": self.q,
            "m": self.m,
            "order": self.order,
            "r1": d.r1,
            "r2": d.r2,
            "a": d.a,
            "delta": [self.T.delta1, self.T.delta2],
            "gamma": [list(c) for c in self.gamma],
            "check_positions": self.check_positions,
            "infoset_low_order": list(self.low.positions),
            "infoset_dual": list(self.dual.positions),
            "dims": {
                "low_order": len(self.low.positions),
                "dual": len(self.dual.positions),
                "length": self.q**self.m,
                "dual_order": self.dual.code[2],
            },
            "engines_agree": self.engines_agree,
            "verified": self.verified,
            "certificates": self.certificates,
            "note": self.note,
        }


def resolve_decomposition(q: int, m: int, order: int, r1: int | None = None, r2: int | None = None) -> Decomposition:
    """Validate (or pick, when both factors are absent) the split n = r1 r2."""
    try:
        prime_power(q)
    except ValueError as exc:
        raise BadDecomposition(str(exc)) from None
    if m < 2:
        raise BadDecomposition("m must be at least 2")
    if order not in (1, 2):
        raise BadDecomposition(f"order must be 1 or 2, not {order}")
    if order == 2 and q == 2:
        raise NotApplicable("the second-order construction needs q > 2")
    n = q**m - 1
    if r1 is None and r2 is None:
        found = find_decompositions(q, m, order)
        if not found:
            raise BadDecomposition(f"no suitable decomposition of n = {n} for order {order}")
        return found[0]
    if r1 is None:
        r1 = n // r2 if r2 and n % r2 == 0 else 0
    if r2 is None:
        r2 = n // r1 if r1 and n % r1 == 0 else 0
    if r1 * r2 != n or r1 <= 1 or r2 <= 1 or gcd(r1, r2) != 1:
        raise BadDecomposition(f"({r1}, {r2}) is not a coprime split of n = {n} with both factors > 1")
    d = Decomposition(q, m, r1, r2, multiplicative_order(q, r1))
    if order == 2 and not d.second_order_valid:
        raise NotApplicable(f"r1 = {r1} is not of the form {q}^a - 1")
    return d


def run_instance(
    q: int,
    m: int,
    order: int,
    r1: int | None = None,
    r2: int | None = None,
    delta: tuple[int, int] = (1, 1),
    verify: bool = False,
    max_size: int | None = None,
    moduli: tuple = (),
) -> InfosetReport:
    """Check positions and both information sets; rank-certified when ``verify`` is set.

    ``moduli`` (see :func:`grminfo.field.freeze_moduli`) only changes the
    field used by the rank oracle; the combinatorial result does not depend on it.
    """
    d = resolve_decomposition(q, m, order, r1, r2)
    try:
        T = CrtIso(d.n, d.r1, d.r2, *delta)
    except ValueError as exc:
        raise BadDecomposition(str(exc)) from None
    gamma = gamma_closed_form(d, order)
    _, general = gamma_general(dual_punctured_defining_set(q, m, order), T)
    low, dual = to_information_sets(gamma, T, q, m, order)
    report = InfosetReport(
        q=q,
        m=m,
        order=order,
        decomposition=d,
        T=T,
        gamma=gamma,
        check_positions=gamma.pullback(T),
        low=low,
        dual=dual,
        engines_agree=general == gamma,
    )
    if verify:
        limit = max_verify_size() if max_size is None else max_size
        try:
            if q**m > limit:
                raise TooLarge(f"q^m = {q**m} exceeds the verification bound {limit}")
            c_low = is_information_set(grm_generator(q, m, order, moduli, limit), low.positions)
            c_dual = is_information_set(grm_generator(q, m, dual_order(q, m, order), moduli, limit), dual.positions)
        except TooLarge as exc:
            report.note = f"not verified: {exc}"
        else:
            report.certificates = {"low_order": asdict(c_low), "dual": asdict(c_dual)}
            report.verified = c_low.ok and c_dual.ok
    return report
