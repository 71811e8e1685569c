"""Command-line front end.

    grminfo decompose --q 3 --m 4 --order 1
    grminfo infoset --q 3 --m 3 --order 1 --r1 13 --r2 2 --verify
    grminfo tables --output json

Exit codes: 0 success, 2 invalid parameters, 3 second-order preconditions
not met, 4 rank verification failed, 5 regenerated table differs from the
embedded copy.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .code import DEFAULT_MAX_VERIFY, MAX_VERIFY_ENV, max_verify_size
from .field import FieldError, freeze_moduli, load_moduli_config
from .infoset import BadDecomposition, NotApplicable, find_decompositions
from .numtheory import prime_power
from .pipeline import InfosetReport, run_instance
from .tables import TableReport, build_table_report

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_VERIFY = 4
EXIT_TABLE = 5

OUTPUTS = ("text", "json", "csv")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: int
    m: int
    order: int
    r1: int | None = None
    r2: int | None = None
    delta1: int = 1
    delta2: int = 1
    verify: bool = False
    max_verify_n: int | None = None
    output: str = "text"
    moduli: tuple = ()

    def validate(self) -> None:
        try:
            prime_power(self.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.m < 2:
            raise UsageError("m must be at least 2")
        if self.order not in (1, 2):
            raise UsageError(f"order must be 1 or 2, not {self.order}")
        if self.output not in OUTPUTS:
            raise UsageError(f"output must be one of {', '.join(OUTPUTS)}")
        if self.max_verify_n is not None and self.max_verify_n < 1:
            raise UsageError("--max-verify-n must be positive")
        if self.order == 2 and self.q == 2:
            raise NotApplicable("the second-order construction needs q > 2")


def _csv(rows: Sequence[Sequence], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(rows)


def _join(xs) -> str:
    return " ".join(str(x) for x in xs)


def cmd_decompose(q: int, m: int, order: int, output: str = "text", out: TextIO | None = None) -> int:
    out = out or sys.stdout
    RunConfig(q, m, order, output=output).validate()
    found = find_decompositions(q, m, order)
    header = ("q", "m", "r1", "r2") if order == 1 else ("q", "m", "r1", "a")
    rows = [(d.q, d.m, d.r1, d.r2 if order == 1 else d.a) for d in found]
    if output == "json":
        payload = [dict(zip(header, r)) | {"a": d.a, "r2": d.r2} for r, d in zip(rows, found)]
        json.dump(payload, out, indent=2)
        out.write("\n")
    elif output == "csv":
        _csv([header, *rows], out)
    else:
        out.write(" | ".join(f"{h:>6}" for h in header) + "\n")
        for r in rows:
            out.write(" | ".join(f"{v:>6}" for v in r) + "\n")
        if not rows:
            out.write(f"(no suitable decomposition of n = {q**m - 1})\n")
    return EXIT_OK


def _infoset_text(rep: InfosetReport, out: TextIO) -> None:
    d = rep.decomposition
    doc = rep.to_json()
    out.write(f"q = {rep.q}, m = {rep.m}, order = {rep.order}, n = {d.n}\n")
    out.write(f"T: Z_{d.n} -> Z_{d.r1} x Z_{d.r2}, delta = ({rep.T.delta1}, {rep.T.delta2}), a = {d.a}\n")
    out.write(f"Gamma ({len(rep.gamma)} cells): {_join(tuple(c) for c in rep.gamma)}\n")
    out.write(f"check positions T^-1(Gamma): {_join(rep.check_positions)}\n")
    dims = doc["dims"]
    out.write(f"information set for R_{rep.q}({rep.order},{rep.m}) [k = {dims['low_order']}]: ")
    out.write(_join(rep.low.positions) + "\n")
    out.write(f"information set for R_{rep.q}({dims['dual_order']},{rep.m}) [k = {dims['dual']}]: ")
    out.write(_join(rep.dual.positions) + "\n")
    out.write(f"engines agree: {'yes' if rep.engines_agree else 'NO'}\n")
    if rep.certificates:
        for role, cert in rep.certificates.items():
            out.write(f"rank certificate ({role}): rank {cert['rank']} of k = {cert['k']}, {cert['method']}\n")
        out.write(f"verified: {'yes' if rep.verified else 'NO'}\n")
    elif rep.note:
        out.write(rep.note + "\n")


def cmd_infoset(config: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    config.validate()
    rep = run_instance(
        config.q,
        config.m,
        config.order,
        config.r1,
        config.r2,
        delta=(config.delta1, config.delta2),
        verify=config.verify,
        max_size=config.max_verify_n,
        moduli=config.moduli,
    )
    if config.output == "json":
        json.dump(rep.to_json(), out, indent=2)
        out.write("\n")
    elif config.output == "csv":
        doc = rep.to_json()
        keys = ["q", "m", "order", "r1", "r2", "a", "delta", "check_positions", "infoset_low_order", "infoset_dual"]
        row = [_join(doc[k]) if isinstance(doc[k], list) else doc[k] for k in keys]
        _csv([keys + ["verified"], row + [doc["verified"]]], out)
    else:
        _infoset_text(rep, out)
    if not rep.engines_agree:
        return EXIT_VERIFY
    if config.verify and rep.certificates is not None and not rep.verified:
        return EXIT_VERIFY
    return EXIT_OK


def _tables_text(rep: TableReport, out: TextIO) -> None:
    out.write(f"Table {rep.order}: {' | '.join(rep.columns)}\n")
    doc = rep.to_json()
    for row in doc["rows"]:
        cells = " | ".join(f"{v:>5}" for v in row["row"])
        status = "match" if row["match"] else f"DIFFERS (published {tuple(row['published'] or ())})"
        if row["verified"] is None:
            cert = "not rank-checked"
        else:
            cert = f"ranks {tuple(row['ranks'])}, {'verified' if row['verified'] else 'NOT verified'}"
        engines = "" if row["engines_agree"] else ", engines DISAGREE"
        out.write(f"  {cells}   {status}; {cert}{engines}\n")
    for note in rep.notes:
        out.write(f"  note: {note}\n")
    out.write(f"  {'OK' if rep.ok else 'MISMATCH'}: {len(rep.rows)} rows regenerated, {len(rep.diffs)} differ\n")


def cmd_tables(
    orders: Sequence[int] = (1, 2),
    verify: bool = True,
    max_verify_n: int | None = None,
    output: str = "text",
    moduli: tuple = (),
    out: TextIO | None = None,
) -> int:
    out = out or sys.stdout
    if output not in OUTPUTS:
        raise UsageError(f"output must be one of {', '.join(OUTPUTS)}")
    reports = [build_table_report(o, verify=verify, max_size=max_verify_n, moduli=moduli) for o in orders]
    if output == "json":
        json.dump([r.to_json() for r in reports], out, indent=2)
        out.write("\n")
    elif output == "csv":
        rows = [("table", "q", "m", "r1", "r2_or_a", "published", "match", "verified")]
        for r in reports:
            for row in r.to_json()["rows"]:
                pub = _join(row["published"] or ())
                rows.append((r.order, *row["row"], pub, row["match"], row["verified"]))
        _csv(rows, out)
    else:
        for r in reports:
            _tables_text(r, out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_TABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grminfo",
        description="Information sets for first- and second-order Generalized Reed-Muller codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        p.add_argument("--output", choices=OUTPUTS, default="text")
        if config:
            p.add_argument("--config", help="INI file with a [moduli] section of modulus overrides")

    dec = sub.add_parser("decompose", help="list suitable decompositions n = r1 * r2")
    dec.add_argument("--q", type=int, required=True)
    dec.add_argument("--m", type=int, required=True)
    dec.add_argument("--order", type=int, choices=(1, 2), required=True)
    common(dec, config=False)

    inf = sub.add_parser("infoset", help="check positions and information sets for one instance")
    inf.add_argument("--q", type=int, required=True)
    inf.add_argument("--m", type=int, required=True)
    inf.add_argument("--order", type=int, choices=(1, 2), required=True)
    inf.add_argument("--r1", type=int)
    inf.add_argument("--r2", type=int)
    inf.add_argument("--delta1", type=int, default=1)
    inf.add_argument("--delta2", type=int, default=1)
    inf.add_argument("--verify", action="store_true", help="certify both information sets by rank")
    inf.add_argument(
        "--max-verify-n",
        type=int,
        help=f"largest q^m to verify (default ${MAX_VERIFY_ENV} or {DEFAULT_MAX_VERIFY})",
    )
    common(inf)

    tab = sub.add_parser("tables", help="regenerate both reference tables and diff them")
    tab.add_argument("--order", type=int, choices=(1, 2), action="append", help="only this table (repeatable)")
    tab.add_argument("--no-verify", action="store_true", help="skip the rank certificates")
    tab.add_argument("--max-verify-n", type=int)
    common(tab)
    return parser


def _moduli(path: str | None) -> tuple:
    if not path:
        return ()
    if not os.path.exists(path):
        raise UsageError(f"config file {path!r} not found")
    return freeze_moduli(load_moduli_config(path))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "decompose":
            return cmd_decompose(args.q, args.m, args.order, args.output)
        moduli = _moduli(args.config)
        if args.command == "infoset":
            config = RunConfig(
                q=args.q,
                m=args.m,
                order=args.order,
                r1=args.r1,
                r2=args.r2,
                delta1=args.delta1,
                delta2=args.delta2,
                verify=args.verify,
                max_verify_n=args.max_verify_n if args.max_verify_n is not None else max_verify_size(),
                output=args.output,
                moduli=moduli,
            )
            return cmd_infoset(config)
        return cmd_tables(
            orders=tuple(args.order or (1, 2)),
            verify=not args.no_verify,
            max_verify_n=args.max_verify_n,
            output=args.output,
            moduli=moduli,
        )
    except NotApplicable as exc:
        print(f"grminfo: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, BadDecomposition, FieldError) as exc:
        print(f"grminfo: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
