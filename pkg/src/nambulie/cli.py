"""Command-line entry point.

Subcommands: ``verify``, ``search``, ``examples``, ``fi-check``, ``core``.
Exit codes: 0 when every verdict matches its expectation, 1 on an unexpected
verdict, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .catalog import (
    CATALOG,
    CheckRecord,
    chart_group_records,
    fi_label,
    form_records,
    linear_records,
    nambu_records,
    record,
    run_entry,
)
from .exactalg import ParseError, format_rat
from .extcalc import format_multivector
from .liealg import (
    NotAnIdeal,
    UndefinedCore,
    check_ideal,
    check_jacobi,
    core_of_linear,
    format_constant_multivector,
    search_nambu_lie,
)
from .matgrp import cayley_pairs, cayley_samples, check_multiplicative_at
from .nambu import DEFAULT_SEED, DEFAULT_SUITE_SIZE, check_fundamental_identity, coordinate_fi_tuples, random_fi_tuples
from .structfile import (
    build_chart_group,
    build_lie_algebra,
    build_linear_nambu,
    build_matrix_tensor,
    build_nambu_tensor,
    ideal_basis,
    read_structure,
)


class InputError(Exception):
    pass


@dataclass
class Report:
    command: str
    input: str
    seed: int
    digest: str = ""
    records: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    expect: str = "pass"
    details: list = field(default_factory=list)
    show_details: bool = False

    @property
    def verdict(self) -> str:
        return "pass" if all(r.passed for r in self.records) else "fail"

    @property
    def met(self) -> bool:
        return self.verdict == self.expect

    def emit(self, machine: bool, out=None) -> None:
        out = out or sys.stdout
        if machine:
            for r in self.details + self.records:
                out.write(json.dumps(r.as_dict(), sort_keys=True) + "\n")
            summary = {"check": "summary", "input": self.input, "verdict": self.verdict,
                       "expected": self.expect, "seed": f"0x{self.seed:X}", "version": __version__}
            if self.digest:
                summary["digest"] = self.digest
            out.write(json.dumps(summary, sort_keys=True) + "\n")
            return
        out.write(f"nambulie {__version__} {self.command}\n")
        out.write(f"input: {self.input}\n")
        if self.digest:
            out.write(f"sha256: {self.digest}\n")
        out.write(f"seed: 0x{self.seed:X}\n")
        for line in self.lines:
            out.write(line + "\n")
        for r in (self.details if self.show_details else []) + self.records:
            tail = f"  witness: {r.witness}" if r.witness is not None else ""
            out.write(f"[{r.verdict.upper()}] {r.check} ({r.input}){tail}\n")
        note = "" if self.met else " (unexpected)"
        out.write(f"overall: {self.verdict.upper()} expected {self.expect.upper()}{note}\n")


def _load(path: str):
    try:
        return read_structure(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _settings(args, sf=None) -> tuple[int, int]:
    seed = args.seed if args.seed is not None else (sf.seed if sf and sf.seed is not None else DEFAULT_SEED)
    size = args.suite_size if args.suite_size is not None else (
        sf.suite_size if sf and sf.suite_size is not None else DEFAULT_SUITE_SIZE)
    return seed, size


def _require_kind(sf, *kinds):
    if sf.kind not in kinds:
        raise InputError(f"{sf.name}: kind {sf.kind!r} not supported here (expected {', '.join(kinds)})")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> Report:
    sf = _load(args.file)
    seed, size = _settings(args, sf)
    rep = Report("verify", sf.name, seed, sf.digest, expect=sf.expect)
    if sf.kind == "nambu-tensor":
        P = build_nambu_tensor(sf)
        rep.lines.append(f"tensor: {format_multivector(P)}")
        rep.records += nambu_records(P, sf.name, seed, size)
        if not rep.records or all(r.passed for r in rep.records):
            rep.records += form_records(P, sf.name, seed)
    elif sf.kind == "lie-algebra":
        L = build_lie_algebra(sf)
        rep.records.append(record("jacobi", sf.name, not any(any(v) for _, v in check_jacobi(L))))
        for name, f in sf.ideals.items():
            H = ideal_basis(sf, L, name)
            try:
                check_ideal(L, H)
                rep.records.append(record("ideal", name, True))
            except NotAnIdeal as exc:
                rep.records.append(record("ideal", name, False, exc))
    elif sf.kind == "linear-nambu":
        Pi = build_linear_nambu(sf)
        rep.lines.append(f"tensor: {format_multivector(Pi.tensor)}")
        rep.records += nambu_records(Pi.tensor, sf.name, seed, size)
        rep.records += linear_records(Pi.carrier, Pi, sf.name)
    elif sf.kind == "chart-group":
        G, P, coframe = build_chart_group(sf)
        rep.lines.append(f"tensor: {format_multivector(P)}")
        lin_names = tuple(sf.fields["linear-coords"].value.split()) if "linear-coords" in sf.fields else None
        rep.records += chart_group_records(G, P, sf.name, seed, size, coframe=coframe, linear_names=lin_names)
    else:
        T, pairs = build_matrix_tensor(sf)
        bad = [k for k, (a, b) in enumerate(cayley_pairs(pairs, seed=seed))
               if not check_multiplicative_at(T, a, b).is_zero()]
        rep.records.append(record("multiplicative", f"{pairs} Cayley pairs", not bad, bad or None))
        nd = [k for k, g in enumerate(cayley_samples(2 * pairs, seed=seed)) if not T(g).is_decomposable()]
        rep.records.append(record("pointwise-decomposable", f"{2 * pairs} samples", not nd, nd or None))
    return rep


def cmd_search(args) -> Report:
    sf = _load(args.file)
    _require_kind(sf, "lie-algebra", "linear-nambu")
    seed, _ = _settings(args, sf)
    L = build_lie_algebra(sf)
    try:
        H = ideal_basis(sf, L, args.ideal)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        check_ideal(L, H)
    except NotAnIdeal as exc:
        raise InputError(f"not an ideal: {exc}") from None
    res = search_nambu_lie(L, H, args.case)
    label = f"{sf.name} ideal={args.ideal} case={args.case}"
    rep = Report("search", label, seed, sf.digest)
    rep.lines.append(f"order: {res.order}")
    rep.lines.append("Lambda0: " + format_constant_multivector(res.Lambda0, L.names))
    rep.lines.append("gamma: [" + ", ".join(format_rat(x) for x in res.gamma) + "]")
    rep.lines.append(f"unknowns: {len(res.unknown_basis)}")
    rep.lines.append(f"solution space dimension: {res.dimension}")
    for k, Pi in enumerate(res.candidates, 1):
        rep.lines.append(f"  solution {k}: {format_multivector(Pi.tensor)}")
    rep.lines.append(f"Nambu-filtered: {len(res.filtered)}")
    for k, Pi in enumerate(res.filtered, 1):
        rep.lines.append(f"  structure {k}: {format_multivector(Pi.tensor)}")
    for Pi in res.candidates:
        ok = any(Pi is F for F in res.filtered)
        rep.details.append(CheckRecord("candidate", format_multivector(Pi.tensor), "pass" if ok else "fail",
                                       None if ok else "not a Nambu structure or not a cocycle"))
    rep.records.append(CheckRecord("search", label, "pass", f"dimension={res.dimension}"))
    return rep


def cmd_examples(args) -> Report:
    if not args.all and args.name is None:
        raise InputError("give an example name or --all; known: " + ", ".join(CATALOG))
    names = list(CATALOG) if args.all else [args.name]
    unknown = [n for n in names if n not in CATALOG]
    if unknown:
        raise InputError(f"unknown example {unknown[0]!r}; known: {', '.join(CATALOG)}")
    seed, size = _settings(args)
    rep = Report("examples", "all" if args.all else names[0], seed, show_details=args.detail)
    for n in names:
        res = run_entry(n, seed, size)
        for r in res.records:
            rep.details.append(CheckRecord(r.check, f"{n}: {r.input}", r.verdict, r.witness))
        # failing checks inside an expected-fail entry are the expectation, not a run failure
        marker = "" if res.met else " (unexpected)"
        witness = res.note or None if res.expected == "fail" else None
        rep.records.append(CheckRecord("example", n, "pass" if res.met else "fail",
                                       witness if res.met else f"got {res.verdict}, expected {res.expected}"))
        rep.lines.append(f"{n}: {res.verdict.upper()} (expected {res.expected.upper()}){marker}")
    return rep


def cmd_fi_check(args) -> Report:
    sf = _load(args.file)
    _require_kind(sf, "nambu-tensor", "linear-nambu", "chart-group")
    seed, size = _settings(args, sf)
    if sf.kind == "nambu-tensor":
        P = build_nambu_tensor(sf)
    elif sf.kind == "linear-nambu":
        P = build_linear_nambu(sf).tensor
    else:
        P = build_chart_group(sf)[1]
    rep = Report("fi-check", sf.name, seed, sf.digest, expect=sf.expect)
    n = P.degree
    total = bad = 0
    first = None
    for suite in (coordinate_fi_tuples(P.chart, n), random_fi_tuples(P.chart, n, size, seed)):
        for label, fs, gs in suite:
            r = check_fundamental_identity(P, fs, gs)
            total += 1
            if r:
                bad += 1
                first = first or (label, r)
    rep.lines.append(f"tuples: {total}, nonzero residuals: {bad}")
    rep.records.append(record("fundamental-identity", sf.name, bad == 0,
                              first and f"{fi_label(first[0], P)} residual={first[1]}"))
    return rep


def cmd_core(args) -> Report:
    sf = _load(args.file)
    _require_kind(sf, "linear-nambu")
    seed, _ = _settings(args, sf)
    Pi = build_linear_nambu(sf)
    rep = Report("core", sf.name, seed, sf.digest, expect=sf.expect)
    try:
        core = core_of_linear(Pi, Pi.carrier)
    except UndefinedCore as exc:
        rep.records.append(record("core", sf.name, False, exc))
        return rep

    def span(vs):
        return "{" + ", ".join("(" + ", ".join(format_rat(x) for x in v) + ")" for v in vs) + "}"

    rep.lines.append(f"case: {core.case}" + (f" (also {core.alternative})" if core.alternative else ""))
    rep.lines.append(f"V_cap: {span(core.v_cap)}")
    rep.lines.append(f"V_cup: {span(core.v_cup)}")
    rep.lines.append(f"core ideal H (dim {core.dim_H}): {span(core.H)}")
    rep.lines.append("core: " + format_constant_multivector(core.Lambda0, Pi.carrier.names))
    if core.gamma is not None:
        rep.lines.append("gamma: [" + ", ".join(format_rat(x) for x in core.gamma) + "]")
    try:
        check_ideal(Pi.carrier, core.H)
        rep.records.append(record("core-is-ideal", sf.name, True))
    except NotAnIdeal as exc:
        rep.records.append(record("core-is-ideal", sf.name, False, exc))
    rep.records.append(CheckRecord("core-case", f"{sf.name}: {core.case} dim {core.dim_H}", "pass"))
    return rep


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help=f"random seed (default 0x{DEFAULT_SEED:X}, or the file's seed)")
    common.add_argument("--machine", action="store_true", help="line-delimited JSON records")
    common.add_argument("--suite-size", type=int, default=None,
                        help=f"random fundamental-identity tuples (default {DEFAULT_SUITE_SIZE})")
    p = argparse.ArgumentParser(prog="nambulie", description="Exact checks for Nambu and Nambu-Lie structures.",
                                parents=[common])
    p.add_argument("--version", action="version", version=f"nambulie {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run the suite appropriate to a structure file")
    v.add_argument("file")
    s = sub.add_parser("search", parents=[common], help="search Nambu-Lie structures with a given core ideal")
    s.add_argument("file")
    s.add_argument("--ideal", default="all", help="'all', a declared ideal name, or 1-based indices '2,3,4'")
    s.add_argument("--case", choices=("a", "b", "c"), required=True)
    e = sub.add_parser("examples", parents=[common], help="run builtin catalog entries")
    e.add_argument("name", nargs="?")
    e.add_argument("--all", action="store_true")
    e.add_argument("--detail", action="store_true", help="list every individual check")
    e.add_argument("--list", action="store_true", help="list identifiers and exit")
    f = sub.add_parser("fi-check", parents=[common], help="fundamental-identity residuals")
    f.add_argument("file")
    c = sub.add_parser("core", parents=[common], help="core ideal and core of a linear structure")
    c.add_argument("file")
    return p


COMMANDS = {"verify": cmd_verify, "search": cmd_search, "examples": cmd_examples,
            "fi-check": cmd_fi_check, "core": cmd_core}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "examples" and args.list:
        for name, entry in CATALOG.items():
            print(f"{name}\t{entry.expected}\t{entry.description}")
        return 0
    try:
        rep = COMMANDS[args.command](args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep.emit(args.machine)
    return 0 if rep.met else 1


if __name__ == "__main__":
    sys.exit(main())
