"""Command-line front end: ``sinfty {axioms,zoo,compute,certify,oracle}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import oracle, sinf, zoo
from .galg import AlgebraError, GradedAlgebra, verify_axioms
from .gmod import GradedModule, ModuleError, dual, regular_module

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ASSOCIATIVITY = 2
EXIT_SEMISIMPLE = 3
EXIT_TRIANGULAR = 4
EXIT_SELF_INJECTIVE = 5
EXIT_INPUT = 6
EXIT_DISJOINT = 7

_AXIOM_EXIT = {
    "triangular": EXIT_TRIANGULAR,
    "semisimple": EXIT_SEMISIMPLE,
    "self-injective": EXIT_SELF_INJECTIVE,
}


class CliError(Exception):
    def __init__(self, reason: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.reason = reason
        self.code = code


@dataclass
class RunConfig:
    engine: str
    degrees: range
    shifts: range
    fmt: str = "json"
    depth_cap: int = 24
    variant: str = "reduced"
    threads: int = 1

    def __post_init__(self):
        if len(self.degrees) == 0 or len(self.shifts) == 0:
            raise CliError("window", "windows must be non-empty")
        if self.depth_cap <= 0 or self.threads <= 0:
            raise CliError("cap", "caps must be positive")


def threads_from_env() -> int:
    raw = os.environ.get("SINFTY_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise CliError("threads", f"SINFTY_THREADS={raw!r} is not an integer") from exc
    return max(1, n)


def parse_window(text: str) -> range:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError as exc:
        raise CliError("window", f"window {text!r} is not of the form lo:hi") from exc
    if hi < lo:
        raise CliError("window", f"window {text!r} is empty")
    return range(lo, hi + 1)


# ---------------------------------------------------------------- loading


def load_algebra(path: str) -> GradedAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError("io", str(exc)) from exc
    try:
        return GradedAlgebra.from_json(text, label=Path(path).stem)
    except AlgebraError as exc:
        code = EXIT_ASSOCIATIVITY if exc.reason == "associativity" else EXIT_INPUT
        raise CliError(exc.reason, str(exc), code) from exc


def load_module(spec: str, algebra: Optional[GradedAlgebra]) -> GradedModule:
    """A module file, or one of ``trivial``, ``regular``, ``verma`` / ``verma:LAM``."""
    if spec in ("trivial", "k", "regular") or spec.startswith("verma"):
        if algebra is None:
            raise CliError("algebra", f"--algebra is required for the built-in module {spec!r}")
        if spec in ("trivial", "k"):
            return zoo.trivial_module(algebra)
        if spec == "regular":
            return regular_module(algebra)
        lam = int(spec.split(":")[1]) if ":" in spec else 0
        return zoo.baby_verma(algebra, lam)
    try:
        data = json.loads(Path(spec).read_text())
    except OSError as exc:
        raise CliError("io", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise CliError("parse", f"{spec}: line {exc.lineno}: {exc.msg}") from exc
    if algebra is None:
        ref = data.get("algebra")
        if not ref:
            raise CliError("algebra", f"{spec} names no algebra and --algebra is missing")
        algebra = load_algebra(str(Path(spec).parent / ref))
    try:
        m = GradedModule.from_dict(data, algebra)
    except ModuleError as exc:
        raise CliError(exc.reason if hasattr(exc, "reason") else "module", f"{spec}: {exc}") from exc
    m.label = Path(spec).stem
    return m


# ---------------------------------------------------------------- commands


def cmd_axioms(args) -> int:
    a = load_algebra(args.algebra)
    try:
        report = verify_axioms(a)
    except AlgebraError as exc:
        code = EXIT_ASSOCIATIVITY if exc.reason == "associativity" else EXIT_INPUT
        raise CliError(exc.reason, str(exc), code) from exc
    print(json.dumps(report.to_dict(), indent=1))
    if not report.ok:
        print(f"reason: {report.failure}", file=sys.stderr)
        return _AXIOM_EXIT[report.failure]
    return EXIT_OK


def cmd_zoo_emit(args) -> int:
    try:
        a = zoo.build(zoo.ZooSpec(args.family, args.p, args.l, args.zeta))
    except (ValueError, AlgebraError) as exc:
        raise CliError("zoo", str(exc)) from exc
    print(a.to_json())
    return EXIT_OK


def cmd_zoo_module(args) -> int:
    a = load_algebra(args.algebra)
    m = load_module(args.kind, a)
    print(json.dumps(m.to_dict(args.algebra), separators=(",", ":")))
    return EXIT_OK


def _engine_table(engine: str, x, y, degrees, shifts, cfg: RunConfig) -> sinf.ExtTable:
    if engine == "ext":
        return sinf.ext(x, y, degrees, shifts)
    if engine == "sinf":
        return sinf.semi_infinite_ext(x, y, degrees, shifts, variant=cfg.variant, depth_cap=cfg.depth_cap)
    if engine == "hom-through":
        return sinf.hom_through_table(x, y, degrees, shifts, cap=cfg.depth_cap)
    if engine == "tor":
        xr = x if x.side == "right" else dual(x)
        t = sinf.tor(xr, y, degrees, shifts)
        return t
    if engine == "s":
        return sinf.s_derived(y, degrees, shifts)
    raise CliError("engine", f"unknown engine {engine!r}")


def compute_table(x, y, cfg: RunConfig) -> sinf.ExtTable:
    """Entries computed in shift chunks, possibly in parallel; assembled in order."""
    shifts = list(cfg.shifts)
    if cfg.threads <= 1 or len(shifts) <= 1:
        return _engine_table(cfg.engine, x, y, cfg.degrees, shifts, cfg)
    n = min(cfg.threads, len(shifts))
    chunks = [shifts[k::n] for k in range(n)]
    with ThreadPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(lambda ch: _engine_table(cfg.engine, x, y, cfg.degrees, ch, cfg), chunks))
    out = sinf.ExtTable(parts[0].algebra, parts[0].x, parts[0].y, parts[0].engine)
    for part in parts:
        out.entries.update(part.entries)
        out.notes.update(part.notes)
    out.entries = dict(sorted(out.entries.items()))
    return out


def cmd_compute(args) -> int:
    cfg = RunConfig(
        args.engine,
        parse_window(args.degrees),
        parse_window(args.shifts),
        args.format,
        args.depth_cap,
        args.variant,
        threads_from_env(),
    )
    a = load_algebra(args.algebra) if args.algebra else None
    if a is None:
        # built-in names need an algebra; take it from whichever argument is a file
        for spec in (args.x, args.y):
            if spec and Path(spec).is_file():
                a = load_module(spec, None).algebra
                break
    y = load_module(args.y, a)
    x = load_module(args.x, a) if args.x else None
    if x is None:
        if cfg.engine != "s":
            raise CliError("input", "--x is required for this engine")
        x = y
    alg = a if a is not None else y.algebra
    if cfg.engine in ("sinf", "hom-through"):
        report = verify_axioms(alg)
        if not report.ok:
            raise CliError(report.failure, f"axiom check failed: {report.failure}", _AXIOM_EXIT[report.failure])
    table = compute_table(x, y, cfg)
    table.algebra = alg.label or table.algebra
    for key, reason in sorted(table.notes.items()):
        print(f"uncertified {key}: {reason}", file=sys.stderr)
    table.entries = {k: v for k, v in table.entries.items() if v[1]}
    text = table.to_json() if cfg.fmt == "json" else table.to_csv()
    if args.out:
        Path(args.out).write_text(text + ("\n" if not text.endswith("\n") else ""))
        if cfg.fmt == "json" and args.csv:
            Path(args.csv).write_text(table.to_csv())
    else:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))
    return EXIT_OK


def _read_table(path: str) -> sinf.ExtTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError("io", str(exc)) from exc
    try:
        if path.endswith(".csv"):
            t = sinf.ExtTable()
            lines = [ln.split(",") for ln in text.strip().splitlines()[1:]]
            for i, m, d, c in lines:
                t.set(int(i), int(m), int(d), c.strip() == "true")
            return t
        return sinf.ExtTable.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError("parse", f"{path}: malformed table ({exc})") from exc


def cmd_certify(args) -> int:
    t1, t2 = _read_table(args.first), _read_table(args.second)
    c1 = {k for k, (_, c) in t1.entries.items() if c}
    c2 = {k for k, (_, c) in t2.entries.items() if c}
    common = c1 & c2
    if not common:
        raise CliError("disjoint", "the tables share no certified entries", EXIT_DISJOINT)
    bad = t1.compare(t2)
    for (i, m), d1, d2 in bad:
        print(f"mismatch at i={i} m={m}: {d1} vs {d2}")
    if bad:
        print("reason: mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"agree on {len(common)} certified entries")
    return EXIT_OK


def cmd_oracle_lc(args) -> int:
    window = parse_window(args.window)
    try:
        lc = oracle.local_cohomology_cone(window, args.p)
    except oracle.OracleError as exc:
        raise CliError(exc.reason, str(exc)) from exc
    print(json.dumps(lc.to_dict(), indent=1))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sinfty", description="Semi-infinite Ext over finite-dimensional graded algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", help="verify the structural assumptions on an algebra file")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_axioms)

    pz = sub.add_parser("zoo", help="built-in algebras")
    zsub = pz.add_subparsers(dest="zoo_command", required=True)
    pe = zsub.add_parser("emit", help="print an algebra as JSON")
    pe.add_argument("--family", required=True, choices=["restricted-sl2", "small-quantum-sl2", "taft-borel"])
    pe.add_argument("--p", type=int, required=True)
    pe.add_argument("--l", type=int, default=None)
    pe.add_argument("--zeta", type=int, default=None)
    pe.set_defaults(func=cmd_zoo_emit)
    pm = zsub.add_parser("module", help="print a built-in module as JSON")
    pm.add_argument("--algebra", required=True)
    pm.add_argument("--kind", default="trivial", help="trivial, regular, verma or verma:LAM")
    pm.set_defaults(func=cmd_zoo_module)

    pc = sub.add_parser("compute", help="compute a table of dimensions")
    pc.add_argument("--engine", required=True, choices=["ext", "sinf", "hom-through", "tor", "s"])
    pc.add_argument("--algebra", default=None)
    pc.add_argument("--x", default=None, help="module file or built-in name")
    pc.add_argument("--y", required=True, help="module file or built-in name")
    pc.add_argument("--degrees", default="-3:3")
    pc.add_argument("--shifts", default="-8:8")
    pc.add_argument("--format", choices=["json", "csv"], default="json")
    pc.add_argument("--out", default=None)
    pc.add_argument("--csv", default=None, help="also write the CSV mirror here")
    pc.add_argument("--depth-cap", type=int, default=24)
    pc.add_argument("--variant", default="reduced", choices=["reduced", "naive", "padded", "reduced-padded"])
    pc.set_defaults(func=cmd_compute)

    pv = sub.add_parser("certify", help="compare two tables entrywise")
    pv.add_argument("first")
    pv.add_argument("second")
    pv.set_defaults(func=cmd_certify)

    po = sub.add_parser("oracle", help="independent computations")
    osub = po.add_subparsers(dest="oracle_command", required=True)
    pl = osub.add_parser("local-cohomology", help="local cohomology of the sl2 nilpotent cone")
    pl.add_argument("--window", default="-6:6")
    pl.add_argument("--p", type=int, default=3)
    pl.set_defaults(func=cmd_oracle_lc)
    return ap


_WINDOW_OPTS = ("--window", "--degrees", "--shifts")


def _glue_windows(argv: list) -> list:
    """``--window -6:6`` -> ``--window=-6:6`` so argparse does not read ``-6:6`` as a flag."""
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _WINDOW_OPTS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_windows(argv))
    try:
        return int(args.func(args))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"reason: {exc.reason}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
