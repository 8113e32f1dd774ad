"""Command-line entry point.

Exit codes: 0 success, 1 contradiction found by ``infer``, 2 input error,
3 resource cap exceeded.  Errors are printed as ``module: message``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from fractions import Fraction

from . import orbit, perm
from .complex import DEFAULT_SIMPLEX_CAP, SimplicialComplex, rips
from .errors import InputError, TdlcError
from .germ import DEFAULT_VERTEX_CAP, ball, parse_germ, wreath_cayley_abels, wreath_from_json
from .homology import simplicial_homology
from .inference import close, load as load_script, report_json, report_text
from .scan import ScanGrid, brown_scan

MODULE = "cli"


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    germ: str | None = None
    radii: list = field(default_factory=list)
    scales: list = field(default_factory=list)
    dims: list = field(default_factory=lambda: [1])
    inner_margin: int | None = None
    ring: str = "Q"
    output: str | None = None
    vertex_cap: int = DEFAULT_VERTEX_CAP
    simplex_cap: int = DEFAULT_SIMPLEX_CAP
    workers: int = 1

    @classmethod
    def from_args(cls, args, caps):
        cfg = cls(args.command)
        cfg.inputs = [v for k, v in vars(args).items() if k == "file"]
        cfg.germ = getattr(args, "germ", None)
        cfg.output = getattr(args, "output", None)
        cfg.vertex_cap = caps.get("vertices", DEFAULT_VERTEX_CAP)
        cfg.simplex_cap = caps.get("simplices", DEFAULT_SIMPLEX_CAP)
        if args.command == "brown-scan":
            cfg.radii = _int_list(args.radii, "--radii")
            cfg.scales = _int_list(args.scales, "--scales")
            cfg.dims = _int_list(args.dims, "--dims")
            cfg.inner_margin = args.margin
            cfg.ring = args.ring.upper()
            cfg.workers = args.workers
        return cfg


def parse_caps(text):
    """``vertices=N,simplices=M`` to a dict (either key optional)."""
    caps = {}
    for part in filter(None, (text or "").split(",")):
        key, sep, val = part.partition("=")
        if not sep or key not in ("vertices", "simplices"):
            raise InputError(MODULE, f"bad cap {part!r}; use vertices=N,simplices=M")
        try:
            n = int(val)
        except ValueError:
            raise InputError(MODULE, f"cap {key} must be an integer") from None
        if n < 1:
            raise InputError(MODULE, f"cap {key} must be positive")
        caps[key] = n
    return caps


def _int_list(text, what):
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(MODULE, f"{what} must be a comma-separated list of integers") from None
    if not out:
        raise InputError(MODULE, f"{what} is empty")
    return out


def _read_json(path, module):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError(module, f"cannot read {path}: {exc}") from None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_homology(args, cfg):
    K = SimplicialComplex.load(args.file)
    H = simplicial_homology(K, args.ring.upper(), reduced=args.reduced)
    print(H)
    return 0


def cmd_rips(args, cfg):
    germ = parse_germ(args.germ)
    b = ball(germ, args.r, cap=cfg.vertex_cap)
    K = rips(b, args.d, args.max_dim, cap=cfg.simplex_cap)
    H = simplicial_homology(K, "Q", reduced=True)
    print(f"germ {germ.spec()} r={args.r} d={args.d} max_dim={args.max_dim}")
    print(f"ball: {b.n} vertices, {len(b.edges)} edges")
    print("f-vector: " + ",".join(str(x) for x in K.f_vector()))
    print(f"euler characteristic: {K.euler_characteristic()}")
    print(f"reduced homology over Q: {H}")
    if args.output:
        _emit(K.to_json() + "\n", args.output)
    return 0


def cmd_brown_scan(args, cfg):
    grid = ScanGrid(
        parse_germ(cfg.germ),
        cfg.radii,
        cfg.scales,
        cfg.dims,
        inner_margin=cfg.inner_margin,
        ring=cfg.ring,
        workers=cfg.workers,
        vertex_cap=cfg.vertex_cap,
        simplex_cap=cfg.simplex_cap,
    )
    prof = brown_scan(grid)
    _emit(prof.to_csv(), args.output)
    if args.output:
        for k, verdict in prof.summary().items():
            print(f"k={k}: {verdict}")
    return 0


def cmd_deflate(args, cfg):
    oc = orbit.OrbitComplex.load(args.file)
    betti = orbit.deflate_homology(oc)
    print("orbits per dimension: " + ",".join(str(n) for n in oc.counts()))
    print(", ".join(f"dH{p}=" + ("0" if b == 0 else "Q" if b == 1 else f"Q^{b}") for p, b in enumerate(betti)))
    return 0


def cmd_cd_report(args, cfg):
    oc = orbit.OrbitComplex.load(args.file)
    rep = orbit.cd_report(oc)
    print(f"cd_Q upper bound (dim X): {rep.upper}")
    print(f"top degree with dH != 0: {rep.lower}")
    print("deflated betti: " + ",".join(str(b) for b in rep.betti))
    print("contractibility: " + ("asserted by input" if rep.contractible_asserted else "not asserted"))
    return 0


def _element(sysm, text):
    if text in (None, "e", "1"):
        return sysm.G.identity
    try:
        return sysm.G.element([int(x) for x in text.split(",")])
    except ValueError:
        raise InputError("perm", f"bad group element {text!r}; use comma-separated images") from None


def _fmt_perm(p):
    return "[" + ",".join(str(x) for x in p) + "]"


def _fmt_vector(vec):
    if not vec.coeffs:
        return "0"
    return " + ".join(f"{c}*{_fmt_perm(x)}" for x, c in vec.coeffs)


def _fmt_row(row):
    return "[" + ", ".join(str(v) for v in row) + "]"


def cmd_perm(args, cfg):
    data = _read_json(args.file, "perm")
    sysm = perm.CosetSystem.from_json(data)
    G = sysm.G
    print(f"group: order {G.order}, degree {G.degree}")
    c = args.cmd
    if c == "transfer":
        vec = perm.transfer(sysm, args.U, args.V, _element(sysm, args.x))
        print(f"eta({args.U}->{args.V})({_fmt_perm(_element(sysm, args.x))}{args.U}) = {_fmt_vector(vec)}")
    elif c == "theta":
        rep = perm.Representation.by_name(G, args.module)
        if args.a:
            try:
                a = [Fraction(x) for x in args.a.split(",")]
            except ValueError:
                raise InputError("perm", "--a must be comma-separated rationals") from None
        else:
            a = [Fraction(int(i == 0)) for i in range(rep.dim)]
        out = perm.theta(sysm, args.U, _element(sysm, args.g), rep, a)
        print(f"theta = {_fmt_row(out)}")
    elif c == "mackey":
        factors = perm.mackey_restrict(sysm, args.U, args.V)
        for f in factors:
            print(f"g={_fmt_perm(f.rep)} |U cap gVg^-1|={len(f.stabilizer)} index={f.index}")
        print(f"sum of indices = {sum(f.index for f in factors)}")
    elif c == "coinvariants":
        col = perm.coinvariants_bi(sysm, args.N, args.U)
        print(f"collapsed dimension |G:UN| = {col.dim}")
        print(f"coinvariant rank (direct) = {col.coinvariant_rank}")
        for row in col.matrix:
            print("  " + _fmt_row(row))
    elif c == "summand":
        w = perm.open_summand_check(sysm, args.H, args.U)
        print(f"summand dimension {len(w.proj)} inside {len(w.incl)}")
        print(f"proj o incl = id: {w.identity}")
        print(f"H-equivariant: {w.equivariant}")
    elif c == "bar-homology":
        for k in range(0, args.k + 1):
            print(f"H{k}(G;Q) dim = {perm.bar_homology_q(G, k)}")
    return 0


def cmd_infer(args, cfg):
    script = load_script(args.file)
    cl = close(script)
    sys.stdout.write(report_json(cl) if args.json else report_text(cl))
    return 1 if cl.contradictions else 0


def cmd_wreath(args, cfg):
    spec, U = wreath_from_json(_read_json(args.file, "germ"))
    b = wreath_cayley_abels(spec, U)
    edges = b.edges
    degrees = sorted({len(a) for a in b.adjacency})
    print(f"vertices: {b.n}")
    print(f"edges: {len(edges)}")
    print("degrees: " + ",".join(str(d) for d in degrees))
    for u, v in edges:
        print(f"  {u} -- {v}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="tdlc", description="Finiteness-property toolkit for t.d.l.c. groups.")
    p.add_argument("--caps", default="", help="resource caps, e.g. vertices=200000,simplices=2000000")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--caps", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    s = sub.add_parser("homology", parents=[common], help="homology of a simplicial complex JSON file")
    s.add_argument("file")
    s.add_argument("--ring", choices=["z", "q", "Z", "Q"], default="z")
    s.add_argument("--reduced", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("rips", parents=[common], help="Rips complex of a germ ball")
    s.add_argument("germ")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rips)

    s = sub.add_parser("brown-scan", parents=[common], help="essential-triviality scan over Rips windows")
    s.add_argument("germ")
    s.add_argument("--radii", required=True)
    s.add_argument("--scales", required=True)
    s.add_argument("--dims", default="1")
    s.add_argument("--margin", type=int, default=None)
    s.add_argument("--ring", choices=["z", "q", "Z", "Q"], default="q")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_brown_scan)

    s = sub.add_parser("deflate", parents=[common], help="deflated homology of an orbit complex")
    s.add_argument("file")
    s.set_defaults(func=cmd_deflate)

    s = sub.add_parser("cd-report", parents=[common], help="cd_Q bounds from an orbit complex")
    s.add_argument("file")
    s.set_defaults(func=cmd_cd_report)

    s = sub.add_parser("perm", parents=[common], help="permutation-module calculus on a finite group")
    s.add_argument("cmd", choices=["transfer", "theta", "mackey", "coinvariants", "summand", "bar-homology"])
    s.add_argument("file")
    for flag in ("--U", "--V", "--N", "--H"):
        s.add_argument(flag, default="G" if flag == "--U" else "1")
    s.add_argument("--x", default="e")
    s.add_argument("--g", default="e")
    s.add_argument("--a", default=None)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--module", default="regular")
    s.set_defaults(func=cmd_perm)

    s = sub.add_parser("infer", parents=[common], help="run the finiteness-property rule engine on a script")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_infer)

    s = sub.add_parser("wreath", parents=[common], help="Cayley-Abels graph of a finite wreath product")
    s.add_argument("file")
    s.set_defaults(func=cmd_wreath)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args, parse_caps(args.caps))
        return args.func(args, cfg)
    except TdlcError as exc:
        print(str(exc), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
