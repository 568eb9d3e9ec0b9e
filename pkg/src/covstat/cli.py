"""Command-line entry point: `covstat <command> ...`, JSON on stdout."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import core, expect, oracle, resolve, symrep, tiled
from . import words as W
from .asympt import LaurentSeriesQ

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


@dataclass
class Config:
    M: int = 6
    tol: float = 1e-9
    allow_five: bool = False
    fmt: str = "json"
    threads: int | None = None

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("series order M must be at least 1")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _num(x, tol):
    if isinstance(x, Fraction):
        return {"exact": str(x), "float": float(x)}
    if isinstance(x, float):
        return {"float": x, "tolerance": tol}
    return x


def _series(s: LaurentSeriesQ) -> dict:
    """Coefficients keyed by the power of n, with the error term."""
    coeffs = {str(-k): str(c) for k, c in sorted(s.coeffs.items())}
    return {"coefficients": coeffs,
            "error": None if s.order is None else f"O(n^{-s.order})",
            "text": s.render()}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, LaurentSeriesQ):
        return _series(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _load(path):
    with open(path) as fh:
        return tiled.TiledSurface.from_json(json.load(fh))


def _nrange(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text}")
        return list(range(lo, hi + 1))
    return [int(text)]


# ------------------------------------------------------------------ commands

def cmd_word(args, cfg):
    if args.action == "conj":
        return {"w1": args.word, "w2": args.other,
                "conjugate": W.are_conjugate(W.parse_word(args.word), W.parse_word(args.other))}
    w = W.parse_word(args.word)
    red = W.dehn_reduce(w)
    out = {"input": args.word, "reduced": str(red), "length": len(red)}
    if len(red):
        r = W.max_root(w)
        out.update(root=str(r.root), q=r.exponent, d_of_q=r.divisor_count)
    else:
        out.update(root=None, q=None, d_of_q=None)
    return out


def cmd_tiled(args, cfg):
    Y = _load(args.file)
    if args.action == "validate":
        bad = Y.violations()
        return {"valid": not bad, "violations": [m for m, _ in bad]}
    Y.validate()
    if args.action == "stats":
        out = Y.stats()
        out.update(BR=Y.is_boundary_reduced(), SBR=Y.is_strongly_boundary_reduced())
        if Y.boundary_cycles():
            out["max_defect"] = Y.max_defect()
        return out
    if args.action == "boundary":
        return {"cycles": Y.classify_boundary()}
    if cfg.fmt == "dot":
        return Y.to_dot()
    return Y.to_json()


def cmd_core(args, cfg):
    if args.action == "verify":
        Y = _load(args.target)
        failed = core.verify_core(Y)
        return {"ok": not failed, "failed": failed, **Y.stats()}
    Y, base = core.core_cyclic(args.target)
    if args.out:
        Path(args.out).write_text(json.dumps(Y.to_json()))
    if args.dot:
        Path(args.dot).write_text(Y.to_dot())
    out = Y.stats()
    out.update(word=args.target, basepoint=base,
               boundary=[c["letters"] for c in Y.classify_boundary()],
               SBR=Y.is_strongly_boundary_reduced())
    if not args.out:
        out["surface"] = Y.to_json()
    return out


def cmd_resolve(args, cfg):
    Y = _load(args.file)
    if args.kind == "growing":
        R = resolve.growing_resolution(Y, args.chi0)
    else:
        R = resolve.image_resolution(Y)
    manifest = R.manifest()
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for i, (Wsurf, _) in enumerate(R.elements):
            (d / f"element_{i:04d}.json").write_text(json.dumps(Wsurf.to_json()))
        (d / "manifest.json").write_text(json.dumps(manifest, indent=1))
    return {"kind": R.kind, "chi0": R.chi0, "size": len(R), "elements": manifest}


def cmd_zeta(args, cfg):
    z = symrep.zeta_exact(args.n, args.s)
    return {"n": args.n, "s": args.s, "zeta": str(z), "float": float(z)}


def cmd_zeta_poly(args, cfg):
    cs = symrep.zeta_poly(args.s, args.M)
    return {"s": args.s, "M": args.M, "coefficients": [str(c) for c in cs],
            "note": "zeta = 2 * sum c_k n^-k + O(n^-M)"}


def _frame_for(Y, seed):
    return expect.build_frame(Y, seed)


def cmd_expect(args, cfg):
    M = args.series
    if args.action == "fix":
        if M is not None:
            s, rep = expect.e_fix_series(args.target, M)
            return {"word": args.target, "M": M, "series": s, "report": rep}
        vals = {n: _num(expect.e_fix_exact(args.target, n, mode=args.mode), cfg.tol)
                for n in args.n}
        return {"word": args.target, "values": vals}
    Y = _load(args.target)
    if args.action == "emb":
        if M is not None:
            return {"M": M, "series": expect.e_emb_series(Y, M, _frame_for(Y, args.seed))}
        frame = _frame_for(Y, args.seed)
        return {"values": {n: _num(expect.e_emb_exact(Y, n, frame, args.mode), cfg.tol)
                           for n in args.n}}
    if M is not None:
        s, rep = expect.e_fix_subgroup(Y, M=M)
        return {"M": M, "series": s, "report": rep}
    return {"values": {n: _num(expect.e_fix_subgroup(Y, n=n), cfg.tol) for n in args.n}}


def cmd_oracle(args, cfg):
    if args.action == "count":
        c = oracle.count_homs(args.n, cfg.allow_five)
        return {"n": args.n, "count": c, "hurwitz": str(oracle.hurwitz_count(args.n))}
    if args.action == "fix":
        v = oracle.brute_e_fix(args.word, args.n, cfg.allow_five)
        return {"word": args.word, "n": args.n, "expectation": _num(v, cfg.tol)}
    est, err = oracle.sample_estimate(args.word, args.n, args.samples, args.seed)
    return {"word": args.word, "n": args.n, "samples": args.samples, "seed": args.seed,
            "estimate": est, "stderr": err}


# ------------------------------------------------------------------ parser

def build_parser():
    p = _Parser(prog="covstat", description="Random covers of the genus-2 surface.")
    p.add_argument("--M", type=int, default=6, help="default series truncation order")
    p.add_argument("--tol", type=float, default=1e-9, help="float comparison tolerance")
    p.add_argument("--allow-five", action="store_true", help="permit exhaustive oracle runs at n = 5")
    p.add_argument("--format", dest="fmt", choices=["json", "table", "dot"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("word", help="word problem, conjugacy and roots")
    w.add_argument("action", choices=["reduce", "conj", "root"])
    w.add_argument("word")
    w.add_argument("other", nargs="?")
    w.set_defaults(func=cmd_word)

    t = sub.add_parser("tiled", help="inspect a tiled surface JSON file")
    t.add_argument("action", choices=["validate", "stats", "boundary", "export"])
    t.add_argument("file")
    t.set_defaults(func=cmd_tiled)

    c = sub.add_parser("core", help="core surfaces")
    c.add_argument("action", choices=["build", "verify"])
    c.add_argument("target", help="word for build, JSON file for verify")
    c.add_argument("--out")
    c.add_argument("--dot")
    c.set_defaults(func=cmd_core)

    r = sub.add_parser("resolve", help="resolutions of a tiled surface")
    r.add_argument("file")
    r.add_argument("--kind", choices=["image", "growing"], default="image")
    r.add_argument("--chi0", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_resolve)

    z = sub.add_parser("zeta", help="exact zeta function of S_n")
    z.add_argument("n", type=int)
    z.add_argument("s", type=int)
    z.set_defaults(func=cmd_zeta)

    zp = sub.add_parser("zeta-poly", help="expansion of zeta in 1/n")
    zp.add_argument("s", type=int)
    zp.add_argument("M", type=int)
    zp.set_defaults(func=cmd_zeta_poly)

    e = sub.add_parser("expect", help="expected fixed points and embeddings")
    e.add_argument("action", choices=["fix", "emb", "subgroup"])
    e.add_argument("target", help="word for fix, JSON file otherwise")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_nrange, help="n or a range lo..hi")
    g.add_argument("--series", type=int, metavar="M")
    e.add_argument("--mode", choices=["float", "rational"], default="float")
    e.add_argument("--seed", type=int, default=None, help="frame seed (default: identity frame)")
    e.set_defaults(func=cmd_expect)

    o = sub.add_parser("oracle", help="brute force and sampling")
    o.add_argument("action", choices=["count", "fix", "sample"])
    o.add_argument("args", nargs="+")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)
    return p


def _oracle_args(args):
    need = {"count": 1, "fix": 2, "sample": 3}[args.action]
    if len(args.args) != need:
        raise UsageError(f"oracle {args.action} takes {need} positional arguments")
    try:
        if args.action == "count":
            args.n = int(args.args[0])
        else:
            args.word, args.n = args.args[0], int(args.args[1])
            if args.action == "sample":
                args.samples = int(args.args[2])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _table(obj, indent=""):
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_table(v, indent) if isinstance(v, (dict, list)) else f"{indent}- {v}"
                         for v in obj)
    return f"{indent}{obj}"


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = Config(args.M, args.tol, args.allow_five, args.fmt,
                     int(os.environ["COVSTAT_THREADS"]) if os.environ.get("COVSTAT_THREADS") else None)
        if args.command == "oracle":
            _oracle_args(args)
        if args.command == "word" and args.action == "conj" and args.other is None:
            raise UsageError("word conj needs two words")
        if args.command == "expect" and args.series is None and args.action == "fix" and not args.n:
            raise UsageError("expect fix needs --n or --series")
        result = args.func(args, cfg)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, AssertionError, KeyError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    if isinstance(result, str):
        print(result)
    elif cfg.fmt == "table":
        print(_table(_jsonable(result)))
    else:
        print(json.dumps(_jsonable(result), indent=1))
    return EXIT_OK


def main():
    try:
        code = run()
    except BrokenPipeError:
        # output piped into a closed reader such as `head`
        sys.stderr.close()
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
