"""Command-line entry point: ``convcodes <subcommand> ...``.

Exit status is 0 on success, 1 on a domain failure (for instance an
unrecoverable erasure pattern or a failed predicate with ``--strict``) and 2
on usage errors or malformed input files.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import channels, constructions, decoders, io, metrics, polyalg, sysrep
from .code import ConvolutionalCode, as_poly_vector
from .galois import field_create
from .minors import BudgetExceeded

RECIPES = {
    "justesen": "rate 1/n MDS code from shifted root sets",
    "gll": "rate 1/n MDS code from a Vandermonde-weighted sum",
    "smith": "quasi-cyclic MDS code from a polyphase split",
    "iso-mds": "rate 1/n MDS code from a pole-placed diagonal system",
    "superregular": "MDP code from a binomial superregular matrix",
    "anp": "MDP code from a Hankel-block Toeplitz matrix",
    "complete-binomial": "complete MDP code from binomial coefficients",
    "complete-alpha": "complete MDP code from powers of a primitive element",
}


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"recipe {args.recipe!r} needs {' '.join(missing)}")


def build_recipe(args) -> tuple[ConvolutionalCode, list[str]]:
    r = args.recipe
    N = args.N or 1
    if r == "justesen":
        _need(args, "n", "p")
        code = constructions.justesen_mds(args.n, field_create(args.p, N))
    elif r == "gll":
        _need(args, "n", "delta", "p")
        code = constructions.gll_mds(args.n, args.delta, field_create(args.p, N))
    elif r == "smith":
        _need(args, "n", "k", "delta", "a", "p")
        code = constructions.smith_mds(args.n, args.k, args.delta, args.a, args.p, N)
    elif r == "iso-mds":
        _need(args, "n", "delta", "p")
        code = sysrep.mds_from_system(args.n, args.delta, field_create(args.p, N))
        code.recipe = constructions.ConstructionRecipe("iso-mds", {"n": args.n, "delta": args.delta})
    elif r == "superregular":
        _need(args, "n", "k", "delta")
        L = args.delta // args.k + args.delta // (args.n - args.k)
        T, _, F = constructions.binomial_superregular((L + 1) * (2 * args.n - args.k - 1))
        code = constructions.mdp_from_superregular(args.n, args.k, args.delta, T, F)
    elif r == "anp":
        _need(args, "n", "k", "delta", "p")
        code = constructions.anp_mdp(args.n, args.k, args.delta, field_create(args.p, N))
    elif r == "complete-binomial":
        _need(args, "n", "k", "delta")
        code, _ = constructions.complete_mdp_binomial(args.n, args.k, args.delta, args.p)
    elif r == "complete-alpha":
        _need(args, "n", "k", "delta", "p")
        code = constructions.complete_mdp_alpha(args.n, args.k, args.delta, args.p, N)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown recipe {r!r}")
    rec = getattr(code, "recipe", None)
    header = [f"construction: {RECIPES[r]}"]
    if rec is not None:
        header.append("parameters: " + " ".join(f"{k}={v}" for k, v in rec.params.items()))
        header.append(f"field size guarantee met: {'yes' if rec.guaranteed else 'no'}")
        header.extend(rec.notes)
    return code, header


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_literal(M) -> str:
    return " | ".join(io.format_poly_row(M.row(i)) for i in range(M.rows))


# -- subcommands


def cmd_construct(args) -> int:
    code, header = build_recipe(args)
    _emit(io.format_code(code, "generator", header), args.output)
    return 0


def _verdict_items(name, fn):
    try:
        v = fn()
    except (ValueError, BudgetExceeded) as exc:
        return [(name, "undetermined"), (f"{name}_detail", str(exc))]
    items = [(name, bool(v))]
    if not v and v.witness is not None:
        items.append((f"{name}_witness", v.witness))
    if v.detail:
        items.append((f"{name}_detail", v.detail))
    return items


def cmd_analyze(args) -> int:
    code = io.read_code(args.code)
    n, k, d = code.params
    items = [("n", n), ("k", k), ("degree", d), ("row_degrees", code.row_degrees),
             ("L", code.L), ("M", code.M), ("left_prime", code.noncatastrophic),
             ("row_reduced", polyalg.is_row_reduced(code.G)),
             ("external_degree", polyalg.external_degree(code.G)),
             ("singleton_bound", metrics.generalized_singleton(n, k, d))]
    if code.noncatastrophic:
        items.append(("parity_check", _matrix_literal(code.H)))
    want_all = args.all
    if args.free_distance or want_all:
        if code.noncatastrophic:
            items.append(("free_distance", metrics.free_distance(code)))
        else:
            cap = d + 1
            items.append(("free_distance", metrics.free_distance(code, "bruteforce", cap=cap)))
            items.append(("free_distance_note", f"messages of degree <= {cap} only"))
    J = args.column_distances if args.column_distances is not None else (code.L if want_all else None)
    if J is not None:
        try:
            items.append(("column_distances", metrics.column_distances(code, J)))
        except (ValueError, BudgetExceeded) as exc:
            items.append(("column_distances", "undetermined"))
            items.append(("column_distances_detail", str(exc)))
        items.append(("column_bounds", [metrics.column_bound(n, k, j) for j in range(J + 1)]))
    failed = False
    checks = [("mds", args.mds, lambda: metrics.is_mds(code)),
              ("mdp", args.mdp, lambda: metrics.is_mdp(code)),
              ("reverse_mdp", args.reverse_mdp, lambda: metrics.is_reverse_mdp(code)),
              ("complete_mdp", args.complete_mdp, lambda: metrics.is_complete_mdp(code))]
    for name, flag, fn in checks:
        if flag or want_all:
            got = _verdict_items(name, fn)
            failed |= got[0][1] is not True
            items.extend(got)
    sys.stdout.write(io.format_report(items))
    return 1 if (failed and args.strict) else 0


def _parse_message(code: ConvolutionalCode, text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = " ; ".join(io._lines(fh.read()))
    parts = [p for p in text.split(";")]
    if len(parts) != code.k:
        raise UsageError(f"message needs {code.k} ';'-separated polynomials")
    return [io.parse_poly(code.field, p) for p in parts]


def cmd_encode(args) -> int:
    code = io.read_code(args.code)
    u = _parse_message(code, args.message)
    c = decoders.codeword_array(code, u)
    if c.shape[0] == 0:
        c = np.zeros((1, code.n), dtype=np.int64)
    _emit(io.format_stream(c), args.output)
    return 0


def _pattern(text: str):
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        t, _, i = item.partition(":")
        out.append((int(t), int(i)))
    return out


def cmd_channel(args) -> int:
    s = io.read_stream(args.stream)
    if args.mode == "erase":
        if args.rate is None and args.pattern is None and args.burst is None:
            raise UsageError("erase needs --rate, --pattern or --burst")
        burst = tuple(int(x) for x in args.burst.split(",")) if args.burst else None
        w = channels.erase_channel(s, rate=args.rate, pattern=_pattern(args.pattern) if args.pattern
                                   else None, burst=burst, seed=args.seed)
        _emit(io.format_stream(w.values), args.output)
    else:
        if args.eps is None:
            raise UsageError("qsc needs --eps")
        if args.code:
            F = io.read_code(args.code).field
        elif args.p:
            F = field_create(args.p, args.N or 1)
        else:
            raise UsageError("qsc needs --code or --p to know the field")
        _emit(io.format_stream(channels.qsc_channel(F, s, args.eps, args.seed)), args.output)
    return 0


def _decode_report(rep: decoders.DecodeReport, n: int) -> list:
    items = [("status", rep.status), ("erasures", rep.erasures), ("recovered", rep.recovered_count),
             ("unrecovered", len(rep.unrecovered))]
    if rep.unrecovered:
        items.append(("unrecovered_positions",
                      " ".join(f"{t}:{i}" for t, i in sorted(rep.unrecovered))))
    for e, tr in enumerate(rep.trace):
        items.append((f"window_{e}", f"{tr.direction} {tr.event} offset={tr.offset} j={tr.size} "
                                     f"solved={str(tr.solved).lower()} rank={tr.rank} "
                                     f"unknowns={tr.unknowns}"))
    return items


def cmd_decode_erasure(args) -> int:
    code = io.read_code(args.code)
    w = io.read_stream(args.stream, code.n, code.field)
    fn = decoders.erasure_decode_bidirectional if args.bidirectional else decoders.erasure_decode_forward
    rep = fn(code, w, jmax=args.jmax, terminated=not args.prefix)
    _emit(io.format_stream(rep.recovered), args.output)
    report = io.format_report(_decode_report(rep, code.n))
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report)
    else:
        sys.stderr.write(report)
    return 0 if rep.status == "complete" else 1


def cmd_decode_viterbi(args) -> int:
    code = io.read_code(args.code)
    r = io.read_stream(args.stream, code.n, code.field)
    if (r == channels.ERASED).any():
        raise UsageError("Viterbi decoding needs a stream without erasures")
    res = decoders.viterbi_decode(code, r)
    _emit(io.format_stream(res.codeword), args.output)
    report = io.format_report([("distance", res.distance),
                               ("message", " ; ".join(io.format_poly(p) for p in res.message))])
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report)
    else:
        sys.stderr.write(report)
    return 0


def cmd_realize(args) -> int:
    code = io.read_code(args.code)
    _emit(io.format_iso(sysrep.iso_from_code(code)), args.output)
    return 0


def cmd_codeify(args) -> int:
    iso = io.read_iso(args.iso)
    code = sysrep.code_from_iso(iso, original_order=not args.iso_order)
    _emit(io.format_code(code), args.output)
    return 0


def cmd_simulate(args) -> int:
    if args.code:
        code = io.read_code(args.code)
    elif args.recipe:
        code, _ = build_recipe(args)
    else:
        raise UsageError("simulate needs --code or --recipe")
    rng = channels.make_rng(args.seed)
    F = code.field
    msg = rng.integers(0, F.q, size=(code.k, args.length))
    u = as_poly_vector(F, [list(row) for row in msg])
    sent = decoders.codeword_array(code, u, args.length + code.memory)
    items = [("seed", args.seed if args.seed is not None else channels.DEFAULT_SEED),
             ("n", code.n), ("k", code.k), ("degree", code.degree), ("steps", sent.shape[0]),
             ("channel", args.channel)]
    chan_seed = int(rng.integers(0, 2**63 - 1))
    if args.channel == "erase":
        burst = tuple(int(x) for x in args.burst.split(",")) if args.burst else None
        w = channels.erase_channel(sent, rate=args.rate if args.rate is not None or burst else 0.1,
                                   burst=burst, seed=chan_seed)
        items.append(("erasures", w.count()))
        fn = decoders.erasure_decode_bidirectional if args.bidirectional else \
            decoders.erasure_decode_forward
        rep = fn(code, w)
        got = rep.recovered
        items += [("status", rep.status), ("recovered", rep.recovered_count),
                  ("unrecovered", len(rep.unrecovered))]
        wrong = int(((got != channels.ERASED) & (got != sent)).sum())
    else:
        eps = 0.05 if args.eps is None else args.eps
        r = channels.qsc_channel(F, sent, eps, chan_seed)
        items.append(("symbol_errors", int((r != sent).sum())))
        res = decoders.viterbi_decode(code, r)
        got = res.codeword[:sent.shape[0]]
        items.append(("distance", res.distance))
        wrong = int((got != sent).sum()) + int(res.codeword[sent.shape[0]:].any())
        items.append(("status", "complete"))
    items.append(("wrong_symbols", wrong))
    ok = wrong == 0 and dict(items)["status"] == "complete"
    items.append(("success", ok))
    _emit(io.format_report(items), args.output)
    return 0 if ok else 1


# -- parser


def _recipe_flags(p):
    for name in ("n", "k", "delta", "p", "N", "a"):
        p.add_argument(f"--{name}", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convcodes",
                                     description="Convolutional codes over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code from a named recipe")
    p.add_argument("recipe", choices=sorted(RECIPES))
    _recipe_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="parameters, distances and optimality predicates")
    p.add_argument("code")
    p.add_argument("--free-distance", action="store_true")
    p.add_argument("--column-distances", type=int, metavar="J")
    p.add_argument("--mds", action="store_true")
    p.add_argument("--mdp", action="store_true")
    p.add_argument("--reverse-mdp", action="store_true")
    p.add_argument("--complete-mdp", action="store_true")
    p.add_argument("--all", action="store_true", help="every distance and predicate")
    p.add_argument("--strict", action="store_true", help="exit 1 when a requested predicate fails")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", help="encode a message given as ';'-separated polynomials")
    p.add_argument("code")
    p.add_argument("message", help="e.g. '1 1 ; 0 1' or @file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("channel", help="pass a stream through a channel")
    p.add_argument("mode", choices=["erase", "qsc"])
    p.add_argument("stream")
    p.add_argument("--rate", type=float)
    p.add_argument("--pattern", help="comma-separated step:position pairs")
    p.add_argument("--burst", help="start,length in steps")
    p.add_argument("--eps", type=float)
    p.add_argument("--code")
    p.add_argument("--p", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("decode-erasure", help="sliding-window erasure recovery")
    p.add_argument("code")
    p.add_argument("stream")
    p.add_argument("--bidirectional", action="store_true")
    p.add_argument("--jmax", type=int)
    p.add_argument("--prefix", action="store_true",
                   help="the stream is a prefix, not a complete codeword")
    p.add_argument("--report")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode_erasure)

    p = sub.add_parser("decode-viterbi", help="minimum distance decoding on the trellis")
    p.add_argument("code")
    p.add_argument("stream")
    p.add_argument("--report")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode_viterbi)

    p = sub.add_parser("realize", help="minimal input-state-output realization")
    p.add_argument("code")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("codeify", help="code of an input-state-output system")
    p.add_argument("iso")
    p.add_argument("--iso-order", action="store_true",
                   help="keep the [y u] column order instead of restoring coords")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_codeify)

    p = sub.add_parser("simulate", help="construct, encode, transmit, decode and score")
    p.add_argument("--code")
    p.add_argument("--recipe", choices=sorted(RECIPES))
    _recipe_flags(p)
    p.add_argument("--length", type=int, default=20, help="message length in steps")
    p.add_argument("--channel", choices=["erase", "qsc"], default="erase")
    p.add_argument("--rate", type=float)
    p.add_argument("--burst")
    p.add_argument("--eps", type=float)
    p.add_argument("--bidirectional", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, OSError) as exc:
        sys.stderr.write(f"convcodes: error: {exc}\n")
        return 2
    except (ValueError, BudgetExceeded) as exc:
        sys.stderr.write(f"convcodes: {exc}\n")
        return 1


run = main

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
