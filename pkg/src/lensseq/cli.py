"""Command-line interface: ``gen``, ``verify``, ``render``, ``bfile`` and ``info``.

Exit codes: 0 success, 1 verification failure, 2 input or domain error,
3 nothing renderable.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import List

from . import analysis, core, geometry, underground
from .core import Seed, SequenceWindow
from .errors import LensError, NonIntegerSequence, NotRenderable, ParseError
from .exactnum import parse_rational
from .jsonio import constants_to_json, dumps, encode_scalar, window_to_json
from .render import layout_to_svg
from .verify import verify_window

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_RENDER = 0, 1, 2, 3


@dataclass(frozen=True)
class RunInput:
    """Exactly one of seed, label or symbol, resolved to a seed."""

    kind: str
    text: str
    seed: Seed
    symbol: underground.UndergroundSymbol | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "text": self.text}


def parse_seed(text: str) -> Seed:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise ParseError(f"a seed needs three comma-separated terms: {text!r}")
    return Seed(*(parse_rational(p) for p in parts))


def parse_terms(text: str) -> list:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ParseError("empty term list")
    return [parse_rational(p) for p in parts]


def _nondegenerate(sym: underground.UndergroundSymbol) -> tuple[underground.UndergroundSymbol, int]:
    # a symbol with p*q = 0 has a zero seed middle; move along f until it is not
    for m in range(4):
        s = underground.shift_symbol(sym, m)
        if not s.is_degenerate:
            return s, m
    raise ParseError(f"symbol {sym} has no usable seed")


def resolve_input(args: argparse.Namespace) -> RunInput:
    if args.seed is not None:
        return RunInput("seed", args.seed, parse_seed(args.seed))
    if args.label is not None:
        lab = underground.parse_label(args.label)
        return RunInput("label", args.label, underground.label_to_seed(lab))
    if args.symbol is not None:
        sym = underground.parse_symbol(args.symbol)
        usable, _ = _nondegenerate(sym)
        return RunInput("symbol", args.symbol, underground.symbol_to_seed(usable), usable)
    raise ParseError("one of --seed, --label or --symbol is required")


def _window(inp: RunInput, n_forward: int, n_backward: int) -> SequenceWindow:
    """Terms around the seed; symbol inputs are generated through their underground."""
    if inp.symbol is None:
        return core.extend(inp.seed, n_forward, n_backward)
    f = underground.underground_extend(inp.symbol, n_forward + 1, n_backward + 1)
    # symbol b-index 1 (the seed middle) becomes index 0
    w = underground.lens_from_underground(f).shifted(-1)
    ref = core.extend(inp.seed, n_forward, n_backward)
    if w.terms != ref.terms:
        raise LensError("underground and linear generation disagree")
    return SequenceWindow(w.origin_index, w.terms, ref.constants)


def _origin_shift(args) -> int:
    return 1 if getattr(args, "origin", "middle") == "first" else 0


def cmd_gen(args: argparse.Namespace) -> int:
    inp = resolve_input(args)
    w = _window(inp, args.forward, args.backward).shifted(_origin_shift(args))
    if args.json:
        sys.stdout.write(dumps({"input": inp.to_json(), **window_to_json(w)}))
        return EXIT_OK
    k = w.constants
    print(f"alpha={k.alpha} beta={k.beta}")
    print(f"origin_index={w.origin_index}")
    if args.indexed:
        for n, t in w.items():
            print(f"{n} {t}")
    else:
        print(" ".join(str(t) for t in w.terms))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    k = None
    if args.constants is not None:
        vals = parse_terms(args.constants)
        if len(vals) != 2:
            raise ParseError("--constants takes alpha,beta")
        k = core.LensConstants(*vals)
    if args.window is not None:
        w = SequenceWindow(0, tuple(parse_terms(args.window)))
        if len(w) < 3 and k is None:
            raise ParseError("a window needs three terms or explicit --constants")
        source = {"kind": "window", "text": args.window}
    else:
        inp = resolve_input(args)
        n = max(args.terms - 3, 0)
        w = _window(inp, n - n // 2, n // 2)
        source = inp.to_json()
    rep = verify_window(w, k)
    if args.json:
        sys.stdout.write(dumps({"input": source, **rep.to_json()}))
    else:
        for c in rep.checks:
            tail = f"  ({c.detail})" if c.detail else ""
            print(f"{c.status.upper():4} {c.name}{tail}")
        print("OK" if rep.ok else "FAILED")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_render(args: argparse.Namespace) -> int:
    inp = resolve_input(args)
    if args.count < 2:
        raise ParseError("--count must be at least 2")
    extra = max(args.count - 3, 0)
    back = extra // 2
    w = _window(inp, extra - back, back)
    if args.count == 2:
        w = w.slice(0, 2)
    try:
        layout = geometry.chain_layout(w)
    except NotRenderable as exc:
        print(f"not renderable: {exc}", file=sys.stderr)
        return EXIT_RENDER
    svg = layout_to_svg(layout, scale=parse_rational(args.scale), title=f"lens sequence {inp.text}")
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_bfile(args: argparse.Namespace) -> int:
    inp = resolve_input(args)
    shift = _origin_shift(args)
    if args.underground:
        sym = inp.symbol or underground.seed_to_symbol(inp.seed)
        f = underground.underground_extend(sym, max(args.forward - 2, 0), 0)
        rows = [(n, t) for n, t in zip(f.indices(), f.terms)][: args.forward]
        header = f"# underground sequence of symbol {sym}"
    else:
        w = core.extend(inp.seed, max(args.forward - 2, 0), 0).shifted(shift)
        rows = [(n, t) for n, t in w.items() if n >= 0][: args.forward]
        if any(t.denominator != 1 for _, t in rows):
            raise NonIntegerSequence("b-files need integer terms")
        rows = [(n, t.numerator) for n, t in rows]
        k = w.constants
        header = f"# lens sequence from {inp.kind} {inp.text}: alpha={k.alpha} beta={k.beta}"
    out = [header]
    out.extend(f"{n} {t}" for n, t in rows)
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    inp = resolve_input(args)
    k = core.constants_from_seed(inp.seed)
    g = geometry.lens_params(k)
    info = {"input": inp.to_json(), **constants_to_json(k), "class": g.lens_class.value}
    for name in ("R", "K", "L", "delta"):
        v = getattr(g, name)
        info[name] = None if v is None else encode_scalar(v)
    try:
        info["lambda"] = encode_scalar(analysis.char_constant(k.alpha))
    except LensError:
        info["lambda"] = None
    try:
        info["bilateral_sum"] = encode_scalar(analysis.reciprocal_sum(k))
    except LensError:
        info["bilateral_sum"] = None
    try:
        sym = inp.symbol or underground.seed_to_symbol(inp.seed)
        info["symbol"] = str(sym)
        lab = underground.symbol_to_label(sym)
        info["label"] = None if lab is None else str(lab)
    except LensError:
        info["symbol"] = info["label"] = None
    info["period"] = analysis.detect_period(inp.seed) if k.alpha < 2 else None
    if args.json:
        sys.stdout.write(dumps(info))
    else:
        info["input"] = f"{inp.kind} {inp.text}"
        for key in sorted(info):
            print(f"{key}: {info[key]}")
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--seed", help="three consecutive terms a,b,c (rationals p/q allowed)")
    g.add_argument("--label", help="label [a,b;k]")
    g.add_argument("--symbol", help="symbol ^s(p,q)^k")


def _add_origin(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--origin",
        choices=("middle", "first"),
        default="middle",
        help="index 0 is the seed's middle term (default) or its first term",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lensseq", description="Lens sequences: generation, checks and pictures.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate terms around a seed.")
    _add_input(gen)
    gen.add_argument("--forward", type=int, default=5, help="terms after the seed")
    gen.add_argument("--backward", type=int, default=0, help="terms before the seed")
    gen.add_argument("--json", action="store_true", help="machine-readable output")
    gen.add_argument("--indexed", action="store_true", help="one 'n b(n)' line per term")
    _add_origin(gen)
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="Run every invariant check on a window.")
    _add_input(ver, required=False)
    ver.add_argument("--window", help="explicit comma-separated terms instead of a seed")
    ver.add_argument("--constants", help="alpha,beta to check against (default: from the window)")
    ver.add_argument("--terms", type=int, default=20, help="window length for seed inputs")
    ver.add_argument("--json", action="store_true", help="machine-readable output")
    ver.set_defaults(func=cmd_verify)

    ren = sub.add_parser("render", help="Draw the circle chain as SVG.")
    _add_input(ren)
    ren.add_argument("--count", type=int, default=9, help="number of chain circles")
    ren.add_argument("--scale", default="1", help="length scale factor (rational)")
    ren.add_argument("--output", help="write to this file instead of stdout")
    ren.set_defaults(func=cmd_render)

    bf = sub.add_parser("bfile", help="Write an OEIS-style b-file.")
    _add_input(bf)
    bf.add_argument("--forward", type=int, default=20, help="number of terms")
    bf.add_argument("--underground", action="store_true", help="list the underground sequence instead")
    _add_origin(bf)
    bf.set_defaults(func=cmd_bfile)

    inf = sub.add_parser("info", help="Constants, geometry and symbol of a seed.")
    _add_input(inf)
    inf.add_argument("--json", action="store_true", help="machine-readable output")
    inf.set_defaults(func=cmd_info)
    return parser


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.window is None and not (args.seed or args.label or args.symbol):
        parser.error("verify needs --window or one of --seed/--label/--symbol")
    for name in ("forward", "backward"):
        if getattr(args, name, 0) < 0:
            parser.error(f"--{name} must be non-negative")
    try:
        return int(args.func(args))
    except LensError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
