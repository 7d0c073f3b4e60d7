"""Command-line front end.  Arrangements come in as JSON (file or stdin) and
every result goes to stdout as JSON.

Exit codes: 0 success, 1 bad input or a domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import arrangement as arr_mod
from .arrangement import InvalidArrangement, ToricArrangement
from .cohomology import poincare
from .covers import build_p_cover, lift, parse_matrix
from .layers import Layer, LayerPoset, char_poly, layer_poset
from .pipeline import analyze
from .posets import strictly_supersolvable, supersolvable

NONE = "none"


class DomainError(Exception):
    pass


def layer_to_dict(layer: Layer) -> dict[str, Any]:
    return {"gamma": layer.gamma.tolist(), "psi": [arr_mod.format_offset(x) for x in layer.psi], "dim": layer.dim}


def poset_to_dict(lp: LayerPoset) -> dict[str, Any]:
    p = lp.poset
    return {
        "elements": [layer_to_dict(layer) for layer in lp.layers],
        "covers": [[i, j] for i in range(p.size) for j in sorted(p.upper_covers[i])],
        "dims": list(lp.dims),
        "mobius": list(p.mobius_from_bottom),
    }


def _read(path: str) -> ToricArrangement:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as f:
                text = f.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    return arr_mod.loads(text)


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text: str):
    try:
        return parse_matrix(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cmd_layers(args):
    return [layer_to_dict(layer) for layer in layer_poset(_read(args.file)).layers]


def _cmd_poset(args):
    return poset_to_dict(layer_poset(_read(args.file)))


def _cmd_charpoly(args):
    return char_poly(layer_poset(_read(args.file)))


def _cmd_poincare(args):
    arr = _read(args.file)
    return list(poincare(char_poly(layer_poset(arr)), arr.rank).coefficients)


def _cmd_ss(args):
    poset = layer_poset(_read(args.file)).poset
    cert = strictly_supersolvable(poset) if args.strict else supersolvable(poset)
    return NONE if cert is None else cert.to_dict()


def _cmd_lift(args):
    return arr_mod.to_dict(lift(_read(args.file), args.matrix))


def _cmd_pcover(args):
    m = build_p_cover(_read(args.file), args.p)
    return NONE if m is None else m.tolist()


def _cmd_report(args):
    return analyze(_read(args.file), args.primes, args.search_depth).to_dict()


def _cmd_braid(args):
    arr = arr_mod.braid(args.n)
    if args.essential:
        arr, _ = arr_mod.essentialize(arr)
    return arr_mod.to_dict(arr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricarr", description="Combinatorics of toric arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", nargs="?", default="-", help="arrangement JSON (default: stdin)")
        p.set_defaults(func=func)
        return p

    with_file("layers", _cmd_layers, "list the layers")
    with_file("poset", _cmd_poset, "poset of layers with covers, dimensions and Mobius values")
    with_file("charpoly", _cmd_charpoly, "characteristic polynomial, constant term first")
    with_file("poincare", _cmd_poincare, "Poincare polynomial of the complement, constant term first")
    p = with_file("ss", _cmd_ss, "supersolvability certificate")
    p.add_argument("--strict", action="store_true", help="require TM-ideals")
    p = with_file("lift", _cmd_lift, "lift through a cover matrix")
    p.add_argument("--matrix", required=True, type=_matrix, help='cover matrix, e.g. "2,1;0,-4"')
    p = with_file("pcover", _cmd_pcover, "degree-p cover with a primitive lift")
    p.add_argument("-p", type=int, required=True, help="prime")
    p = with_file("report", _cmd_report, "per-prime obstruction report")
    p.add_argument("--primes", type=_primes, default=None, help="comma-separated primes (default: automatic)")
    p.add_argument("--search-depth", type=int, default=3, help="largest exponent k of searched p^k covers")
    p = sub.add_parser("braid", help="toric braid arrangement")
    p.add_argument("n", type=int)
    p.add_argument("--essential", action="store_true", help="essentialize the result")
    p.set_defaults(func=_cmd_braid)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except InvalidArrangement as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return 1
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    json.dump(result, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
