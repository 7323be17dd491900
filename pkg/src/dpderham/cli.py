"""Batch command line interface.

Subcommands compute on JSON operands (files or stdin) or run seeded
verification suites.  Exit codes: 0 success, 1 verification failure (the
report carries counterexamples), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import jsonio
from .bar import II, bar_d, bar_shuffle_elements, cc_d, reduce_cc
from .dpalg import CoeffTarget, dp_coeff_change, dp_embed_rational, dp_partial, dp_pullback
from .derham import exterior_d, form_pullback, wedge
from .integrate import chain_int, definite_int, iterated_int
from .sforms import boundary_int, fiber_int, iterated_integral_at
from . import verify as verify_mod


def _load(path: str | None):
    if path is None or path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _encode_rational_poly(f) -> dict:
    return {
        "n": f.num_vars,
        "terms": [
            {"exps": list(exps), "coef": jsonio.encode_scalar(c)}
            for exps, c in sorted(f.terms.items())
        ],
    }


# -- dp --------------------------------------------------------------------


def run_dp(args) -> int:
    data = _load(args.input)
    if args.op == "mul":
        f = jsonio.decode_poly(data["f"])
        g = jsonio.decode_poly(data["g"])
        _emit(jsonio.encode_poly(f * g), args.out)
    elif args.op == "pullback":
        alpha = jsonio.decode_ordinal(data["alpha"])
        f = jsonio.decode_poly(data["f"])
        _emit(jsonio.encode_poly(dp_pullback(alpha, f)), args.out)
    elif args.op == "partial":
        f = jsonio.decode_poly(data["f"])
        _emit(jsonio.encode_poly(dp_partial(int(data["i"]), f)), args.out)
    elif args.op == "embed":
        f = jsonio.decode_poly(data["f"])
        _emit(_encode_rational_poly(dp_embed_rational(f)), args.out)
    elif args.op == "coeff-change":
        f = jsonio.decode_poly(data["f"])
        target = CoeffTarget(data["target"], data.get("prime"))
        result = dp_coeff_change(f, target)
        _emit(_encode_rational_poly(result), args.out)
    return 0


# -- form ------------------------------------------------------------------


def run_form(args) -> int:
    data = _load(args.input)
    if args.op == "wedge":
        a = jsonio.decode_form(data["omega"])
        b = jsonio.decode_form(data["eta"])
        _emit(jsonio.encode_form(wedge(a, b)), args.out)
    elif args.op == "d":
        a = jsonio.decode_form(data["omega"])
        _emit(jsonio.encode_form(exterior_d(a)), args.out)
    elif args.op == "pullback":
        alpha = jsonio.decode_ordinal(data["alpha"])
        a = jsonio.decode_form(data["omega"])
        _emit(jsonio.encode_form(form_pullback(alpha, a)), args.out)
    return 0


# -- int -------------------------------------------------------------------


def run_int(args) -> int:
    data = _load(args.input)
    if args.op == "definite":
        f = jsonio.decode_poly(data["f"])
        result = definite_int(
            f,
            int(data["i"]),
            jsonio.decode_bound(data["lo"]),
            jsonio.decode_bound(data["hi"]),
        )
        _emit(jsonio.encode_poly(result), args.out)
    elif args.op == "iterated":
        f = jsonio.decode_poly(data["f"])
        spec = jsonio.decode_spec(data["steps"])
        _emit(jsonio.encode_poly(iterated_int(f, spec)), args.out)
    elif args.op == "chain":
        omega = jsonio.decode_form(data["omega"])
        chain = jsonio.decode_chain(data["chain"])
        _emit(jsonio.encode_form(chain_int(omega, chain)), args.out)
    elif args.op in ("fiber", "boundary"):
        space = jsonio.space_from_preset(data["space"])
        r = int(data["r"])
        terms = [
            (
                jsonio.decode_simplicial_form(item["base"], space),
                jsonio.decode_form(item["fiber"]),
            )
            for item in data["terms"]
        ]
        from .sforms import ProductForm

        F = ProductForm.from_products(space, r, terms)
        result = fiber_int(F) if args.op == "fiber" else boundary_int(F)
        _emit(jsonio.encode_simplicial_form(result), args.out)
    return 0


# -- sset ------------------------------------------------------------------


def run_sset(args) -> int:
    space = jsonio.space_from_preset(args.preset)
    info = {
        "name": space.name,
        "max_dim": space.max_dim,
        "nondegenerate": {
            str(m): [jsonio.encode_simplex_id(t) for t in ids]
            for m, ids in sorted(space.dims.items())
            if ids
        },
        "counts": {str(m): len(ids) for m, ids in sorted(space.dims.items()) if ids},
    }
    _emit(info, args.out)
    return 0


# -- ii --------------------------------------------------------------------


def run_ii(args) -> int:
    data = _load(args.input)
    space = jsonio.space_from_preset(data["space"])
    forms = [jsonio.decode_simplicial_form(f, space) for f in data["forms"]]
    path = jsonio.decode_path_simplex(data["path"])
    result = iterated_integral_at(forms, path)
    _emit(jsonio.encode_form(result), args.out)
    return 0


# -- bar -------------------------------------------------------------------


def run_bar(args) -> int:
    data = _load(args.input)
    if args.op == "d":
        e = jsonio.decode_bar_element(data)
        _emit(jsonio.encode_bar_element(bar_d(e)), args.out)
    elif args.op == "shuffle":
        x = jsonio.decode_bar_element(data["x"])
        y = jsonio.decode_bar_element(data["y"])
        _emit(jsonio.encode_bar_element(bar_shuffle_elements(x, y)), args.out)
    elif args.op == "cc-d":
        e = jsonio.decode_bar_element(data["element"])
        space = e.space
        basepoint = jsonio.decode_simplex_id(space, data["basepoint"])
        result = cc_d(reduce_cc(e, basepoint))
        _emit(jsonio.encode_bar_element(result.inject()), args.out)
    elif args.op == "ii-eval":
        e = jsonio.decode_bar_element(data["element"])
        path = jsonio.decode_path_simplex(data["path"])
        _emit(jsonio.encode_form(II(e).at(path)), args.out)
    return 0


# -- verify ----------------------------------------------------------------


def run_verify(args) -> int:
    start = time.monotonic()
    kwargs = {}
    if args.max_exp is not None:
        kwargs["max_exp"] = args.max_exp
    if args.suite == "stokes":
        report = verify_mod.verify_stokes(
            args.space, args.r, args.seed, args.trials, **kwargs
        )
    elif args.suite == "naturality":
        report = verify_mod.verify_naturality(args.seed, args.trials, **kwargs)
    elif args.suite == "dsquare":
        report = verify_mod.verify_dsquare(args.space, args.seed, args.trials, **kwargs)
    elif args.suite == "embed-oracle":
        report = verify_mod.verify_embed_oracle(args.seed, args.trials, **kwargs)
    elif args.suite == "ii-cochain":
        report = verify_mod.verify_ii_cochain(
            args.space, args.seed, args.trials,
            **({"max_deg": args.max_deg} if args.max_deg is not None else {}),
        )
    elif args.suite == "ii-shuffle":
        report = verify_mod.verify_ii_shuffle(
            args.space, args.seed, args.trials,
            **({"max_deg": args.max_deg} if args.max_deg is not None else {}),
        )
    elif args.suite == "bar-d2":
        report = verify_mod.verify_bar_d2(
            args.space, args.seed, args.trials,
            **({"max_deg": args.max_deg} if args.max_deg is not None else {}),
        )
    else:
        raise ValueError(f"unknown suite {args.suite}")
    report["wall_time_ms"] = int((time.monotonic() - start) * 1000)
    _emit(report, args.out)
    return 1 if report["failures"] else 0


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpderham",
        description="Exact divided-power de Rham calculus on simplicial sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p):
        p.add_argument("--input", "-i", default=None, help="JSON operand file ('-' for stdin)")
        p.add_argument("--out", "-o", default=None, help="write result JSON to this path")

    p = sub.add_parser("dp", help="divided power polynomial operations")
    p.add_argument("op", choices=["mul", "pullback", "partial", "embed", "coeff-change"])
    io_args(p)
    p.set_defaults(fn=run_dp)

    p = sub.add_parser("form", help="operations on forms on one simplex")
    p.add_argument("op", choices=["wedge", "d", "pullback"])
    io_args(p)
    p.set_defaults(fn=run_form)

    p = sub.add_parser("int", help="symbolic integration")
    p.add_argument("op", choices=["definite", "iterated", "chain", "fiber", "boundary"])
    io_args(p)
    p.set_defaults(fn=run_int)

    p = sub.add_parser("sset", help="simplicial set presets")
    p.add_argument("op", choices=["build", "info"])
    p.add_argument("preset")
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(fn=run_sset)

    p = sub.add_parser("ii", help="iterated integral evaluation")
    p.add_argument("op", choices=["eval"])
    io_args(p)
    p.set_defaults(fn=run_ii)

    p = sub.add_parser("bar", help="bar complex operations")
    p.add_argument("op", choices=["d", "shuffle", "ii-eval", "cc-d"])
    io_args(p)
    p.set_defaults(fn=run_bar)

    p = sub.add_parser("verify", help="seeded verification suites")
    p.add_argument(
        "suite",
        choices=[
            "stokes", "naturality", "dsquare", "ii-cochain",
            "ii-shuffle", "bar-d2", "embed-oracle",
        ],
    )
    p.add_argument("--space", default="simplex:1")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--max-exp", type=int, default=None)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(fn=run_verify)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (KeyError, ValueError, TypeError, json.JSONDecodeError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
