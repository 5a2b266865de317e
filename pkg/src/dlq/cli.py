"""Command line driver: ``dlq <command> [options]``, JSON on stdout.

Inputs come from flags or a JSON file given with ``--spec``; flags win.
Any failure prints one ``error: <reason>`` line on stderr and exits with 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .cohom import assembly_certificates, bn_table, hc_restrict_module
from .decomp import (
    chain_from_words,
    chain_summary,
    classify_all,
    classify_piece,
    coxeter_report,
    validate_chain,
)
from .deodhar import distinguished_subexpressions, enumerate_cells
from .errors import PreconditionError
from .poly import Poly
from .rootsys import CartanDatum, RootSystem, build_root_system, named_cartan
from .weyl import from_word, longest_element, reduced_word

DEFAULT_MAX_RANK = 8

COMMANDS = ("pieces", "classify", "coxeter", "chain", "deodhar", "cohom-bn")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message.replace("\n", " "))


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "-", "[]"):
        return []
    if text.startswith("["):
        return [int(a) for a in json.loads(text)]
    return [int(a) for a in text.split(",") if a.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dlq", description="Decompose parabolic Deligne-Lusztig varieties combinatorially.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_w=True):
        sp.add_argument("--spec", help="JSON problem file; flags override its fields")
        sp.add_argument("--group", help="type label such as B3, 2A3 or A1xB2")
        sp.add_argument("--cartan", help="explicit Cartan matrix as JSON")
        sp.add_argument("--twist", type=_int_list, help="diagram automorphism as phi(1),...,phi(n)")
        if with_w:
            sp.add_argument("--w", type=_int_list, help="word for w, e.g. 3,2,1,2")

    sp = sub.add_parser("pieces", help="enumerate and classify every piece")
    common(sp)
    sp.add_argument("--I", type=_int_list)
    sp.add_argument("--J", type=_int_list)
    sp.add_argument("--jobs", type=int)

    sp = sub.add_parser("classify", help="classify the piece of one representative x")
    common(sp)
    sp.add_argument("--I", type=_int_list)
    sp.add_argument("--J", type=_int_list)
    sp.add_argument("--x", type=_int_list)

    sp = sub.add_parser("coxeter", help="the nonempty piece of a split Coxeter element")
    common(sp)
    sp.add_argument("--J", type=_int_list)

    sp = sub.add_parser("chain", help="validate a chain and report d, e and v")
    common(sp, with_w=False)
    sp.add_argument("--J", type=_int_list)
    sp.add_argument("--chain", help="JSON object {terms: [{I, w, gamma}], x: [words]}")

    sp = sub.add_parser("deodhar", help="distinguished subexpressions and cell data")
    common(sp)
    sp.add_argument("--x", type=_int_list, help="default: the longest element")
    sp.add_argument("--w-prime", dest="w_prime", type=_int_list)

    sp = sub.add_parser("cohom-bn", help="principal-series tables for type B_n")
    sp.add_argument("--spec")
    sp.add_argument("--n", type=int)
    sp.add_argument("--coeff", choices=("triv", "St"))
    sp.add_argument("--certificate", action="store_true", default=None,
                    help="also search the two-piece assembly certificate")
    return p


def _merge(args: argparse.Namespace) -> dict[str, Any]:
    spec: dict[str, Any] = {}
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read spec: {exc}".replace("\n", " "))
        if not isinstance(spec, dict):
            raise CliError("spec must be a JSON object")
    for key, val in vars(args).items():
        if key in ("spec", "command") or val is None:
            continue
        spec[key] = val
    return spec


def _max_rank() -> int:
    raw = os.environ.get("DLQ_MAX_RANK", str(DEFAULT_MAX_RANK))
    try:
        return int(raw)
    except ValueError:
        raise CliError("DLQ_MAX_RANK must be an integer")


def _root_system(spec: dict) -> RootSystem:
    twist = spec.get("twist") or None
    if spec.get("cartan") is not None:
        mat = spec["cartan"]
        if isinstance(mat, str):
            try:
                mat = json.loads(mat)
            except json.JSONDecodeError:
                raise CliError("cartan must be a JSON matrix")
        datum = CartanDatum.from_matrix(mat, twist)
    elif spec.get("group"):
        datum = named_cartan(str(spec["group"]))
        if twist:
            datum = CartanDatum.from_matrix(datum.cartan, twist, datum.label)
    else:
        raise CliError("a group label or Cartan matrix is required")
    if datum.rank > _max_rank():
        raise PreconditionError("rank exceeds DLQ_MAX_RANK")
    return build_root_system(datum)


def _indices(spec: dict, key: str, default=()) -> list[int]:
    val = spec.get(key, default)
    if isinstance(val, str):
        val = _int_list(val)
    return [int(a) for a in val]


def run_pieces(spec: dict) -> list:
    rs = _root_system(spec)
    w = from_word(rs, _indices(spec, "w"))
    jobs = int(spec.get("jobs") or 1)
    return [p.to_dict() for p in classify_all(_indices(spec, "I"), w, _indices(spec, "J"), jobs=jobs)]


def run_classify(spec: dict) -> dict:
    rs = _root_system(spec)
    w = from_word(rs, _indices(spec, "w"))
    x = from_word(rs, _indices(spec, "x"))
    return classify_piece(_indices(spec, "I"), w, _indices(spec, "J"), x).to_dict()


def run_coxeter(spec: dict) -> dict:
    rs = _root_system(spec)
    word = _indices(spec, "w", range(1, rs.rank + 1))
    return coxeter_report(from_word(rs, word), _indices(spec, "J")).to_dict()


def run_chain(spec: dict) -> dict:
    rs = _root_system(spec)
    block = spec.get("chain")
    if isinstance(block, str):
        try:
            block = json.loads(block)
        except json.JSONDecodeError:
            raise CliError("chain must be a JSON object")
    if not isinstance(block, dict) or "terms" not in block or "x" not in block:
        raise CliError("chain block needs 'terms' and 'x'")
    chain = chain_from_words(rs, block["terms"], block["x"])
    J = _indices(spec, "J")
    verdicts = validate_chain(chain, J)
    out: dict[str, Any] = {"verdicts": [v.to_dict() for v in verdicts]}
    if all(v.ok for v in verdicts):
        out["summary"] = chain_summary(chain, J)
    return out


def run_deodhar(spec: dict) -> dict:
    rs = _root_system(spec)
    w = from_word(rs, _indices(spec, "w"))
    x = from_word(rs, _indices(spec, "x")) if spec.get("x") is not None else longest_element(rs)
    word = reduced_word(w)
    if spec.get("w_prime") is not None:
        cells = enumerate_cells(w, x, from_word(rs, _indices(spec, "w_prime")), word)
    else:
        cells = list(distinguished_subexpressions(word, x))
    mass = Poly()
    for g in cells:
        mass = mass + g.mass()
    return {
        "reduced_word": word,
        "x_word": list(x.word),
        "cells": [
            {"mask": list(g.mask), "n_gamma": g.n_gamma, "m_gamma": g.m_gamma,
             "product_word": list(g.product.word)}
            for g in cells
        ],
        "mass_polynomial": list(mass.coeffs) or [0],
    }


def _x2_e(n: int) -> int:
    """``e`` of the ``x_2`` piece, read off the engine rather than assumed."""
    rs = build_root_system(named_cartan(f"B{n}"))
    w = from_word(rs, list(range(n, 1, -1)) + [1, 2])
    x2 = from_word(rs, range(n, 1, -1))
    p = classify_piece({1}, w, range(1, n), x2)
    if p.e is None:
        raise PreconditionError("x_2 piece is not Case1")
    return p.e


def run_cohom_bn(spec: dict) -> dict:
    if spec.get("n") is None:
        raise CliError("--n is required")
    n = int(spec["n"])
    coeff = spec.get("coeff", "triv")
    table = bn_table(n, coeff)
    out: dict[str, Any] = {
        "n": n,
        "coeff": coeff,
        "table": table.to_rows(),
        "hc_restricted": hc_restrict_module(table).to_rows(),
    }
    if spec.get("certificate"):
        if n < 3:
            raise PreconditionError("the assembly certificate needs n >= 3")
        e = _x2_e(n)
        out["x2_e"] = e
        out["certificates"] = [c.to_dict() for c in assembly_certificates(n, coeff, e)]
    return out


RUNNERS = {
    "pieces": run_pieces,
    "classify": run_classify,
    "coxeter": run_coxeter,
    "chain": run_chain,
    "deodhar": run_deodhar,
    "cohom-bn": run_cohom_bn,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = RUNNERS[args.command](_merge(args))
    except (CliError, PreconditionError, ValueError, KeyError, TypeError) as exc:
        msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}".splitlines()[0], file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
