"""Command-line front end: single computations, genus sweeps, report tables.

Every command writes a deterministic report (TSV by default, JSON with
--format json) to stdout or to --out; hypothesis violations refuse loudly on
stderr with a nonzero exit status instead of emitting partial rows.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import chow, detvar
from .errors import NikulinError
from .lattice import DivisorClass, decompose_profile, gram_matrix, intersect
from .positivity import (
    DEFAULT_BOUNDS,
    FIXED_CURVE,
    SearchBounds,
    lk_system_analysis,
    movable_decomposition_search,
    noether_lefschetz_condition_search,
    rational_obstruction_search,
    very_ample_check,
)


@dataclass(frozen=True)
class RunConfig:
    """Sweep configuration: inclusive genus range, bounds, format, output path."""

    g_min: int
    g_max: int
    bounds: SearchBounds
    fmt: str
    out: str | None

    def __post_init__(self):
        if self.g_min > self.g_max:
            raise NikulinError(f"empty genus range [{self.g_min}, {self.g_max}]")
        if self.fmt not in ("tsv", "json"):
            raise NikulinError(f"format must be tsv or json, got {self.fmt!r}")


def _parse_bounds(text: str) -> SearchBounds:
    try:
        a_max, t_max = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise NikulinError(f"bounds must look like A,T with integers, got {text!r}") from exc
    return SearchBounds(a_max, t_max)


def _parse_class(text: str) -> DivisorClass:
    """Accept shorthand (L, e, O, R3, L2) or a JSON object {"a":..,"t":[..]}."""
    if text == "L":
        return DivisorClass.polarization()
    if text == "e":
        return DivisorClass.half_nodal()
    if text == "O":
        return DivisorClass.zero()
    if text.startswith("R") and text[1:].isdigit():
        return DivisorClass.nodal(int(text[1:]))
    if text.startswith("L") and text[1:].isdigit():
        return DivisorClass.twisted_polarization(int(text[1:]))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NikulinError(f"cannot parse divisor class {text!r}") from exc
    return DivisorClass.from_json(data)


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _twist_verdict(g: int, m: int, profile) -> str:
    if m == 0:
        return "big-nef"
    if m == profile.k and profile.p == 0:
        return FIXED_CURVE
    return very_ample_check(g, m).status


def _profile_rows(g: int) -> list[dict]:
    profile = decompose_profile(g)
    rows = []
    for m in range(profile.k + 1):
        twist = DivisorClass.twisted_polarization(m)
        rows.append(
            {
                "m": m,
                "g_m": profile.twisted_genus(m),
                "lm2": intersect(twist, twist, g),
                "verdict": _twist_verdict(g, m, profile),
            }
        )
    return rows


def cmd_profile(args) -> int:
    profile = decompose_profile(args.g)
    rows = _profile_rows(args.g)
    if args.format == "json":
        _emit(_json_dump({"g": profile.g, "k": profile.k, "p": profile.p, "rows": rows}), args.out)
    else:
        lines = ["g\tk\tp", f"{profile.g}\t{profile.k}\t{profile.p}", "m\tg_m\tlm2\tverdict"]
        lines += [f"{r['m']}\t{r['g_m']}\t{r['lm2']}\t{r['verdict']}" for r in rows]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_gram(args) -> int:
    mat = gram_matrix(args.g)
    if args.format == "json":
        _emit(_json_dump(mat), args.out)
    else:
        _emit("\n".join("\t".join(str(x) for x in row) for row in mat), args.out)
    return 0


def cmd_intersect(args) -> int:
    value = intersect(_parse_class(args.d1), _parse_class(args.d2), args.g)
    _emit(str(value), args.out)
    return 0


def cmd_check(args) -> int:
    verdict = very_ample_check(args.g, args.m)
    if args.format == "json":
        _emit(_json_dump(verdict.to_json()), args.out)
    else:
        witness = "none" if verdict.witness is None else json.dumps(
            verdict.witness.to_json(), separators=(",", ":")
        )
        _emit(f"{verdict.status}\t{witness}\t{verdict.rationale}", args.out)
    return 0


def cmd_search(args) -> int:
    bounds = _parse_bounds(args.bounds)
    if args.kind == "obstruction":
        witness = rational_obstruction_search(args.g, args.m, bounds)
        payload = None if witness is None else witness.to_json()
    elif args.kind == "decomposition":
        target = DivisorClass.twisted_polarization(args.m)
        pairs = movable_decomposition_search(args.g, target, bounds)
        payload = [[d1.to_json(), d2.to_json()] for d1, d2 in pairs]
    elif args.kind in ("nl-a", "nl-b", "nl-c"):
        witness = noether_lefschetz_condition_search(args.g, args.m, args.kind[-1], bounds)
        payload = None if witness is None else witness.to_json()
    else:  # pragma: no cover - argparse restricts choices
        raise NikulinError(f"unknown search kind {args.kind!r}")
    if args.format == "json":
        _emit(_json_dump(payload), args.out)
    else:
        if payload is None:
            _emit("none", args.out)
        elif isinstance(payload, list):
            _emit(
                "\n".join(
                    json.dumps(pair, separators=(",", ":")) for pair in payload
                )
                if payload
                else "none",
                args.out,
            )
        else:
            _emit(json.dumps(payload, separators=(",", ":")), args.out)
    return 0


def cmd_grr(args) -> int:
    rank = chow.pushforward_bundle_rank(args.n, args.m, args.g)
    c1 = chow.c1_pushforward_bundle(args.n, args.m, args.g)
    record = {"n": args.n, "m": args.m, "g": args.g, "rank": rank, "c1": c1.to_json()}
    if args.format == "json":
        _emit(_json_dump(record), args.out)
    else:
        lines = [f"rank\t{rank}"] + [f"{key}\t{value}" for key, value in c1.to_json().items()]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_class(args) -> int:
    result = chow.divisor_class(args.g, args.m)
    record = {"g": args.g, "m": args.m, **result.to_json()}
    if args.format == "json":
        _emit(_json_dump(record), args.out)
    else:
        gamma = result.gamma.to_json()
        lines = [
            f"twisted_genus\t{result.twisted_genus}",
            f"scale\t{result.scale}",
            f"gamma\t{gamma['c0']}\t{gamma['c1']}\t{gamma['c2']}\t{gamma['c3']}\t{gamma['lambda']}",
        ]
        lines += [f"kappa:{key}\t{value}" for key, value in result.kappa_class.to_json().items()]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_detdeg(args) -> int:
    _emit(str(detvar.det_degree(args.r, args.e)), args.out)
    return 0


def cmd_expdim(args) -> int:
    dims = detvar.quadric_space_dims(args.gm)
    expected = detvar.expected_rank_ideal_dim(args.gm, args.k)
    locus = detvar.rank_locus_codim(args.gm, args.k)
    record = {
        "g_m": args.gm,
        "k": args.k,
        "sym2_dim": dims.sym2_dim,
        "ideal_dim": dims.ideal_dim,
        "codim_ideal": dims.codim_ideal,
        "rank_locus_codim": locus,
        "expected_dim": expected,
    }
    if args.format == "json":
        _emit(_json_dump(record), args.out)
    else:
        keys = list(record)
        _emit(
            "\t".join(keys) + "\n" + "\t".join(str(record[key]) for key in keys),
            args.out,
        )
    return 0


def _sweep_row(g: int, m: int, profile, bounds: SearchBounds) -> dict:
    twist = DivisorClass.twisted_polarization(m)
    witness = rational_obstruction_search(g, m, bounds)
    row = {
        "g": g,
        "k": profile.k,
        "p": profile.p,
        "m": m,
        "g_m": profile.twisted_genus(m),
        "lm2": intersect(twist, twist, g),
        "verdict": _twist_verdict(g, m, profile),
        "obstruction": None if witness is None else witness.to_json(),
        "class": None,
    }
    admissible = m <= profile.k - 1 or (m == profile.k and profile.p >= 3)
    if admissible and profile.twisted_genus(m) >= 3:
        result = chow.divisor_class(g, m)
        gamma = result.gamma.to_json()
        row["class"] = {
            "scale": result.scale,
            "c0": gamma["c0"],
            "c1": gamma["c1"],
            "c2": gamma["c2"],
            "c3": gamma["c3"],
            "lambda": gamma["lambda"],
        }
    return row


_SWEEP_COLUMNS = (
    "g", "k", "p", "m", "g_m", "verdict", "lm2", "obstruction",
    "scale", "c0", "c1", "c2", "c3", "lambda",
)


def cmd_sweep(args) -> int:
    config = RunConfig(args.g_min, args.g_max, _parse_bounds(args.bounds), args.format, args.out)
    rows = []
    for g in range(config.g_min, config.g_max + 1):
        profile = decompose_profile(g)
        for m in range(profile.k + 1):
            rows.append(_sweep_row(g, m, profile, config.bounds))
    if config.fmt == "json":
        _emit(_json_dump(rows), config.out)
        return 0
    lines = ["\t".join(_SWEEP_COLUMNS)]
    for row in rows:
        cells = [str(row[key]) for key in ("g", "k", "p", "m", "g_m", "verdict", "lm2")]
        witness = row["obstruction"]
        cells.append("none" if witness is None else json.dumps(witness, separators=(",", ":")))
        cls = row["class"]
        if cls is None:
            cells += ["-"] * 6
        else:
            cells += [str(cls["scale"]), cls["c0"], cls["c1"], cls["c2"], cls["c3"], cls["lambda"]]
        lines.append("\t".join(cells))
    _emit("\n".join(lines), config.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nikulin",
        description="Exact lattice, positivity, and moduli divisor-class computations "
        "for polarized Nikulin surfaces.",
    )
    parser.add_argument("--format", choices=("tsv", "json"), default="tsv")
    parser.add_argument("--out", default=None, help="write the report to this path")
    parser.add_argument(
        "--bounds",
        default=f"{DEFAULT_BOUNDS.a_max},{DEFAULT_BOUNDS.t_max}",
        help="search window as A,T (max polarization coefficient, max |t_i|)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="genus decomposition and twist verdicts")
    p.add_argument("g", type=int)
    p.set_defaults(handler=cmd_profile)

    p = sub.add_parser("gram", help="Gram matrix of the rank-9 lattice")
    p.add_argument("g", type=int)
    p.set_defaults(handler=cmd_gram)

    p = sub.add_parser("intersect", help="pairing of two divisor classes")
    p.add_argument("g", type=int)
    p.add_argument("d1")
    p.add_argument("d2")
    p.set_defaults(handler=cmd_intersect)

    p = sub.add_parser("check", help="ample / very-ample verdict for a twist")
    p.add_argument("g", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("search", help="bounded obstruction / decomposition searches")
    p.add_argument("kind", choices=("obstruction", "decomposition", "nl-a", "nl-b", "nl-c"))
    p.add_argument("g", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("grr", help="rank and first Chern class of a pushforward bundle")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("g", type=int)
    p.set_defaults(handler=cmd_grr)

    p = sub.add_parser("class", help="rank-4 quadric divisor class in the invariant basis")
    p.add_argument("g", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=cmd_class)

    p = sub.add_parser("detdeg", help="degree of a symmetric determinantal locus")
    p.add_argument("r", type=int)
    p.add_argument("e", type=int)
    p.set_defaults(handler=cmd_detdeg)

    p = sub.add_parser("expdim", help="expected dimension of the low-rank quadric ideal")
    p.add_argument("gm", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(handler=cmd_expdim)

    p = sub.add_parser("sweep", help="profile/verdict/class table over a genus range")
    p.add_argument("g_min", type=int)
    p.add_argument("g_max", type=int)
    p.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NikulinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
