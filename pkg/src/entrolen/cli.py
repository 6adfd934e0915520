"""Command-line surface: deterministic batch runs with CSV or key=value
output.

Exit codes: 0 success, 2 validation error (bad flags, malformed files),
3 budget exhaustion or heuristic failure with partial output written.
Flags override values from an optional key=value config file; the env
var ENTROLEN_SEED overrides any configured sampling seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from fractions import Fraction

from .crossed_product import (
    cocycle_from_name,
    format_element,
    parse_element,
    validate_cocycle,
)
from .exact_linalg import field_from_name
from .folner import (
    boundary,
    Boxes,
    BoxTimesZ2,
    default_scheme,
    folner_set,
    scheme_from_name,
)
from .groups import (
    ball,
    format_group_element,
    group_from_name,
    parse_group_element,
)
from .entropy import (
    addition_check,
    certified_upper_bound,
    estimate,
    estimate_quotient,
    zero_divisor_scan,
)
from .shift_modules import (
    parse_presentation_text,
    PresentationError,
    StabilizationConfig,
    SubshiftPresentation,
)
from .tiling import check_quasi_tiling, greedy_quasi_tile, TilingFailed

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _fmt_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class CliError(Exception):
    pass


def parse_presentation(path: str) -> SubshiftPresentation:
    """Load a presentation file; parse failures carry line/column."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        return parse_presentation_text(text)
    except PresentationError as exc:
        raise CliError(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None


def _parse_inline_generators(field, group, rank: int, text: str):
    """Inline generator list: generators joined by ";", each a " + "-joined
    list of terms coeff*(g)|coord with 1-based coordinates."""
    generators = []
    for gen_str in text.split(";"):
        gen_str = gen_str.strip()
        if not gen_str:
            raise CliError("empty generator in --gen")
        vec: dict = {}
        for term in gen_str.split(" + "):
            term = term.strip()
            if "|" not in term:
                raise CliError(f"term {term!r} needs a |coord suffix")
            body, _, coord_str = term.rpartition("|")
            try:
                coord = int(coord_str)
            except ValueError:
                raise CliError(f"bad coordinate {coord_str!r} in {term!r}") from None
            if not (1 <= coord <= rank):
                raise CliError(f"coordinate {coord} outside 1..{rank}")
            if "*(" not in body:
                raise CliError(f"term {term!r} must look like coeff*(g)|coord")
            coeff_str, g_body = body.rsplit("*(", 1)
            try:
                coeff = field.parse(coeff_str)
                g = parse_group_element(group, "(" + g_body)
            except ValueError as exc:
                raise CliError(str(exc)) from None
            if not coeff:
                raise CliError(f"zero coefficient in {term!r}")
            key = (g, coord - 1)
            nv = field.add(vec.get(key, field.zero), coeff)
            if nv:
                vec[key] = nv
            else:
                vec.pop(key, None)
        if not vec:
            raise CliError("generator vanishes after combining terms")
        generators.append(vec)
    return generators


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}") from None


def _int_list_arg(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


_COMMON_KEYS = {
    "group",
    "field",
    "scheme",
    "cocycle",
    "seed",
    "out",
}
_COMMAND_KEYS = {
    "entropy": _COMMON_KEYS
    | {"rank", "gen", "presentation", "nmax", "certify_eps", "tiles", "ncheck"},
    "quotient-entropy": _COMMON_KEYS
    | {
        "rank",
        "gen",
        "ngen",
        "presentation",
        "npresentation",
        "nmax",
        "stability_window",
        "max_steps",
    },
    "addition-check": _COMMON_KEYS
    | {
        "rank",
        "gen",
        "ngen",
        "presentation",
        "npresentation",
        "nmax",
        "tol",
        "stability_window",
        "max_steps",
    },
    "zerodiv": _COMMON_KEYS
    | {"elem", "nmax", "radius", "stability_window", "max_steps"},
    "tile": _COMMON_KEYS | {"target", "tiles", "eps"},
    "folner-ratios": _COMMON_KEYS | {"nmax", "cshape", "cradius"},
    "validate-cocycle": _COMMON_KEYS | {"sigma", "rho", "budget"},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrolen",
        description="Exact Folner, tiling and trajectory-entropy runs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value config file; flags override")
        p.add_argument("--group")
        p.add_argument("--field")
        p.add_argument("--scheme")
        p.add_argument("--cocycle")
        p.add_argument("--seed", type=int)
        p.add_argument("--out")

    p = sub.add_parser("entropy", help="window ratios of a presentation")
    common(p)
    p.add_argument("--rank", type=int)
    p.add_argument("--gen")
    p.add_argument("--presentation")
    p.add_argument("--nmax", type=int)
    p.add_argument("--certify-eps", dest="certify_eps", type=_fraction_arg)
    p.add_argument("--tiles", type=_int_list_arg)
    p.add_argument("--ncheck", type=int)

    p = sub.add_parser("quotient-entropy", help="quotient window ratios")
    common(p)
    p.add_argument("--rank", type=int)
    p.add_argument("--gen")
    p.add_argument("--ngen")
    p.add_argument("--presentation")
    p.add_argument("--npresentation")
    p.add_argument("--nmax", type=int)
    p.add_argument("--stability-window", dest="stability_window", type=int)
    p.add_argument("--max-steps", dest="max_steps", type=int)

    p = sub.add_parser("addition-check", help="additivity report")
    common(p)
    p.add_argument("--rank", type=int)
    p.add_argument("--gen")
    p.add_argument("--ngen")
    p.add_argument("--presentation")
    p.add_argument("--npresentation")
    p.add_argument("--nmax", type=int)
    p.add_argument("--tol", type=_fraction_arg)
    p.add_argument("--stability-window", dest="stability_window", type=int)
    p.add_argument("--max-steps", dest="max_steps", type=int)

    p = sub.add_parser("zerodiv", help="zero-divisor scan of a ring element")
    common(p)
    p.add_argument("--elem")
    p.add_argument("--nmax", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--stability-window", dest="stability_window", type=int)
    p.add_argument("--max-steps", dest="max_steps", type=int)

    p = sub.add_parser("tile", help="greedy quasi-tiling of a Folner window")
    common(p)
    p.add_argument("--target", type=int)
    p.add_argument("--tiles", type=_int_list_arg)
    p.add_argument("--eps", type=_fraction_arg)

    p = sub.add_parser("folner-ratios", help="boundary ratio CSV")
    common(p)
    p.add_argument("--nmax", type=int)
    p.add_argument("--cshape", choices=["box", "ball"])
    p.add_argument("--cradius", type=int)

    p = sub.add_parser("validate-cocycle", help="sampled twist-data checks")
    common(p)
    p.add_argument("--sigma", choices=["trivial", "frobenius"])
    p.add_argument("--rho", choices=["trivial"])
    p.add_argument("--budget", type=int)

    return parser


_CONFIG_PARSERS = {
    "seed": int,
    "rank": int,
    "nmax": int,
    "ncheck": int,
    "radius": int,
    "target": int,
    "cradius": int,
    "budget": int,
    "stability_window": int,
    "max_steps": int,
    "tol": Fraction,
    "eps": Fraction,
    "certify_eps": Fraction,
    "tiles": lambda s: tuple(int(x) for x in s.split(",")),
}


def _load_config_file(path: str, command: str) -> dict:
    values: dict = {}
    allowed = _COMMAND_KEYS[command]
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in allowed:
            raise CliError(f"{path}:{lineno}: unknown key {key!r} for {command}")
        conv = _CONFIG_PARSERS.get(key, str)
        try:
            values[key] = conv(value)
        except (ValueError, ZeroDivisionError):
            raise CliError(f"{path}:{lineno}: bad value for {key!r}") from None
    return values


class RunConfig:
    """Merged, validated configuration for one command invocation."""

    def __init__(self, ns: argparse.Namespace):
        self.command = ns.command
        merged: dict = {}
        if getattr(ns, "config", None):
            merged.update(_load_config_file(ns.config, ns.command))
        for key in _COMMAND_KEYS[ns.command]:
            flag = getattr(ns, key, None)
            if flag is not None:
                merged[key] = flag
        env_seed = os.environ.get("ENTROLEN_SEED")
        if env_seed is not None:
            try:
                merged["seed"] = int(env_seed)
            except ValueError:
                raise CliError(f"bad ENTROLEN_SEED {env_seed!r}") from None
        self.values = merged

    def get(self, key, default=None):
        return self.values.get(key, default)

    def require(self, key):
        if key not in self.values:
            raise CliError(f"missing required option --{key.replace('_', '-')}")
        return self.values[key]

    def group(self):
        return group_from_name(self.require("group"))

    def field(self):
        return field_from_name(self.require("field"))

    def scheme(self, group):
        name = self.get("scheme")
        return default_scheme(group) if name is None else scheme_from_name(name, group)

    def cocycle(self, field, group):
        return cocycle_from_name(self.get("cocycle", "trivial"), field, group)

    def stabilization(self) -> StabilizationConfig:
        return StabilizationConfig(
            stability_window=self.get("stability_window", 3),
            max_steps=self.get("max_steps", 30),
        )

    def presentation(self, gen_key="gen", file_key="presentation"):
        path = self.get(file_key)
        if path is not None:
            return parse_presentation(path)
        field = self.field()
        group = self.group()
        rank = self.require("rank")
        if rank < 1:
            raise CliError("rank must be >= 1")
        cocycle = self.cocycle(field, group)
        text = self.get(gen_key)
        if text is None:
            raise CliError(f"need --{gen_key} or --{file_key}")
        gens = _parse_inline_generators(field, group, rank, text)
        return SubshiftPresentation(cocycle, rank, gens)


def _estimate_csv(est) -> list:
    lines = ["n,folner_size,trajectory_dim,ratio"]
    for row in est.rows:
        lines.append(
            f"{row.n},{row.folner_size},{row.dim},{_fmt_fraction(row.ratio)}"
        )
    return lines


def _cmd_entropy(run: RunConfig) -> int:
    pres = run.presentation()
    scheme = run.scheme(pres.group)
    n_max = run.require("nmax")
    est = estimate(pres, scheme, n_max)
    status = EXIT_OK
    extra = []
    if run.get("certify_eps") is not None:
        eps = run.require("certify_eps")
        tiles = run.require("tiles")
        n_check = run.get("ncheck", max(tiles))
        try:
            cert = certified_upper_bound(pres, scheme, eps, tiles, n_check)
            est = dataclasses.replace(est, certified_upper=cert.bound)
            extra.append(f"certified_upper={_fmt_fraction(cert.bound)}")
            extra.append(f"certified_windows={cert.checked_from}..{cert.checked_to}")
        except TilingFailed as exc:
            extra.append(f"certified_upper=unavailable ({exc})")
            status = EXIT_BUDGET
    _emit(_estimate_csv(est) + extra, run.get("out"))
    return status


def _cmd_quotient(run: RunConfig) -> int:
    pres = run.presentation()
    sub = _sub_presentation(run, pres)
    scheme = run.scheme(pres.group)
    est = estimate_quotient(
        pres, sub, scheme, run.require("nmax"), run.stabilization()
    )
    _emit(_estimate_csv(est), run.get("out"))
    return EXIT_OK if est.all_stabilized else EXIT_BUDGET


def _sub_presentation(run: RunConfig, ambient: SubshiftPresentation):
    path = run.get("npresentation")
    if path is not None:
        return parse_presentation(path)
    text = run.get("ngen")
    if text is None:
        raise CliError("need --ngen or --npresentation")
    if not text.strip() or text.strip() == "0":
        # zero submodule: presented by no generators
        return _ZeroSub(ambient)
    gens = _parse_inline_generators(
        ambient.field, ambient.group, ambient.rank, text
    )
    return SubshiftPresentation(ambient.cocycle, ambient.rank, gens)


class _ZeroSub(SubshiftPresentation):
    """Zero submodule of a given ambient module (no generators)."""

    def __init__(self, ambient: SubshiftPresentation):
        # bypasses the base validation: the zero module has no generators
        self.cocycle = ambient.cocycle
        self.rank = ambient.rank
        self.generators = ()


def _cmd_addition(run: RunConfig) -> int:
    pres = run.presentation()
    sub = _sub_presentation(run, pres)
    scheme = run.scheme(pres.group)
    report = addition_check(
        pres,
        sub,
        scheme,
        run.require("nmax"),
        run.get("tol", Fraction(1, 20)),
        run.stabilization(),
    )
    lines = [
        f"e_total={_fmt_fraction(report.e_total)}",
        f"e_sub={_fmt_fraction(report.e_sub)}",
        f"e_quotient={_fmt_fraction(report.e_quotient)}",
        f"discrepancy={_fmt_fraction(report.discrepancy)}",
        f"tolerance={_fmt_fraction(report.tolerance)}",
        f"within_tolerance={str(report.within_tolerance).lower()}",
        f"ses_exact={str(report.ses_exact_all).lower()}",
        f"lower_bound_inequality={str(report.lower_bound_ok_all).lower()}",
        f"stabilized={str(report.all_stabilized).lower()}",
        f"pass={str(report.passed).lower()}",
    ]
    _emit(lines, run.get("out"))
    return EXIT_OK if report.all_stabilized else EXIT_BUDGET


def _cmd_zerodiv(run: RunConfig) -> int:
    field = run.field()
    group = run.group()
    cocycle = run.cocycle(field, group)
    try:
        x = parse_element(field, group, run.require("elem"))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if x.is_zero():
        raise CliError("element must be nonzero")
    scheme = run.scheme(group)
    report = zero_divisor_scan(
        x,
        cocycle,
        scheme,
        run.require("nmax"),
        run.require("radius"),
        run.stabilization(),
    )
    lines = [
        f"verdict={report.verdict}",
        f"witness={format_element(report.witness) if report.witness else 'none'}",
        f"submodule_ratio={_fmt_fraction(report.submodule.estimate)}",
        f"quotient_ratio={_fmt_fraction(report.quotient.estimate)}",
        f"integrality_distance={_fmt_fraction(report.integrality)}",
        f"stabilized={str(report.quotient.all_stabilized).lower()}",
    ]
    _emit(lines, run.get("out"))
    return EXIT_OK if report.quotient.all_stabilized else EXIT_BUDGET


def _cmd_tile(run: RunConfig) -> int:
    group = run.group()
    scheme = run.scheme(group)
    target = folner_set(scheme, run.require("target"))
    tiles = [folner_set(scheme, i) for i in run.require("tiles")]
    eps = run.require("eps")
    try:
        tiling = greedy_quasi_tile(target, tiles, eps)
    except TilingFailed as exc:
        cover = exc.cover if exc.cover is not None else Fraction(0)
        _emit([f"construction,fail,{_fmt_fraction(cover)}"], run.get("out"))
        return EXIT_BUDGET
    report = check_quasi_tiling(target, tiling)
    lines = []
    for cond in report.conditions:
        status = "pass" if cond.passed else "fail"
        lines.append(f"{cond.name},{status},{_fmt_fraction(cond.ratio)}")
    for i, centers in enumerate(tiling.centers, start=1):
        cs = ";".join(format_group_element(g) for g in centers)
        lines.append(f"{i}:{cs}")
    _emit(lines, run.get("out"))
    return EXIT_OK


def _cmd_folner(run: RunConfig) -> int:
    group = run.group()
    scheme = run.scheme(group)
    n_max = run.require("nmax")
    shape = run.get("cshape", "box" if scheme.name in ("boxes", "boxz2") else "ball")
    radius = run.get("cradius", 1)
    if shape == "ball":
        C = ball(group, radius)
    elif scheme.name == "boxes":
        C = Boxes(group).set_at(radius)
    elif scheme.name == "boxz2":
        C = BoxTimesZ2(group).set_at(radius)
    else:
        raise CliError("--cshape box needs a box scheme")
    lines = ["n,folner_size,boundary_size,ratio"]
    for n in range(1, n_max + 1):
        F = folner_set(scheme, n)
        b = len(boundary(F, C))
        lines.append(f"{n},{len(F)},{b},{_fmt_fraction(Fraction(b, len(F)))}")
    _emit(lines, run.get("out"))
    return EXIT_OK


def _cmd_validate(run: RunConfig) -> int:
    field = run.field()
    group = run.group()
    sigma = run.get("sigma", "trivial")
    rho = run.get("rho", "trivial")
    if rho != "trivial":
        raise CliError("only the trivial rho is constructible from the CLI")
    cocycle = cocycle_from_name(
        "frobenius" if sigma == "frobenius" else "trivial", field, group
    )
    report = validate_cocycle(
        cocycle, sample_budget=run.get("budget", 2000), seed=run.get("seed", 0)
    )
    lines = [f"result={'pass' if report.ok else 'fail'}"]
    if not report.ok:
        lines.append(f"violation={report.failure}")
    lines.append(f"checked_radius={report.checked_radius}")
    lines.append(f"triples_checked={report.triples_checked}")
    lines.append(f"associativity_samples={report.associativity_checked}")
    _emit(lines, run.get("out"))
    return EXIT_OK


_DISPATCH = {
    "entropy": _cmd_entropy,
    "quotient-entropy": _cmd_quotient,
    "addition-check": _cmd_addition,
    "zerodiv": _cmd_zerodiv,
    "tile": _cmd_tile,
    "folner-ratios": _cmd_folner,
    "validate-cocycle": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        run = RunConfig(ns)
        return _DISPATCH[ns.command](run)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
