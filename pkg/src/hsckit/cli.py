"""Single command-line entry point for the toolkit.

One binary, one subcommand group per module:

    hsckit cspace roots|classify ...
    hsckit surface analyze ...
    hsckit tensor validate|extremize ...
    hsckit geography check|blowup|scan-horikawa|plotdata ...

Every successful run emits exactly one output envelope ``{command, version,
payload, warnings}`` (JSON) or the equivalent commented TSV.  Payload shapes
are pinned by the JSON schema files shipped in ``hsckit/schemas``.  Exit
codes: 0 success (warnings allowed), 1 domain error (printed to stderr with
the error name), 2 usage error.

Output is deterministic: identical flags and seed give byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .cspace import classify_all, published_positive
from .curvature import (
    EinsteinFramePoint,
    KahlerCurvatureTensor,
    SYMMETRY_TOL,
    chern_weil,
    max_hsc_surface,
    sufficient_negativity,
    tensor_from_dict,
    validate,
)
from .errors import HsckitError, NodeOutOfRange, RegimeViolation
from .extremize import ExtremizeConfig, extremize_hsc
from .geography import (
    GeographyVerdict,
    blowup_transform,
    builtin_surface_table,
    check_inequality,
    horikawa_scan,
    plot_columns,
    records_from_json,
)
from .rootsys import DEFAULT_MAX_RANK, LieType, cartan_matrix, highest_root, positive_roots

__all__ = ["SCHEMAS", "build_parser", "dispatch", "main", "schema_text"]

# payload schema shipped for each subcommand
SCHEMAS = {
    "cspace roots": "cspace_roots.json",
    "cspace classify": "cspace_classify.json",
    "surface analyze": "surface_analyze.json",
    "tensor validate": "tensor_validate.json",
    "tensor extremize": "tensor_extremize.json",
    "geography check": "geography_check.json",
    "geography blowup": "geography_blowup.json",
    "geography scan-horikawa": "geography_scan_horikawa.json",
    "geography plotdata": "geography_plotdata.json",
    "envelope": "envelope.json",
}


def schema_text(command: str) -> str:
    """The published JSON schema for a subcommand's payload (or 'envelope')."""
    return resources.files("hsckit.schemas").joinpath(SCHEMAS[command]).read_text()


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "tsv"), default="json")
    parser.add_argument("--output", type=Path, default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsckit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hsckit {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    cspace = groups.add_parser("cspace", help="root systems and marked-node positivity")
    cspace_cmds = cspace.add_subparsers(dest="command", required=True)

    roots = cspace_cmds.add_parser("roots", help="list the positive roots of a simple type")
    roots.add_argument("--family", required=True, choices=("A", "B", "C", "D", "E", "F", "G"))
    roots.add_argument("--rank", required=True, type=int)
    roots.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    _add_output_options(roots)

    classify = cspace_cmds.add_parser(
        "classify", help="positivity verdict per marked node, optionally audited"
    )
    classify.add_argument("--family", required=True, choices=("A", "B", "C", "D", "E", "F", "G"))
    classify.add_argument("--rank", required=True, type=int)
    classify.add_argument("--node", type=int, default=None, help="restrict to one node")
    classify.add_argument(
        "--audit", action="store_true", help="compare against the published classification"
    )
    classify.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    _add_output_options(classify)

    surface = groups.add_parser("surface", help="distinguished-frame surface analysis")
    surface_cmds = surface.add_subparsers(dest="command", required=True)
    analyze = surface_cmds.add_parser("analyze", help="extremes, bound verdict and gamma functions")
    analyze.add_argument("--H", required=True, type=float, help="HSC minimum R_{1 1b 1 1b}")
    analyze.add_argument("--A", required=True, type=float, help="R_{1 1b 2 2b}")
    analyze.add_argument("--B-re", dest="b_re", type=float, default=0.0, help="Re R_{1 2b 1 2b}")
    analyze.add_argument("--B-im", dest="b_im", type=float, default=0.0, help="Im R_{1 2b 1 2b}")
    _add_output_options(analyze)

    tensor = groups.add_parser("tensor", help="curvature tensor validation and extremization")
    tensor_cmds = tensor.add_subparsers(dest="command", required=True)

    tvalidate = tensor_cmds.add_parser("validate", help="check the Kähler symmetries")
    tvalidate.add_argument("--input", required=True, type=Path, help="tensor JSON file")
    tvalidate.add_argument("--tolerance", type=float, default=SYMMETRY_TOL)
    _add_output_options(tvalidate)

    textremize = tensor_cmds.add_parser("extremize", help="HSC extremes over the unit sphere")
    textremize.add_argument("--input", required=True, type=Path, help="tensor JSON file")
    textremize.add_argument("--starts", type=int, default=32)
    textremize.add_argument("--max-iters", type=int, default=500)
    textremize.add_argument("--seed", type=int, default=0)
    textremize.add_argument("--oracle-samples", type=int, default=0)
    textremize.add_argument("--tolerance", type=float, default=SYMMETRY_TOL)
    _add_output_options(textremize)

    geography = groups.add_parser("geography", help="Chern-number bound bookkeeping")
    geography_cmds = geography.add_subparsers(dest="command", required=True)

    check = geography_cmds.add_parser("check", help="decide c2 <= 3 c1^2 per record")
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", action="store_true", help="use the published family catalog")
    source.add_argument("--input", type=Path, help="surface JSON file")
    _add_output_options(check)

    blowup = geography_cmds.add_parser("blowup", help="Chern numbers after k point blow-ups")
    blowup.add_argument("--c1sq", required=True, type=int)
    blowup.add_argument("--c2", required=True, type=int)
    blowup.add_argument("--k", required=True, type=int)
    _add_output_options(blowup)

    scan = geography_cmds.add_parser("scan-horikawa", help="sweep both Horikawa lines")
    scan.add_argument("--pg", required=True, help="inclusive range, e.g. 3..20")
    _add_output_options(scan)

    plotdata = geography_cmds.add_parser(
        "plotdata", help="points plus the c2 = 3 c1^2 line as columns"
    )
    plot_source = plotdata.add_mutually_exclusive_group()
    plot_source.add_argument("--builtin", action="store_true", default=True)
    plot_source.add_argument("--input", type=Path)
    _add_output_options(plotdata)

    return parser


def _run_cspace_roots(args) -> tuple[dict, list[str]]:
    lie_type = LieType(args.family, args.rank)
    rs = positive_roots(lie_type, max_rank=args.max_rank)
    payload = {
        "family": lie_type.family,
        "rank": lie_type.rank,
        "count": len(rs.positive_roots),
        "cartan": cartan_matrix(lie_type).tolist(),
        "highest_root": list(highest_root(rs)),
        "roots": [list(r) for r in rs.positive_roots],
    }
    return payload, []


def _run_cspace_classify(args) -> tuple[dict, list[str]]:
    lie_type = LieType(args.family, args.rank)
    verdicts = classify_all(lie_type, max_rank=args.max_rank)
    if args.node is not None:
        verdicts = [v for v in verdicts if v.descriptor.node == args.node]
        if not verdicts:
            raise NodeOutOfRange(f"node {args.node} out of range 1..{lie_type.rank}")
    warnings: list[str] = []
    items = []
    for verdict in verdicts:
        item = verdict.to_payload()
        if args.audit:
            published = published_positive(verdict.descriptor)
            item["published_positive"] = published
            if verdict.itoh_positive == published:
                item["category"] = "agree-positive" if published else "agree-negative"
            else:
                item["category"] = "disagree"
                witnesses = ", ".join(str(tuple(r)) for r in verdict.evidence)
                warnings.append(
                    f"audit disagreement at ({lie_type}, node {verdict.descriptor.node}): "
                    f"computed {'positive' if verdict.itoh_positive else 'negative'}, "
                    f"published {'positive' if published else 'negative'}; "
                    f"witness roots {witnesses}"
                )
        items.append(item)
    payload = {"family": lie_type.family, "rank": lie_type.rank, "verdicts": items}
    return payload, warnings


def _run_surface_analyze(args) -> tuple[dict, list[str]]:
    point = EinsteinFramePoint(H=args.H, A=args.A, B=complex(args.b_re, args.b_im))
    gamma1, gamma2 = chern_weil(point)
    surface_max = max_hsc_surface(point)
    warnings: list[str] = []
    try:
        sufficient = sufficient_negativity(point)
    except RegimeViolation:
        sufficient = None
        warnings.append(
            "sufficiency test skipped: it requires a negative einstein constant "
            f"(gamma1 = {gamma1})"
        )
    payload = {
        "H": point.H,
        "A": point.A,
        "B": {"re": point.B.real, "im": point.B.imag},
        "min_hsc": point.H,
        "max_hsc": surface_max.value,
        "negative": surface_max.negative,
        "gamma1": gamma1,
        "gamma2": gamma2,
        "einstein_constant": point.einstein_constant,
        "sufficient_negative": sufficient,
    }
    return payload, warnings


def _load_tensor(path: Path, tolerance: float) -> tuple[KahlerCurvatureTensor, list[str]]:
    data = json.loads(path.read_text())
    tensor = tensor_from_dict(data)
    warnings = []
    if tensor.asymmetry > tolerance:
        warnings.append(
            f"canonicalization adjusted stated entries by {tensor.asymmetry:.3g} "
            f"(tolerance {tolerance:g})"
        )
    return tensor, warnings


def _run_tensor_validate(args) -> tuple[dict, list[str]]:
    data = json.loads(args.input.read_text())
    tensor = tensor_from_dict(data)
    report = validate(tensor, args.tolerance)
    warnings = []
    if tensor.asymmetry > args.tolerance:
        warnings.append(
            f"canonicalization adjusted stated entries by {tensor.asymmetry:.3g}"
        )
    payload = {"n": tensor.n, "asymmetry": tensor.asymmetry}
    payload.update(report.to_payload())
    return payload, warnings


def _run_tensor_extremize(args) -> tuple[dict, list[str]]:
    tensor, warnings = _load_tensor(args.input, args.tolerance)
    cfg = ExtremizeConfig(
        starts=args.starts,
        max_iters=args.max_iters,
        seed=args.seed,
        oracle_samples=args.oracle_samples,
    )
    result = extremize_hsc(tensor, cfg)
    if not result.converged:
        warnings.append("optimizer did not converge; values are best-so-far")
    return result.to_payload(), warnings


def _geography_verdict_payloads(verdicts: list[GeographyVerdict]) -> tuple[list[dict], list[str]]:
    payloads = []
    warnings = []
    for verdict in verdicts:
        payloads.append(verdict.to_payload())
        for flag in verdict.record.flags:
            warnings.append(f"{verdict.record.name}: {flag}")
    return payloads, warnings


def _run_geography_check(args) -> tuple[dict, list[str]]:
    if args.builtin:
        records = list(builtin_surface_table())
    else:
        records = records_from_json(args.input.read_text())
    verdicts = [check_inequality(r) for r in records]
    items, warnings = _geography_verdict_payloads(verdicts)
    return {"verdicts": items}, warnings


def _run_geography_blowup(args) -> tuple[dict, list[str]]:
    if args.k < 0:
        raise ValueError("k must be >= 0")
    c1sq, c2 = blowup_transform(args.c1sq, args.c2, args.k)
    payload = {
        "input": {"c1sq": args.c1sq, "c2": args.c2},
        "k": args.k,
        "result": {"c1sq": c1sq, "c2": c2},
    }
    return payload, []


def _parse_pg_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        value = int(text)
        return value, value
    except ValueError as exc:
        raise ValueError(f"bad pg range {text!r}; expected e.g. 3..20") from exc


def _run_geography_scan(args) -> tuple[dict, list[str]]:
    pg_min, pg_max = _parse_pg_range(args.pg)
    verdicts = horikawa_scan(pg_min, pg_max)
    items, warnings = _geography_verdict_payloads(verdicts)
    return {"pg_min": pg_min, "pg_max": pg_max, "verdicts": items}, warnings


def _run_geography_plotdata(args) -> tuple[dict, list[str]]:
    if args.input is not None:
        records = records_from_json(args.input.read_text())
    else:
        records = list(builtin_surface_table())
    return {"rows": plot_columns(records)}, []


_RUNNERS = {
    ("cspace", "roots"): _run_cspace_roots,
    ("cspace", "classify"): _run_cspace_classify,
    ("surface", "analyze"): _run_surface_analyze,
    ("tensor", "validate"): _run_tensor_validate,
    ("tensor", "extremize"): _run_tensor_extremize,
    ("geography", "check"): _run_geography_check,
    ("geography", "blowup"): _run_geography_blowup,
    ("geography", "scan-horikawa"): _run_geography_scan,
    ("geography", "plotdata"): _run_geography_plotdata,
}


def _render_tsv(command: str, payload: dict, warnings: list[str], version: str) -> str:
    lines = [f"# command: {command}", f"# version: {version}"]
    lines += [f"# warning: {w}" for w in warnings]

    def row(*cells) -> str:
        return "\t".join(str(c) for c in cells)

    if command == "cspace roots":
        lines.append("# columns: " + "\t".join(f"n{i+1}" for i in range(payload["rank"])))
        lines += [row(*r) for r in payload["roots"]]
    elif command == "cspace classify":
        audited = any("category" in v for v in payload["verdicts"])
        header = ["family", "rank", "node", "max_level", "positive", "census", "evidence"]
        if audited:
            header += ["published_positive", "category"]
        lines.append("# columns: " + "\t".join(header))
        for v in payload["verdicts"]:
            census = ",".join(f"{k}:{n}" for k, n in sorted(v["census"].items(), key=lambda kv: int(kv[0])))
            evidence = ";".join(",".join(map(str, r)) for r in v["evidence"])
            cells = [v["family"], v["rank"], v["node"], v["max_level"], v["positive"], census, evidence]
            if audited:
                cells += [v.get("published_positive"), v.get("category")]
            lines.append(row(*cells))
    elif command in ("geography check", "geography scan-horikawa"):
        header = ["name", "c1sq", "c2", "passes", "margin"]
        lines.append("# columns: " + "\t".join(header))
        for v in payload["verdicts"]:
            lines.append(row(v["name"], v["c1sq"], v["c2"], v["passes"], v["margin"]))
    elif command == "geography plotdata":
        lines.append("# columns: name\tc1sq\tc2\tline_c2")
        for r in payload["rows"]:
            lines.append(row(r["name"], r["c1sq"], r["c2"], r["line_c2"]))
    else:
        # generic key/value flattening for scalar-shaped payloads
        def flatten(prefix: str, value):
            if isinstance(value, dict):
                for key in sorted(value):
                    flatten(f"{prefix}.{key}", value[key])
            elif isinstance(value, list):
                lines.append(row(prefix, json.dumps(value)))
            else:
                lines.append(row(prefix, value))

        for key in sorted(payload):
            flatten(key, payload[key])
    return "\n".join(lines) + "\n"


def dispatch(argv: list[str]) -> int:
    """Parse argv, run the command, emit one envelope.  Returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = f"{args.group} {args.command}"
    try:
        payload, warnings = _RUNNERS[(args.group, args.command)](args)
    except HsckitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    envelope = {
        "command": command,
        "version": __version__,
        "payload": payload,
        "warnings": warnings,
    }
    if args.format == "json":
        text = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_tsv(command, payload, warnings, __version__)
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
