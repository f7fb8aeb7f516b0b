"""Command-line front end.

Exit codes: 0 success or period match, 2 invalid spec, 3 internal
cross-check disagreement, 4 period mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .invariants import run_sweep, sweep_specs
from .iseries import iseries
from .laurent import LaurentPolynomial
from .periods import check_period
from .quiver import InvalidSpecError, ModelSpec, build_quiver, decompose
from .superpotential import closed_form, eliminate, factored, reduced_frame
from .weights import action_matrix, weight_table, weight_variables

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DISAGREE = 3
EXIT_MISMATCH = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    k: int | None = None
    degrees: tuple[int, ...] = ()
    order: int = 5
    method: str = "elimination"
    format: str = "json"
    workers: int = 1
    seed: int = 0
    max_n: int = 4
    max_k: int = 4
    max_l: int = 3
    points: int = 20

    def spec(self) -> ModelSpec:
        if self.n is None or self.k is None:
            raise InvalidSpecError("--n and --k are required")
        return ModelSpec(self.n, self.k, self.degrees)


def parse_degrees(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be a comma list of integers, got {text!r}")


def _dump(data) -> str:
    return json.dumps(data, separators=(",", ":"))


def _matrix_text(rows) -> list[str]:
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return ["  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in rows]


def cmd_model(cfg: RunConfig) -> tuple[int, str]:
    spec = cfg.spec()
    quiver = build_quiver(spec)
    dec = decompose(spec)
    table = weight_table(dec)
    am = action_matrix(table)
    data = {
        "spec": spec.to_dict(),
        "fano_index": spec.fano_index,
        "quiver": {
            "vertices": [list(v) for v in quiver.vertices],
            "arrows": [a.label for a in quiver.arrows],
        },
        **dec.to_dict(),
        "weights": table.to_dict(),
        **am.to_dict(),
        "weight_variables": weight_variables(dec),
        "torus_variables": list(reduced_frame(dec).variables.names),
    }
    if cfg.format == "json":
        return EXIT_OK, _dump(data)
    lines = [f"{spec}  fano index {spec.fano_index}",
             f"quiver: {len(quiver.vertices)} vertices, {len(quiver.arrows)} arrows"]
    for p, b in enumerate(data["blocks"], start=1):
        lines.append(f"B{p} = {b['kind']}({b['r']},{b['s']})  size {b['size']}  "
                     f"weight vertex {tuple(b['weight_vertex'])}  variable {b['weight_variable']}")
    lines.append("B0 = {" + ", ".join(data["complement"]) + "}")
    verts = [tuple(v) for v in data["weights"]["vertices"]]
    lines.append("weights:")
    lines.append("  vertex   " + " ".join(f"w{p}".rjust(3) for p in range(1, spec.length + 1)))
    for idx, v in enumerate(verts):
        row = " ".join(str(w[idx]).rjust(3) for w in data["weights"]["weights"])
        lines.append(f"  {str(v).ljust(8)} {row}")
    lines.append("M =")
    lines += _matrix_text(am.M)
    lines.append("M^-1 =")
    lines += _matrix_text(am.Minv)
    lines.append("torus variables: " + ", ".join(data["torus_variables"]))
    return EXIT_OK, "\n".join(lines)


def cmd_superpotential(cfg: RunConfig) -> tuple[int, str]:
    spec = cfg.spec()
    dec = decompose(spec)
    polys: dict[str, LaurentPolynomial] = {}
    if cfg.method in ("elimination", "both"):
        polys["elimination"] = eliminate(dec, workers=cfg.workers)
    if cfg.method in ("closed", "both"):
        polys["closed"] = closed_form(spec, workers=cfg.workers)
    code = EXIT_OK
    verdict = None
    if cfg.method == "both":
        verdict = "agree" if polys["elimination"] == polys["closed"] else "disagree"
        if verdict == "disagree":
            code = EXIT_DISAGREE
    if cfg.format == "json":
        data = {"spec": spec.to_dict(), "method": cfg.method}
        for name, f in polys.items():
            data[name] = f.to_dict()
        if verdict is not None:
            data["verdict"] = verdict
        return code, _dump(data)
    f = next(iter(polys.values()))
    lines = [f"{spec}  torus variables: {', '.join(f.variables.names)}",
             f"f = {factored(dec)}",
             f"expanded: {len(f)} terms"]
    if verdict is not None:
        lines.append(f"elimination vs closed form: {verdict}")
    return code, "\n".join(lines)


def cmd_iseries(cfg: RunConfig) -> tuple[int, str]:
    spec = cfg.spec()
    series = iseries(spec, cfg.order)
    if cfg.format == "json":
        return EXIT_OK, _dump(series.to_dict())
    return EXIT_OK, "\n".join(f"t^{i}: {c}" for i, c in enumerate(series.coefficients))


def cmd_check(cfg: RunConfig) -> tuple[int, str]:
    spec = cfg.spec()
    report = check_period(spec, cfg.order, workers=cfg.workers)
    code = EXIT_OK if report.match else EXIT_MISMATCH
    if cfg.format == "json":
        return code, _dump(report.to_dict())
    lines = [f"{spec}  order {cfg.order}: {report.verdict}"]
    for i, (a, b) in enumerate(zip(report.lhs.coefficients, report.rhs.coefficients)):
        mark = "" if a == b else "   <-- mismatch"
        lines.append(f"  [f^{i}] = {a}   I_{i} = {b}{mark}")
    return code, "\n".join(lines)


def cmd_selftest(cfg: RunConfig) -> tuple[int, str]:
    specs = sweep_specs(cfg.max_n, cfg.max_k, cfg.max_l)
    report = run_sweep(specs, seed=cfg.seed, points=cfg.points)
    code = EXIT_OK if report.ok else EXIT_DISAGREE
    if cfg.format == "json":
        return code, _dump(report.to_dict())
    lines = [f"{name}: {p}/{t}" for name, (p, t) in report.summary().items()]
    lines += [f"FAIL {r.spec} {r.name}: {r.detail}" for r in report.failures()]
    lines.append("all invariants pass" if report.ok else "invariant failures")
    return code, "\n".join(lines)


COMMANDS = {
    "model": cmd_model,
    "superpotential": cmd_superpotential,
    "iseries": cmd_iseries,
    "check": cmd_check,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassmann-lg",
        description="Laurent polynomial mirrors of Fano complete intersections in Grassmannians.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--n", type=int, required=True)
    model.add_argument("--k", type=int, required=True)
    model.add_argument("--degrees", type=parse_degrees, default=(),
                       help="ordered comma list, never sorted (e.g. 1,1,2,1)")

    sub.add_parser("model", parents=[common, model], help="quiver, blocks, weights, M")
    sp = sub.add_parser("superpotential", parents=[common, model], help="Laurent superpotential")
    sp.add_argument("--method", choices=("elimination", "closed", "both"), default="elimination")
    ip = sub.add_parser("iseries", parents=[common, model], help="I-series prefix")
    ip.add_argument("--order", type=int, default=5)
    cp = sub.add_parser("check", parents=[common, model], help="period condition")
    cp.add_argument("--order", type=int, default=5)
    st = sub.add_parser("selftest", parents=[common], help="invariant sweep")
    st.add_argument("--max-n", type=int, default=4)
    st.add_argument("--max-k", type=int, default=4)
    st.add_argument("--max-l", type=int, default=3)
    st.add_argument("--points", type=int, default=20)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if getattr(cfg, "order", 0) < 0:
        return EXIT_INVALID, "error: --order must be nonnegative"
    try:
        return COMMANDS[cfg.command](cfg)
    except InvalidSpecError as exc:
        return EXIT_INVALID, f"error: {exc}"


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == EXIT_INVALID else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
