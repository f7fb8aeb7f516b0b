"""Structural checks over families of model specs.

Everything here is exact: random points and torus elements are small nonzero
rationals drawn from a seeded generator.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import laurent
from .quiver import (BlockDecomposition, ModelSpec, block_size, decompose, identify_block,
                     weight_vertex)
from .superpotential import (arrow_sum, closed_form, eliminate, plain_frame, random_rational,
                             verify_tau_pullback)
from .weights import WeightTable, act, action_matrix, character, validate_weights, weight_table

# eliminate output above this size is not re-evaluated at random points
EVALUATION_TERM_LIMIT = 20_000


def sweep_specs(max_n: int = 4, max_k: int = 4, max_l: int = 3,
                min_n: int = 2, min_k: int = 2, min_l: int = 0) -> Iterator[ModelSpec]:
    """All Fano specs in the box, every ordering of the degrees included."""
    for n in range(min_n, max_n + 1):
        for k in range(min_k, max_k + 1):
            for l in range(min_l, max_l + 1):
                for degs in itertools.product(range(1, n + k), repeat=l):
                    if sum(degs) < n + k:
                        yield ModelSpec(n, k, degs)


@dataclass
class CheckResult:
    spec: ModelSpec
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SweepReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def summary(self) -> dict[str, tuple[int, int]]:
        """check name -> (passed, total)."""
        out: dict[str, list[int]] = {}
        for r in self.results:
            slot = out.setdefault(r.name, [0, 0])
            slot[0] += r.ok
            slot[1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": {k: {"passed": p, "total": t} for k, (p, t) in self.summary().items()},
            "failures": [{"spec": str(r.spec), "check": r.name, "detail": r.detail}
                         for r in self.failures()],
        }


def check_decomposition(dec: BlockDecomposition) -> str:
    """Empty string if the decomposition is consecutive and tiles correctly."""
    spec, q = dec.spec, dec.quiver
    seen = set()
    prefix = frozenset()
    for p, b in enumerate(dec.blocks, start=1):
        if seen & b.arrows:
            return f"block {p} overlaps an earlier block"
        seen |= b.arrows
        if block_size(b) != spec.degrees[p - 1]:
            return f"block {p} has size {block_size(b)}, degree {spec.degrees[p - 1]}"
        prefix = prefix | b.arrows
        if identify_block(spec.n, spec.k, prefix) is None:
            return f"union of blocks 1..{p} is not a block"
    if dec.blocks and q.arrows[0] not in dec.blocks[0].arrows:
        return "v_0_1 is not in the first block"
    if seen | dec.complement != frozenset(q.arrows) or seen & dec.complement:
        return "blocks and complement do not partition the arrows"
    wv = [weight_vertex(b) for b in dec.blocks]
    if len(set(wv)) != len(wv) or q.corner in wv:
        return f"bad weight vertices {wv}"
    return ""


def random_plain_point(spec: ModelSpec, rng: random.Random) -> dict[str, Fraction]:
    return {name: random_rational(rng) for name in plain_frame(spec.n, spec.k).variables}


def check_semi_invariance(table: WeightTable, rng: random.Random, trials: int = 5) -> str:
    """``F_{B_p}(w.x) = F_{B_p}(x)/w_p``, ``F_A(w.x) = F_A(x)``, ``a(w.x) = mu(w) a(x)``."""
    dec = table.decomposition
    spec = dec.spec
    frame = plain_frame(spec.n, spec.k)
    constraints = [arrow_sum(b.arrows, frame) for b in dec.blocks]
    free = arrow_sum(dec.complement - {dec.quiver.last_arrow}, frame)
    for _ in range(trials):
        x = random_plain_point(spec, rng)
        w = [random_rational(rng) for _ in dec.blocks]
        wx = act(table, w, x)
        for p, g in enumerate(constraints):
            if laurent.evaluate(g, wx) != laurent.evaluate(g, x) / w[p]:
                return f"F_B{p + 1} is not semi-invariant of weight 1/w_{p + 1}"
        if laurent.evaluate(free, wx) != laurent.evaluate(free, x):
            return "F_A is not invariant"
        if wx["a"] != character(table, w) * x["a"]:
            return "a is not semi-invariant of weight mu(w)"
    return ""


def check_net_weights(table: WeightTable) -> str:
    """Exponent-level form of the invariance: F_A terms weigh 0, the last arrow weighs d."""
    dec = table.decomposition
    spec = dec.spec
    frame = plain_frame(spec.n, spec.k)
    names = frame.variables.names
    weights = [table.variable_weights(x) for x in names]
    last = dec.quiver.last_arrow
    for arrow in dec.complement:
        e = next(iter(arrow_sum([arrow], frame).items()))[0]
        net = tuple(sum(x * w[p] for x, w in zip(e, weights)) for p in range(len(dec.blocks)))
        expected = spec.degrees if arrow == last else (0,) * len(dec.blocks)
        if net != tuple(expected):
            return f"arrow {arrow.label} has net weight {net}, expected {tuple(expected)}"
    return ""


def check_spec(spec: ModelSpec, seed: int = 0, points: int = 20,
               closed: bool = True) -> list[CheckResult]:
    rng = random.Random(f"{seed}:{spec}")
    out: list[CheckResult] = []

    def record(name, detail):
        out.append(CheckResult(spec, name, not detail, detail))

    dec = decompose(spec)
    record("decomposition", check_decomposition(dec))
    try:
        table = weight_table(dec)
    except AssertionError as exc:
        record("weights", str(exc))
        return out
    record("weights", "" if validate_weights(table) else str(validate_weights(table)))
    try:
        action_matrix(table)
        record("unitriangular", "")
    except AssertionError as exc:
        record("unitriangular", str(exc))
    record("net_weights", check_net_weights(table))
    record("semi_invariance", check_semi_invariance(table, rng))

    f = eliminate(dec)
    report = verify_tau_pullback(dec, points=points, seed=rng.randrange(1 << 30),
                                 f=f if len(f) <= EVALUATION_TERM_LIMIT else None,
                                 check_superpotential=len(f) <= EVALUATION_TERM_LIMIT)
    record("tau_pullback", "; ".join(report.failures[:3]))
    if len(f.variables) != spec.dimension:
        record("dimension", f"{len(f.variables)} variables, expected {spec.dimension}")
    else:
        record("dimension", "")
    if closed:
        g = closed_form(spec)
        record("closed_form", "" if f == g else
               f"closed form differs ({len(f)} vs {len(g)} terms)")
    return out


def run_sweep(specs, seed: int = 0, points: int = 20, closed: bool = True) -> SweepReport:
    report = SweepReport()
    for spec in specs:
        report.results.extend(check_spec(spec, seed=seed, points=points, closed=closed))
    return report
