"""BCFKS equations and their elimination to a Laurent polynomial on a torus.

Three coordinate frames are used:

* ``tilde``: one variable ``ta_i_j`` per grid vertex; the boundary vertices
  ``(0,1)`` and ``(k,n+1)`` carry the value 1.
* ``plain``: ``a`` and ``a_i_j`` for ``(i,j) != (k,n)``; ``a_k_n = 1`` and both
  boundary vertices carry ``a``.
* ``reduced``: the plain variables minus the weight variables of the blocks.
  This is the torus the superpotential ends up on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import laurent
from .laurent import LaurentPolynomial, VariableTable
from .quiver import (Arrow, BlockDecomposition, ModelSpec, Vertex, decompose,
                     vertex_variable)
from .weights import WeightTable, weight_table, weight_variables


@dataclass(frozen=True)
class CoordinateFrame:
    tag: str  # "tilde", "plain" or "reduced"
    n: int
    k: int
    variables: VariableTable

    def vertex_exponent(self, v: Vertex) -> dict[str, int]:
        """The monomial attached to a quiver vertex, as ``{name: power}``."""
        n, k = self.n, self.k
        if self.tag == "tilde":
            if v in ((0, 1), (k, n + 1)):
                return {}
            return {f"ta_{v.i}_{v.j}": 1}
        if self.tag == "plain":
            if v == (k, n):
                return {}
            if v in ((0, 1), (k, n + 1)):
                return {"a": 1}
            return {f"a_{v.i}_{v.j}": 1}
        raise ValueError("the reduced frame has no vertex conventions")


def tilde_frame(n: int, k: int) -> CoordinateFrame:
    names = tuple(f"ta_{i}_{j}" for i in range(1, k + 1) for j in range(1, n + 1))
    return CoordinateFrame("tilde", n, k, VariableTable(names))


def plain_frame(n: int, k: int) -> CoordinateFrame:
    names = ("a",) + tuple(f"a_{i}_{j}" for i in range(1, k + 1) for j in range(1, n + 1)
                           if (i, j) != (k, n))
    return CoordinateFrame("plain", n, k, VariableTable(names))


def reduced_frame(dec: BlockDecomposition) -> CoordinateFrame:
    spec = dec.spec
    drop = set(weight_variables(dec))
    names = tuple(x for x in plain_frame(spec.n, spec.k).variables if x not in drop)
    return CoordinateFrame("reduced", spec.n, spec.k, VariableTable(names))


def arrow_sum(arrows: Iterable[Arrow], frame: CoordinateFrame) -> LaurentPolynomial:
    """Sum of head/tail ratios over an arrow set."""
    if frame.tag == "reduced":
        raise ValueError("arrow sums are defined in the tilde and plain frames only")
    table = frame.variables
    terms: dict[tuple[int, ...], int] = {}
    for arrow in arrows:
        e = [0] * len(table)
        for name, p in frame.vertex_exponent(arrow.head).items():
            e[table.index(name)] += p
        for name, p in frame.vertex_exponent(arrow.tail).items():
            e[table.index(name)] -= p
        key = tuple(e)
        terms[key] = terms.get(key, 0) + 1
    return LaurentPolynomial(table, terms)


def psi_matrix(n: int, k: int) -> list[list[int]]:
    """Monomial map from tilde to plain coordinates.

    ``ta_i_j -> a_i_j / a`` and ``ta_k_n -> 1/a``, i.e. ``a = 1/ta_k_n`` and
    ``a_i_j = ta_i_j / ta_k_n``; this keeps ``a_k_n = 1`` and sends every
    arrow ratio to the plain-frame ratio.
    """
    src = tilde_frame(n, k).variables
    dst = plain_frame(n, k).variables
    U = [[0] * len(src) for _ in range(len(dst))]
    ia = dst.index("a")
    for col, name in enumerate(src):
        _, i, j = name.split("_")
        if (int(i), int(j)) != (k, n):
            U[dst.index(f"a_{i}_{j}")][col] = 1
        U[ia][col] = -1
    return U


def psi(f: LaurentPolynomial, n: int, k: int) -> LaurentPolynomial:
    return laurent.substitute_monomial(f, psi_matrix(n, k), plain_frame(n, k).variables)


@dataclass(frozen=True)
class BcfksModel:
    decomposition: BlockDecomposition
    constraints: tuple[LaurentPolynomial, ...]
    superpotential_raw: LaurentPolynomial


def bcfks_model(dec: BlockDecomposition) -> BcfksModel:
    frame = tilde_frame(dec.spec.n, dec.spec.k)
    constraints = tuple(arrow_sum(b.arrows, frame) for b in dec.blocks)
    return BcfksModel(dec, constraints, arrow_sum(dec.complement, frame))


def _section_matrix(dec: BlockDecomposition) -> list[list[int]]:
    """Projection plain -> reduced that sets every weight variable to 1."""
    spec = dec.spec
    src = plain_frame(spec.n, spec.k).variables
    dst = reduced_frame(dec).variables
    U = [[0] * len(src) for _ in range(len(dst))]
    for row, name in enumerate(dst):
        U[row][src.index(name)] = 1
    return U


def restrict_to_section(f: LaurentPolynomial, dec: BlockDecomposition) -> LaurentPolynomial:
    return laurent.substitute_monomial(f, _section_matrix(dec), reduced_frame(dec).variables)


def restricted_constraints(dec: BlockDecomposition) -> list[LaurentPolynomial]:
    frame = plain_frame(dec.spec.n, dec.spec.k)
    return [restrict_to_section(arrow_sum(b.arrows, frame), dec) for b in dec.blocks]


def tau_images(dec: BlockDecomposition, table: WeightTable | None = None):
    """Per plain variable: (monomial over reduced variables, exponents of the F-bar factors)."""
    if table is None:
        table = weight_table(dec)
    src = plain_frame(dec.spec.n, dec.spec.k).variables
    dst = reduced_frame(dec).variables
    images = []
    for name in src:
        mono = dst.unit(name) if name in dst.names else dst.zero
        images.append((mono, table.variable_weights(name)))
    return images


def eliminate(dec: BlockDecomposition, workers: int = 1) -> LaurentPolynomial:
    """Pull the superpotential back along the elimination map.

    Each term of the plain-frame superpotential is sent to its restriction to
    the section times ``prod_p Fbar_p**net_p``, where ``net_p`` is the
    ``p``-th weight of the term.
    """
    spec = dec.spec
    frame = plain_frame(spec.n, spec.k)
    raw = arrow_sum(dec.complement, frame)
    factors = restricted_constraints(dec)
    images = tau_images(dec)
    try:
        return laurent.substitute_scaled(raw, images, factors, reduced_frame(dec).variables,
                                         workers=workers)
    except laurent.NegativeFactorExponentError as exc:
        raise AssertionError(f"elimination is inconsistent for {spec}: {exc}") from exc


def superpotential(spec: ModelSpec, workers: int = 1) -> LaurentPolynomial:
    return eliminate(decompose(spec), workers=workers)


@dataclass(frozen=True)
class FactoredSuperpotential:
    """``F_A + abar * prod Fbar_p**d_p`` kept unexpanded, for display."""

    free_part: LaurentPolynomial
    a_bar: LaurentPolynomial
    factors: tuple[LaurentPolynomial, ...]
    degrees: tuple[int, ...]

    def __str__(self):
        pieces = []
        if self.a_bar != 1:
            pieces.append(str(self.a_bar))
        for g, d in zip(self.factors, self.degrees):
            if g == 1:
                continue
            text = str(g)
            if len(g) > 1:
                text = f"({text})"
            pieces.append(text if d == 1 else f"{text}^{d}")
        product = " * ".join(pieces) or "1"
        if self.free_part:
            return f"{self.free_part} + {product}"
        return product


def factored(dec: BlockDecomposition) -> FactoredSuperpotential:
    frame = plain_frame(dec.spec.n, dec.spec.k)
    last = dec.quiver.last_arrow
    free = restrict_to_section(arrow_sum(dec.complement - {last}, frame), dec)
    a_bar = restrict_to_section(LaurentPolynomial.variable(frame.variables, "a"), dec)
    return FactoredSuperpotential(free, a_bar, tuple(restricted_constraints(dec)),
                                  dec.spec.degrees)


# Explicit formula.  Written from index ranges alone so that it checks
# eliminate() instead of repeating it.


class _TermBuilder:
    def __init__(self, n: int, k: int):
        self.n, self.k = n, k

    def cell(self, i: int, j: int) -> dict[str, int]:
        if (i, j) == (self.k, self.n):
            return {}
        if (i, j) == (0, 1):
            return {"a": 1}
        return {f"a_{i}_{j}": 1}

    def ratio(self, head, tail) -> dict[str, int]:
        e = dict(self.cell(*head))
        for name, p in self.cell(*tail).items():
            e[name] = e.get(name, 0) - p
        return e

    def vert(self, lo: int, hi: int) -> list[dict[str, int]]:
        """sum_{i=lo}^{hi} sum_j a_{i,j}/a_{i-1,j}; the row-0 slot exists only at j = 1."""
        out = []
        for i in range(max(lo, 1), hi + 1):
            cols = [1] if i == 1 else range(1, self.n + 1)
            out += [self.ratio((i, j), (i - 1, j)) for j in cols]
        return out

    def horiz(self, lo: int, hi: int) -> list[dict[str, int]]:
        """sum_i sum_{j=lo}^{hi} a_{i,j}/a_{i,j-1}."""
        return [self.ratio((i, j), (i, j - 1))
                for i in range(1, self.k + 1) for j in range(max(lo, 2), min(hi, self.n) + 1)]


def closed_form(spec: ModelSpec, workers: int = 1) -> LaurentPolynomial:
    """The superpotential from explicit summation ranges.

    With ``c_p = d_1 + ... + d_p``: while ``c_p <= k`` the ``p``-th factor sums
    vertical ratios of rows ``c_{p-1}+1..c_p`` and its normalized variable is
    ``a_{c_p - 1, 1}`` (``a`` when ``c_p = 1``).  The factor where the total
    first exceeds ``k`` takes the remaining rows and horizontal ratios of
    columns ``2..u+1``, ``u = c_p - k``; later factors take columns
    ``u_{p-1}+2..u_p+1``.  Those normalize ``a_{k,u_p}``.  The free part is
    every remaining ratio except the one ending at ``(k, n+1)``.
    """
    n, k, degs = spec.n, spec.k, spec.degrees
    tb = _TermBuilder(n, k)
    cum = [0]
    for d in degs:
        cum.append(cum[-1] + d)
    total = cum[-1]

    factors: list[list[dict[str, int]]] = []
    normalized = {"a_{}_{}".format(k, n)}
    if total <= k:
        # only horizontal blocks
        free = tb.vert(total + 1, k) + tb.horiz(2, n)
        for p in range(1, len(degs) + 1):
            factors.append(tb.vert(cum[p - 1] + 1, cum[p]))
            normalized.add(vertex_variable(Vertex(cum[p] - 1, 1)))
    else:
        m = max(p for p in range(len(degs)) if cum[p] <= k)
        u = [c if p <= m else c - k for p, c in enumerate(cum)]
        free = tb.horiz(u[-1] + 2, n)
        for p in range(1, m + 1):
            factors.append(tb.vert(u[p - 1] + 1, u[p]))
            normalized.add(vertex_variable(Vertex(u[p] - 1, 1)))
        # m = 0 lands here too: the crossing factor then starts at row 1 with a_{1,1}/a
        factors.append(tb.vert(cum[m] + 1, k) + tb.horiz(2, u[m + 1] + 1))
        normalized.add(f"a_{k}_{u[m + 1]}")
        for p in range(m + 2, len(degs) + 1):
            factors.append(tb.horiz(u[p - 1] + 2, u[p] + 1))
            normalized.add(f"a_{k}_{u[p]}")

    names = ("a",) + tuple(f"a_{i}_{j}" for i in range(1, k + 1) for j in range(1, n + 1))
    table = VariableTable(tuple(x for x in names if x not in normalized))

    def poly(terms: list[dict[str, int]]) -> LaurentPolynomial:
        out: dict[tuple[int, ...], int] = {}
        for t in terms:
            e = tuple(t.get(x, 0) for x in table.names)
            out[e] = out.get(e, 0) + 1
        return LaurentPolynomial(table, out)

    a_bar = poly([{"a": 1}])
    product = a_bar
    for terms, d in zip(factors, degs):
        product = laurent.mul(product, laurent.power(poly(terms), d, workers=workers),
                              workers=workers)
    return poly(free) + product


@dataclass(frozen=True)
class PullbackReport:
    points: int
    per_block: tuple[bool, ...]
    superpotential_ok: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(self.per_block) and self.superpotential_ok

    def __bool__(self):
        return self.ok


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.randint(1, bound))


def tau_point(dec: BlockDecomposition, y: dict[str, Fraction],
              table: WeightTable | None = None,
              fbar: list[LaurentPolynomial] | None = None) -> dict[str, Fraction] | None:
    """Image of a reduced-frame point under the elimination map (None off its domain)."""
    if table is None:
        table = weight_table(dec)
    if fbar is None:
        fbar = restricted_constraints(dec)
    values = [laurent.evaluate(g, y) for g in fbar]
    if any(v == 0 for v in values):
        return None
    x = {}
    for name in plain_frame(dec.spec.n, dec.spec.k).variables:
        coord = y.get(name, Fraction(1))
        for v, e in zip(values, table.variable_weights(name)):
            if e:
                coord *= v ** e
        x[name] = coord
    return x


def verify_tau_pullback(dec: BlockDecomposition, points: int = 20, seed: int = 0,
                        f: LaurentPolynomial | None = None,
                        check_superpotential: bool = True) -> PullbackReport:
    """Check ``F_{B_p}(tau(y)) = 1`` at random rational points.

    With ``check_superpotential`` it also checks ``F_{B_0}(tau(y)) = f(y)``
    for the eliminated ``f`` (computed if not passed in).
    """
    rng = random.Random(seed)
    spec = dec.spec
    table = weight_table(dec)
    fbar = restricted_constraints(dec)
    frame = plain_frame(spec.n, spec.k)
    constraints = [arrow_sum(b.arrows, frame) for b in dec.blocks]
    raw = arrow_sum(dec.complement, frame)
    if f is None and check_superpotential:
        f = eliminate(dec)
    reduced = reduced_frame(dec).variables
    ok = [True] * len(constraints)
    f_ok = True
    failures = []
    done = 0
    while done < points:
        y = {name: random_rational(rng) for name in reduced}
        x = tau_point(dec, y, table, fbar)
        if x is None:
            continue
        done += 1
        for p, g in enumerate(constraints):
            value = laurent.evaluate(g, x)
            if value != 1:
                ok[p] = False
                failures.append(f"F_B{p + 1}(tau(y)) = {value} at {y}")
        if check_superpotential and laurent.evaluate(raw, x) != laurent.evaluate(f, y):
            f_ok = False
            failures.append(f"F_B0(tau(y)) != f(y) at {y}")
    return PullbackReport(points, tuple(ok), f_ok, tuple(failures))
