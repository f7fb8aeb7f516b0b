"""Vertex weights of the blocks and the torus action they define."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .quiver import Arrow, Block, BlockDecomposition, Vertex, vertex_variable, weight_vertex


def _block_weights(b: Block, vertices) -> dict[Vertex, int]:
    n, k, r, s = b.n, b.k, b.r, b.s
    wt: dict[Vertex, int] = {}
    for v in vertices:
        i, j = v
        if v == (k, n + 1):
            continue
        if b.kind == "HB":
            if r <= i <= s:
                w = s - i
            elif i > s:
                w = 0
            else:
                w = s - r
        elif b.kind == "MB":
            if i >= r:
                w = (k - i) + (s - j) if j <= s else k - i
            else:
                w = (k - r) + (s - j) if j <= s else k - r
        else:
            if i == 0:
                w = s - r
            elif r <= j <= s:
                w = s - j
            elif j < r:
                w = s - r
            else:
                w = 0
        wt[Vertex(i, j)] = w
    wt[Vertex(k, n + 1)] = wt[Vertex(0, 1)]
    return wt


@dataclass(frozen=True)
class WeightReport:
    ok: bool
    block: int | None = None  # 1-based
    arrow: Arrow | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        where = f" at {self.arrow.label}" if self.arrow is not None else ""
        return f"fail: block {self.block}{where}: {self.reason}"


@dataclass(frozen=True)
class WeightTable:
    decomposition: BlockDecomposition
    wt: tuple[Mapping[Vertex, int], ...]

    def __getitem__(self, p: int) -> Mapping[Vertex, int]:
        """Weights of block ``p`` (1-based, as in ``B_1..B_l``)."""
        return self.wt[p - 1]

    def __len__(self):
        return len(self.wt)

    def weight(self, p: int, v) -> int:
        return self.wt[p - 1][Vertex(*v)]

    def variable_weights(self, name: str) -> tuple[int, ...]:
        """Exponents of ``w_1..w_l`` picked up by a plain-frame variable."""
        v = vertex_of_variable(name)
        return tuple(w[v] for w in self.wt)

    def to_dict(self) -> dict:
        verts = sorted(self.wt[0]) if self.wt else []
        return {
            "vertices": [list(v) for v in verts],
            "weights": [[w[v] for v in verts] for w in self.wt],
        }


def vertex_of_variable(name: str) -> Vertex:
    if name == "a":
        return Vertex(0, 1)
    _, i, j = name.split("_")
    return Vertex(int(i), int(j))


def weight_table(dec: BlockDecomposition) -> WeightTable:
    verts = dec.quiver.vertices
    table = WeightTable(dec, tuple(_block_weights(b, verts) for b in dec.blocks))
    report = validate_weights(table)
    if not report:
        raise AssertionError(f"inconsistent weights for {dec.spec}: {report}")
    return table


def validate_weights(table: WeightTable) -> WeightReport:
    dec = table.decomposition
    q = dec.quiver
    last = q.last_arrow
    for p, (block, wt) in enumerate(zip(dec.blocks, table.wt), start=1):
        for v in q.vertices:
            if wt.get(v, -1) < 0:
                return WeightReport(False, p, None, f"weight of {v} is negative or missing")
        if wt[q.corner] != 0:
            return WeightReport(False, p, None, f"weight of corner {q.corner} is {wt[q.corner]}")
        if wt[q.start] != wt[q.end]:
            return WeightReport(False, p, None, "weights of (0,1) and (k,n+1) differ")
        if wt[q.start] != dec.spec.degrees[p - 1]:
            return WeightReport(False, p, None,
                                f"weight of (0,1) is {wt[q.start]}, degree is {dec.spec.degrees[p - 1]}")
        for arrow in q.arrows:
            if arrow == last:
                continue
            delta = wt[arrow.head] - wt[arrow.tail]
            expected = -1 if arrow in block.arrows else 0
            if delta != expected:
                return WeightReport(False, p, arrow, f"weight jump {delta}, expected {expected}")
    return WeightReport(True)


@dataclass(frozen=True)
class ActionMatrix:
    M: tuple[tuple[int, ...], ...]
    Minv: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"M": [list(r) for r in self.M], "Minv": [list(r) for r in self.Minv]}


def _unitriangular_inverse(M: Sequence[Sequence[int]]) -> list[list[int]]:
    size = len(M)
    inv = [[0] * size for _ in range(size)]
    for col in range(size):
        inv[col][col] = 1
        for row in range(col - 1, -1, -1):
            inv[row][col] = -sum(M[row][t] * inv[t][col] for t in range(row + 1, col + 1))
    return inv


def action_matrix(table: WeightTable) -> ActionMatrix:
    blocks = table.decomposition.blocks
    M = [[table.wt[j][weight_vertex(bi)] for j in range(len(blocks))] for bi in blocks]
    size = len(M)
    for i in range(size):
        for j in range(size):
            expected = 1 if i == j else (0 if j < i else M[i][j])
            if M[i][j] != expected:
                raise AssertionError(f"action matrix is not unitriangular: {M}")
    Minv = _unitriangular_inverse(M)
    return ActionMatrix(tuple(map(tuple, M)), tuple(map(tuple, Minv)))


def act(table: WeightTable, w: Sequence, point: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Apply the torus element ``(w_1..w_l)`` to a point in plain coordinates."""
    out = {}
    for name, x in point.items():
        factor = Fraction(1)
        for wp, e in zip(w, table.variable_weights(name)):
            if e:
                factor *= Fraction(wp) ** e
        out[name] = Fraction(x) * factor
    return out


def character(table: WeightTable, w: Sequence) -> Fraction:
    """``mu(w) = prod w_p**d_p``."""
    out = Fraction(1)
    for wp, d in zip(w, table.decomposition.spec.degrees):
        out *= Fraction(wp) ** d
    return out


def weight_variables(dec: BlockDecomposition) -> list[str]:
    return [vertex_variable(weight_vertex(b)) for b in dec.blocks]
