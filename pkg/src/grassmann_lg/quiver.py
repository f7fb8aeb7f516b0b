"""Quiver of the Grassmannian G(n, n+k) and its consecutive block decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


class InvalidSpecError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    """A complete intersection of degrees ``d_1..d_l`` in G(n, n+k).

    The degree order is significant and is kept as given.  ``l = 0`` (the
    Grassmannian itself) is accepted.
    """

    n: int
    k: int
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 2 or self.k < 2:
            raise InvalidSpecError(f"need n >= 2 and k >= 2, got n={self.n}, k={self.k}")
        if any(d < 1 for d in self.degrees):
            raise InvalidSpecError(f"degrees must be positive, got {self.degrees}")
        if sum(self.degrees) >= self.n + self.k:
            raise InvalidSpecError(
                f"not Fano: sum of degrees {sum(self.degrees)} >= n + k = {self.n + self.k}")

    @property
    def length(self) -> int:
        return len(self.degrees)

    @property
    def fano_index(self) -> int:
        return self.k + self.n - sum(self.degrees)

    @property
    def dimension(self) -> int:
        """Dimension of the torus the superpotential lives on, ``nk - l``."""
        return self.n * self.k - self.length

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "degrees": list(self.degrees)}

    def __str__(self):
        degs = ",".join(map(str, self.degrees)) or "-"
        return f"G({self.n},{self.n + self.k})[{degs}]"


class Vertex(NamedTuple):
    i: int
    j: int

    def __str__(self):
        return f"({self.i},{self.j})"


class Arrow(NamedTuple):
    kind: str  # "v" or "h"
    tail: Vertex
    head: Vertex

    @property
    def label(self) -> str:
        return f"{self.kind}_{self.tail.i}_{self.tail.j}"

    def __str__(self):
        return self.label


def vertical(i: int, j: int) -> Arrow:
    return Arrow("v", Vertex(i, j), Vertex(i + 1, j))


def horizontal(i: int, j: int) -> Arrow:
    return Arrow("h", Vertex(i, j), Vertex(i, j + 1))


@dataclass(frozen=True)
class Quiver:
    n: int
    k: int
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    @property
    def start(self) -> Vertex:
        return Vertex(0, 1)

    @property
    def end(self) -> Vertex:
        return Vertex(self.k, self.n + 1)

    @property
    def corner(self) -> Vertex:
        return Vertex(self.k, self.n)

    @property
    def last_arrow(self) -> Arrow:
        return horizontal(self.k, self.n)


def _grid_quiver(n: int, k: int) -> Quiver:
    if n < 2 or k < 2:
        raise InvalidSpecError(f"need n >= 2 and k >= 2, got n={n}, k={k}")
    vertices = [Vertex(0, 1)]
    vertices += [Vertex(i, j) for i in range(1, k + 1) for j in range(1, n + 1)]
    vertices.append(Vertex(k, n + 1))
    arrows = [vertical(0, 1)]
    arrows += [vertical(i, j) for i in range(1, k) for j in range(1, n + 1)]
    arrows += [horizontal(i, j) for i in range(1, k + 1) for j in range(1, n)]
    arrows.append(horizontal(k, n))
    return Quiver(n, k, tuple(vertices), tuple(arrows))


def build_quiver(spec: ModelSpec) -> Quiver:
    return _grid_quiver(spec.n, spec.k)


@dataclass(frozen=True)
class Block:
    kind: str  # "HB", "VB" or "MB"
    r: int
    s: int
    n: int
    k: int
    arrows: frozenset = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return block_size(self)

    def __str__(self):
        return f"{self.kind}({self.r},{self.s})"


def _check_range(kind, r, s, n, k):
    if kind == "HB":
        ok = 0 <= r < s <= k
    elif kind == "VB":
        ok = 1 <= r < s <= n + 1
    elif kind == "MB":
        ok = 0 <= r <= k and 1 <= s <= n + 1
    else:
        raise ValueError(f"unknown block kind {kind!r}")
    if not ok:
        raise ValueError(f"{kind}({r},{s}) is out of range for n={n}, k={k}")


def _block_arrows(kind: str, r: int, s: int, n: int, k: int) -> frozenset:
    if kind == "HB":
        out = set()
        for i in range(r, s):
            if i == 0:
                out.add(vertical(0, 1))
            else:
                out.update(vertical(i, j) for j in range(1, n + 1))
        return frozenset(out)
    if kind == "VB":
        out = set()
        for j in range(r, s):
            if j == n:
                out.add(horizontal(k, n))
            else:
                out.update(horizontal(i, j) for i in range(1, k + 1))
        return frozenset(out)
    hb = _block_arrows("HB", r, k, n, k) if r < k else frozenset()
    vb = _block_arrows("VB", 1, s, n, k) if s > 1 else frozenset()
    return hb | vb


def make_block(spec: ModelSpec | Quiver, kind: str, r: int, s: int) -> Block:
    n, k = spec.n, spec.k
    _check_range(kind, r, s, n, k)
    return Block(kind, r, s, n, k, _block_arrows(kind, r, s, n, k))


def block_size(b: Block) -> int:
    if b.kind == "MB":
        # (k - r) + (s - 1): the printed ``s + k - r`` is one too large for MB(2,2) in G(3,6)
        return (b.k - b.r) + (b.s - 1)
    return b.s - b.r


def identify_block(n: int, k: int, arrows) -> Block | None:
    """Return a block whose arrow set is exactly ``arrows``, if any."""
    arrows = frozenset(arrows)
    candidates = [("HB", r, s) for r in range(0, k + 1) for s in range(r + 1, k + 1)]
    candidates += [("VB", r, s) for r in range(1, n + 2) for s in range(r + 1, n + 2)]
    candidates += [("MB", r, s) for r in range(0, k + 1) for s in range(1, n + 2)]
    for kind, r, s in candidates:
        if _block_arrows(kind, r, s, n, k) == arrows:
            return Block(kind, r, s, n, k, arrows)
    return None


@dataclass(frozen=True)
class BlockDecomposition:
    spec: ModelSpec
    quiver: Quiver
    blocks: tuple[Block, ...]
    complement: frozenset

    def to_dict(self) -> dict:
        return {
            "blocks": [
                {"kind": b.kind, "r": b.r, "s": b.s, "size": block_size(b),
                 "weight_vertex": list(weight_vertex(b)),
                 "weight_variable": weight_variable(b)}
                for b in self.blocks
            ],
            "complement": sorted(a.label for a in self.complement),
        }


def decompose(spec: ModelSpec) -> BlockDecomposition:
    """Split a prefix of the quiver into consecutive blocks of sizes ``d_1..d_l``.

    Horizontal blocks are used while the running degree total stays within
    ``k``, a mixed block for the degree that crosses ``k``, vertical blocks
    afterwards.
    """
    quiver = build_quiver(spec)
    n, k = spec.n, spec.k
    blocks = []
    prev = 0
    for d in spec.degrees:
        cur = prev + d
        if cur <= k:
            blocks.append(make_block(spec, "HB", prev, cur))
        elif prev < k:
            blocks.append(make_block(spec, "MB", prev, cur - k + 1))
        else:
            blocks.append(make_block(spec, "VB", prev - k + 1, cur - k + 1))
        prev = cur
    used = frozenset().union(*(b.arrows for b in blocks)) if blocks else frozenset()
    complement = frozenset(quiver.arrows) - used
    return BlockDecomposition(spec, quiver, tuple(blocks), complement)


def weight_vertex(b: Block) -> Vertex:
    if b.kind == "HB":
        return Vertex(b.s - 1, 1)
    return Vertex(b.k, b.s - 1)


def vertex_variable(v: Vertex) -> str:
    if v == (0, 1):
        return "a"
    return f"a_{v.i}_{v.j}"


def weight_variable(b: Block) -> str:
    return vertex_variable(weight_vertex(b))
