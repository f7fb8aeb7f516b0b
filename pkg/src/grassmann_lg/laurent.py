"""Sparse multivariate Laurent polynomials with exact integer coefficients.

A polynomial is a map from integer exponent vectors (tuples, one slot per
variable of its :class:`VariableTable`) to nonzero Python ints.  Values are
immutable once built.

Multiplication has two kernels.  When the coefficient bound
``|f|_1 * |g|_1`` and the exponent box of the product both fit in int64, the
product is formed with numpy on mixed-radix keys.  Otherwise every exponent
vector is packed into one Python int (balanced base ``2**w`` digits) and
products accumulate in a dict of big integers; large products of this kind
can be sharded over a process pool.  Partial maps are merged in a fixed order
and integer addition is exact, so results never depend on the worker count.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]

# products with fewer term pairs than this stay in-process
PARALLEL_THRESHOLD = 200_000
# pairs materialized at once by the int64 kernel
CHUNK_PAIRS = 1 << 22
_INT64_LIMIT = 1 << 62


class VariableMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class VariableTable:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def unit(self, name: str, power: int = 1) -> Exponent:
        e = [0] * len(self.names)
        e[self.index(name)] = power
        return tuple(e)

    @property
    def zero(self) -> Exponent:
        return (0,) * len(self.names)


def _as_table(variables) -> VariableTable:
    if isinstance(variables, VariableTable):
        return variables
    return VariableTable(tuple(variables))


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial over the integers."""

    __slots__ = ("variables", "_terms", "_arrays")

    def __init__(self, variables, terms: Mapping[Exponent, int] | Iterable = ()):
        table = _as_table(variables)
        nv = len(table)
        clean: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match {nv} variables")
            c = int(c)
            if c:
                c += clean.get(e, 0)
                if c:
                    clean[e] = c
                else:
                    del clean[e]
        object.__setattr__(self, "variables", table)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_arrays", None)

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict) -> "LaurentPolynomial":
        # caller guarantees tuple keys of the right length and no zero values
        obj = cls.__new__(cls)
        object.__setattr__(obj, "variables", table)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_arrays", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # constructors

    @classmethod
    def zero(cls, variables) -> "LaurentPolynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables, c: int = 1) -> "LaurentPolynomial":
        table = _as_table(variables)
        return cls(table, {table.zero: c})

    @classmethod
    def monomial(cls, variables, exponent: Mapping[str, int] | Sequence[int],
                 c: int = 1) -> "LaurentPolynomial":
        table = _as_table(variables)
        if isinstance(exponent, Mapping):
            e = [0] * len(table)
            for name, power in exponent.items():
                e[table.index(name)] += power
            exponent = e
        return cls(table, {tuple(exponent): c})

    @classmethod
    def variable(cls, variables, name: str) -> "LaurentPolynomial":
        table = _as_table(variables)
        return cls(table, {table.unit(name): 1})

    # inspection

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPolynomial.constant(self.variables, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def _check(self, other: "LaurentPolynomial"):
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"variable tables differ: {self.variables.names} vs {other.variables.names}")

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.variables, other)
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            c += out.get(e, 0)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPolynomial.zero(self.variables)
            return LaurentPolynomial._raw(
                self.variables, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return power(self, e)

    # conversions

    def constant_term(self) -> int:
        return self._terms.get(self.variables.zero, 0)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables.names),
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "LaurentPolynomial":
        return cls(tuple(data["variables"]),
                   [(tuple(t["e"]), int(t["c"])) for t in data["terms"]])

    @classmethod
    def from_json(cls, text: str) -> "LaurentPolynomial":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"LaurentPolynomial({self.variables.names!r}, {len(self)} terms)"

    def __str__(self):
        return format_polynomial(self)


def format_monomial(names: Sequence[str], e: Exponent) -> tuple[str, str]:
    num, den = [], []
    for name, p in zip(names, e):
        if p > 0:
            num.append(name if p == 1 else f"{name}^{p}")
        elif p < 0:
            den.append(name if p == -1 else f"{name}^{-p}")
    return "*".join(num), "*".join(den)


def format_polynomial(f: LaurentPolynomial) -> str:
    if not f:
        return "0"
    names = f.variables.names
    pieces = []
    # descending so that constants tend to land last, like hand-written sums
    for e, c in sorted(f.items(), reverse=True):
        num, den = format_monomial(names, e)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not num:
            num = str(c)
        elif c != 1:
            num = f"{c}*{num}"
        if den:
            den = den if "*" not in den else f"({den})"
            body = f"{num}/{den}"
        else:
            body = num
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# packed-exponent kernel


def _width_for(bound: int) -> int:
    w = 2
    while (1 << (w - 1)) <= bound:
        w += 1
    return w


def _pack(e: Exponent, w: int) -> int:
    key = 0
    for x in reversed(e):
        key = (key << w) + x
    return key


def _unpack(key: int, nv: int, w: int) -> Exponent:
    mask = (1 << w) - 1
    half = 1 << (w - 1)
    full = 1 << w
    out = []
    for _ in range(nv):
        digit = key & mask
        if digit >= half:
            digit -= full
        out.append(digit)
        key = (key - digit) >> w
    return tuple(out)


def _ranges(f: LaurentPolynomial):
    nv = len(f.variables)
    lo = [0] * nv
    hi = [0] * nv
    for e in f._terms:
        for i, x in enumerate(e):
            if x < lo[i]:
                lo[i] = x
            elif x > hi[i]:
                hi[i] = x
    return lo, hi


def _product_width(f: LaurentPolynomial, g: LaurentPolynomial) -> int:
    flo, fhi = _ranges(f)
    glo, ghi = _ranges(g)
    bound = 0
    for a, b, c, d in zip(flo, fhi, glo, ghi):
        bound = max(bound, -(a + c), b + d)
    return _width_for(bound)


def _mul_packed(a_items: Sequence[tuple[int, int]], b_items: Sequence[tuple[int, int]]) -> dict:
    out: dict[int, int] = {}
    get = out.get
    for ka, ca in a_items:
        for kb, cb in b_items:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return out


def _shards(items: list, workers: int) -> list[list]:
    return [items[i::workers] for i in range(workers)]


def _l1(f: LaurentPolynomial) -> int:
    return sum(abs(c) for c in f._terms.values())


def _reduce_sorted(keys: np.ndarray, coefs: np.ndarray):
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coefs = coefs[order]
    if keys.size == 0:
        return keys, coefs
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    return keys[starts], np.add.reduceat(coefs, starts)


def _as_arrays(p: LaurentPolynomial):
    """(exponents, coefficients) as arrays; coefficients are Python ints in an object array."""
    if p._arrays is None:
        nv = len(p.variables)
        exps = np.array(list(p._terms.keys()), dtype=np.int64).reshape(len(p), nv)
        coefs = np.array(list(p._terms.values()), dtype=object)
        object.__setattr__(p, "_arrays", (exps, coefs))
    return p._arrays


def _mul_int64(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    """Vectorized product, or None when int64 could overflow.

    Exponent vectors become mixed-radix keys over the exact exponent ranges of
    the product, so keys add like exponent vectors.  Every coefficient and
    partial sum is bounded by ``|f|_1 * |g|_1``; both bounds are checked first.
    """
    if _l1(f) * _l1(g) >= _INT64_LIMIT:
        return None
    fe, fc = _as_arrays(f)
    ge, gc = _as_arrays(g)
    flo, glo = fe.min(axis=0), ge.min(axis=0)
    lo = flo + glo
    radix = (fe.max(axis=0) + ge.max(axis=0) - lo + 1).tolist()
    total = 1
    strides = []
    for r in radix:
        strides.append(total)
        total *= r
    if total >= _INT64_LIMIT:
        return None
    stride_arr = np.array(strides, dtype=np.int64)
    a_keys = (fe - flo) @ stride_arr
    b_keys = (ge - glo) @ stride_arr
    a_coefs = fc.astype(np.int64)
    b_coefs = gc.astype(np.int64)
    step = max(1, CHUNK_PAIRS // len(a_keys))
    parts_k, parts_c = [], []
    for start in range(0, len(b_keys), step):
        bk = b_keys[start:start + step, None]
        bc = b_coefs[start:start + step, None]
        k, c = _reduce_sorted((a_keys[None, :] + bk).ravel(), (a_coefs[None, :] * bc).ravel())
        parts_k.append(k)
        parts_c.append(c)
    if len(parts_k) == 1:
        keys, coefs = parts_k[0], parts_c[0]
    else:
        keys, coefs = _reduce_sorted(np.concatenate(parts_k), np.concatenate(parts_c))
    nz = coefs != 0
    keys, coefs = keys[nz], coefs[nz]
    digits = np.empty((len(keys), len(radix)), dtype=np.int64)
    rest = keys
    for i, r in enumerate(radix):
        rest, digits[:, i] = np.divmod(rest, r)
    digits += lo
    coef_list = coefs.tolist()
    out = LaurentPolynomial._raw(f.variables, dict(zip(map(tuple, digits.tolist()), coef_list)))
    object.__setattr__(out, "_arrays", (digits, np.array(coef_list, dtype=object)))
    return out


def mul(f: LaurentPolynomial, g: LaurentPolynomial, workers: int = 1,
        kernel: str = "auto") -> LaurentPolynomial:
    """Exact product.

    ``kernel="auto"`` uses int64 whenever it provably cannot overflow and big
    integers otherwise; ``"bigint"`` forces the latter, where ``workers > 1``
    shards ``f`` over a process pool.
    """
    if kernel not in ("auto", "bigint"):
        raise ValueError(f"unknown kernel {kernel!r}")
    f._check(g)
    table = f.variables
    if not f or not g:
        return LaurentPolynomial.zero(table)
    if len(f) < len(g):
        f, g = g, f
    if kernel == "auto" and len(table) and len(f) * len(g) >= 64:
        out = _mul_int64(f, g)
        if out is not None:
            return out
    return _mul_bigint(f, g, workers)


def _mul_bigint(f: LaurentPolynomial, g: LaurentPolynomial, workers: int = 1) -> LaurentPolynomial:
    table = f.variables
    nv = len(table)
    w = _product_width(f, g)
    a_items = sorted((_pack(e, w), c) for e, c in f._terms.items())
    b_items = [(_pack(e, w), c) for e, c in g._terms.items()]

    if workers > 1 and len(a_items) * len(b_items) >= PARALLEL_THRESHOLD:
        shards = _shards(a_items, min(workers, len(a_items)))
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            partials = list(pool.map(_mul_packed, shards, [b_items] * len(shards)))
        packed = partials[0]
        for part in partials[1:]:
            get = packed.get
            for k, c in part.items():
                packed[k] = get(k, 0) + c
    else:
        packed = _mul_packed(a_items, b_items)

    out = {_unpack(k, nv, w): c for k, c in packed.items() if c}
    return LaurentPolynomial._raw(table, out)


def add(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    f._check(g)
    return f + g


def power(f: LaurentPolynomial, e: int, workers: int = 1) -> LaurentPolynomial:
    """``f**e`` by iterated multiplication by ``f``."""
    if e < 0:
        raise ValueError("negative powers of a polynomial are not Laurent polynomials")
    result = LaurentPolynomial.constant(f.variables, 1)
    for _ in range(e):
        result = mul(result, f, workers=workers)
    return result


def binary_power(f: LaurentPolynomial, e: int, workers: int = 1) -> LaurentPolynomial:
    if e < 0:
        raise ValueError("negative powers of a polynomial are not Laurent polynomials")
    result = LaurentPolynomial.constant(f.variables, 1)
    base = f
    while e:
        if e & 1:
            result = mul(result, base, workers=workers)
        e >>= 1
        if e:
            base = mul(base, base, workers=workers)
    return result


def powers(f: LaurentPolynomial, n: int, workers: int = 1) -> list[LaurentPolynomial]:
    """``[f**0, f**1, ..., f**n]``, each obtained from the previous one."""
    out = [LaurentPolynomial.constant(f.variables, 1)]
    for _ in range(n):
        out.append(mul(out[-1], f, workers=workers))
    return out


def constant_term(f: LaurentPolynomial) -> int:
    return f.constant_term()


def constant_term_of_product(f: LaurentPolynomial, g: LaurentPolynomial) -> int:
    """``[f*g]`` without forming the product."""
    f._check(g)
    if len(f) > len(g):
        f, g = g, f
    gt = g._terms
    total = 0
    for e, c in f._terms.items():
        d = gt.get(tuple(-x for x in e))
        if d:
            total += c * d
    return total


def support(f: LaurentPolynomial) -> set[Exponent]:
    return set(f._terms)


def term_count(f: LaurentPolynomial) -> int:
    return len(f._terms)


def substitute_monomial(f: LaurentPolynomial, matrix: Sequence[Sequence[int]], target,
                        scale: Sequence[int] | None = None) -> LaurentPolynomial:
    """Monomial change of variables.

    ``matrix`` has one row per target variable and one column per source
    variable; column ``j`` is the exponent vector of the image of source
    variable ``j``.  ``scale``, if given, is a target exponent vector the
    whole result is multiplied by.
    """
    target = _as_table(target)
    nt, ns = len(target), len(f.variables)
    if len(matrix) != nt or any(len(row) != ns for row in matrix):
        raise ValueError(f"substitution matrix must be {nt}x{ns}")
    if scale is not None and len(scale) != nt:
        raise ValueError("scale exponent has the wrong length")
    shift = tuple(scale) if scale is not None else (0,) * nt
    out: dict[Exponent, int] = {}
    for e, c in f._terms.items():
        img = tuple(s + sum(row[j] * e[j] for j in range(ns) if e[j])
                    for row, s in zip(matrix, shift))
        c += out.get(img, 0)
        if c:
            out[img] = c
        else:
            out.pop(img, None)
    return LaurentPolynomial._raw(target, out)


class NegativeFactorExponentError(ValueError):
    pass


def substitute_scaled(f: LaurentPolynomial, images: Sequence[tuple[Sequence[int], Sequence[int]]],
                      factors: Sequence[LaurentPolynomial], target=None,
                      workers: int = 1) -> LaurentPolynomial:
    """Substitute ``x_v -> monomial_v * prod_p factors[p]**k_vp``.

    ``images[v] = (monomial exponent over target, (k_v1, ..., k_vl))``.
    Every term of ``f`` must end up with a nonnegative net exponent on every
    factor; a negative one would need the inverse of a polynomial.
    """
    if target is None:
        if not factors:
            raise ValueError("target variables needed when there are no factors")
        target = factors[0].variables
    target = _as_table(target)
    for g in factors:
        if g.variables != target:
            raise VariableMismatchError("factor polynomials must live in the target variables")
    if len(images) != len(f.variables):
        raise ValueError("one image per source variable is required")
    nt, nf = len(target), len(factors)
    for mono, fexp in images:
        if len(mono) != nt or len(fexp) != nf:
            raise ValueError("image has the wrong shape")

    groups: dict[tuple[int, ...], dict[Exponent, int]] = {}
    for e, c in f._terms.items():
        mono = [0] * nt
        net = [0] * nf
        for x, (m, k) in zip(e, images):
            if x:
                for i in range(nt):
                    mono[i] += x * m[i]
                for p in range(nf):
                    net[p] += x * k[p]
        if any(v < 0 for v in net):
            raise NegativeFactorExponentError(
                f"term {e} needs factor exponents {tuple(net)}")
        bucket = groups.setdefault(tuple(net), {})
        mono = tuple(mono)
        c += bucket.get(mono, 0)
        if c:
            bucket[mono] = c
        else:
            del bucket[mono]

    cache: dict[tuple[int, int], LaurentPolynomial] = {}

    def factor_power(p: int, k: int) -> LaurentPolynomial:
        if (p, k) not in cache:
            cache[(p, k)] = power(factors[p], k, workers=workers)
        return cache[(p, k)]

    result = LaurentPolynomial.zero(target)
    for net in sorted(groups):
        part = LaurentPolynomial._raw(target, groups[net])
        if not part:
            continue
        for p, k in enumerate(net):
            if k:
                part = mul(part, factor_power(p, k), workers=workers)
        result = result + part
    return result


def evaluate(f: LaurentPolynomial, point: Mapping[str, Fraction | int] | Sequence) -> Fraction:
    """Exact value at a point with nonzero rational coordinates.

    Works over the common denominator ``prod q_i**span_i`` so the term loop
    only multiplies integers.
    """
    names = f.variables.names
    if isinstance(point, Mapping):
        values = [Fraction(point[name]) for name in names]
    else:
        values = [Fraction(v) for v in point]
        if len(values) != len(names):
            raise ValueError("point has the wrong number of coordinates")
    for name, v in zip(names, values):
        if v == 0:
            raise ZeroDivisionError(f"coordinate {name} is zero")
    if not f:
        return Fraction(0)
    lo, hi = _ranges(f)
    # (p/q)**e = (p/q)**lo * p**a * q**(span - a) / q**span with a = e - lo
    tables = []
    scale = Fraction(1)
    for v, l, h in zip(values, lo, hi):
        p, q = v.numerator, v.denominator
        span = h - l
        tables.append([p ** a * q ** (span - a) for a in range(span + 1)])
        scale *= v ** l / Fraction(q) ** span
    total = 0
    for e, c in f._terms.items():
        term = c
        for t, x, l in zip(tables, e, lo):
            term *= t[x - l]
        total += term
    return total * scale
