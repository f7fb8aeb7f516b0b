"""Period sequences of Laurent polynomials and the period condition."""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import laurent
from .iseries import SeriesPrefix, iseries
from .laurent import LaurentPolynomial
from .quiver import ModelSpec, decompose
from .superpotential import eliminate


def constant_terms_of_powers(f: LaurentPolynomial, order: int, workers: int = 1,
                             method: str = "split") -> SeriesPrefix:
    """``([f**0], [f**1], ..., [f**order])``.

    ``method="split"`` builds ``f**1..f**ceil(order/2)`` by repeated
    multiplication with ``f`` and reads ``[f**i]`` off as the constant term of
    ``f**ceil(i/2) * f**floor(i/2)`` without expanding that product.
    ``method="full"`` expands every power up to ``order``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if method == "full":
        pw = laurent.powers(f, order, workers=workers)
        return SeriesPrefix(tuple(p.constant_term() for p in pw))
    if method != "split":
        raise ValueError(f"unknown method {method!r}")
    pw = laurent.powers(f, (order + 1) // 2, workers=workers)
    coeffs = []
    for i in range(order + 1):
        hi, lo = (i + 1) // 2, i // 2
        if lo == 0:
            coeffs.append(pw[hi].constant_term())
        else:
            coeffs.append(laurent.constant_term_of_product(pw[hi], pw[lo]))
    return SeriesPrefix(tuple(coeffs))


@dataclass(frozen=True)
class PeriodReport:
    spec: ModelSpec
    order: int
    lhs: SeriesPrefix
    rhs: SeriesPrefix

    @property
    def mismatch(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.lhs.coefficients, self.rhs.coefficients)):
            if a != b:
                return i
        return None

    @property
    def match(self) -> bool:
        return self.mismatch is None

    def __bool__(self):
        return self.match

    @property
    def verdict(self) -> str:
        return "match" if self.match else "mismatch"

    def to_dict(self) -> dict:
        out = {
            "spec": self.spec.to_dict(),
            "order": self.order,
            "lhs": [str(c) for c in self.lhs.coefficients],
            "rhs": [str(c) for c in self.rhs.coefficients],
            "verdict": self.verdict,
        }
        if not self.match:
            i = self.mismatch
            out["first_mismatch"] = {"index": i, "lhs": str(self.lhs[i]), "rhs": str(self.rhs[i])}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def check_period(spec: ModelSpec, order: int, workers: int = 1,
                 f: LaurentPolynomial | None = None) -> PeriodReport:
    if f is None:
        f = eliminate(decompose(spec), workers=workers)
    lhs = constant_terms_of_powers(f, order, workers=workers)
    rhs = iseries(spec, order)
    return PeriodReport(spec, order, SeriesPrefix(lhs.coefficients, spec), rhs)
