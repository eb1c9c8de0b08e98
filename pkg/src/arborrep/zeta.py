"""Truncated representation zeta functions as finite Dirichlet polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Real
from typing import Iterable, Sequence

from .chartab import DecompositionRecord


class ZetaError(ValueError):
    pass


@dataclass(frozen=True)
class DirichletPolynomial:
    """``sum(count * dim**-s)`` over aggregated terms, known only to ``depth``."""
    terms: tuple[tuple[int, int], ...]
    depth: int

    def __post_init__(self):
        dims = [d for d, _ in self.terms]
        if any(d <= 0 for d in dims) or any(c <= 0 for _, c in self.terms):
            raise ZetaError("dimensions and counts must be positive")
        if dims != sorted(set(dims)):
            raise ZetaError("dimensions must be strictly increasing")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], depth: int) -> "DirichletPolynomial":
        agg: dict[int, int] = {}
        for d, c in terms:
            if c:
                agg[int(d)] = agg.get(int(d), 0) + int(c)
        return cls(tuple(sorted(agg.items())), depth)

    @property
    def total_dimension(self) -> int:
        return sum(d * c for d, c in self.terms)

    def as_lists(self) -> list[list[int]]:
        return [[d, c] for d, c in self.terms]


def boundary_zeta(records: Sequence[DecompositionRecord | Sequence[tuple[int, int]]],
                  level_sizes: Sequence[int], depth: int | None = None) -> DirichletPolynomial:
    """The trivial term plus ``(|L_j| * d, m)`` for every local constituent at level ``j``.

    ``records[j]`` is the nontrivial part of the action of the spine vertex
    stabiliser at level ``j`` on its children; ``level_sizes[j]`` is ``|L_j|``.
    """
    depth = len(records) if depth is None else depth
    if len(records) < depth or len(level_sizes) < depth:
        raise ZetaError(f"need {depth} records and level sizes")
    terms = [(1, 1)]
    for j in range(depth):
        rec = records[j]
        pairs = rec.pairs if isinstance(rec, DecompositionRecord) else rec
        terms += [(level_sizes[j] * d, m) for d, m in pairs]
    return DirichletPolynomial.from_terms(terms, depth)


def gl_closed_form(q: int, N: int, depth: int) -> DirichletPolynomial:
    """Expansion of ``q^N (1 - q^-(s+1)N) / (1 - q^-sN)`` cut at ``depth``."""
    if q < 2 or N < 1 or depth < 0:
        raise ZetaError("need q >= 2, N >= 1, depth >= 0")
    if depth == 0:
        return DirichletPolynomial(((1, 1),), 0)
    qN = q ** N
    terms = [(1, qN)] + [(q ** (n * N), qN - 1) for n in range(1, depth)]
    return DirichletPolynomial.from_terms(terms, depth)


def gl_closed_form_value(q: int, N: int, s: int) -> Fraction:
    """The untruncated series at integer ``s > 0``, in closed form."""
    qN = Fraction(q ** N)
    return qN * (1 - qN ** -(s + 1)) / (1 - qN ** -s)


def evaluate(poly: DirichletPolynomial, s) -> Fraction | float:
    """Exact for integer ``s``; a float (approximate) otherwise. ``s = inf`` keeps dimension 1."""
    if isinstance(s, Real) and math.isinf(s) and s > 0:
        return Fraction(sum(c for d, c in poly.terms if d == 1))
    if isinstance(s, Integral) or isinstance(s, Fraction) and s.denominator == 1:
        s = int(s)
        return sum((Fraction(c, d ** s) if s >= 0 else Fraction(c * d ** -s)
                    for d, c in poly.terms), Fraction(0))
    return math.fsum(c * float(d) ** -float(s) for d, c in poly.terms)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    dimension: int | None = None
    left: int = 0
    right: int = 0

    def __bool__(self) -> bool:
        return self.equal


def compare(a: DirichletPolynomial, b: DirichletPolynomial) -> Comparison:
    """Termwise equality, or the smallest dimension where the counts differ."""
    if a.depth != b.depth:
        raise ZetaError(f"depth mismatch: {a.depth} vs {b.depth}")
    da, db = dict(a.terms), dict(b.terms)
    for d in sorted(set(da) | set(db)):
        if da.get(d, 0) != db.get(d, 0):
            return Comparison(False, d, da.get(d, 0), db.get(d, 0))
    return Comparison(True)
