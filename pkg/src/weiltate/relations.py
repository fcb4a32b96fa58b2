"""Multiplicative relations prod gamma^e = q^j among Weil classes, at divisor level.

A relation is an integer exponent vector over the generator slots (each class
and its conjugate) together with the power ``j`` of q.  Relations of degree 2
(pairs multiplying to q) correspond to divisor classes; a relation outside
the integer span of the degree-2 ones cannot come from products of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .groupring import translate
from .lattice import HermiteForm, Membership, combine, hermite_form, membership
from .weilmodel import FieldContext, WeilClass

#: find_exotic refuses degrees above this.
MAX_EXOTIC_DEGREE = 12
DEFAULT_EXOTIC_DEGREE = 8


@dataclass(frozen=True)
class GeneratorSet:
    """Slots ``alpha, alpha^c`` for each class, with doubled-unit divisors."""

    ctx: FieldContext
    classes: tuple[WeilClass, ...]

    def __post_init__(self):
        labels = [c.label for c in self.classes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate class labels: {labels}")
        for cls in self.classes:
            cls.check_context(self.ctx)
        object.__setattr__(self, "classes", tuple(self.classes))

    @cached_property
    def slots(self) -> tuple[str, ...]:
        return tuple(name for c in self.classes for name in (c.label, c.label + "^c"))

    @cached_property
    def divisors(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for c in self.classes:
            out.append(c.divisor.coeffs)
            out.append(translate(self.ctx.c, c.divisor).coeffs)
        return tuple(out)

    def __len__(self) -> int:
        return len(self.slots)

    def index(self, slot: str) -> int:
        return self.slots.index(slot)

    def vector(self, **exps: int) -> tuple[int, ...]:
        """Exponent vector from keywords; ``alpha4_c=1`` means alpha4^c."""
        e = [0] * len(self)
        for key, val in exps.items():
            name = key[:-2] + "^c" if key.endswith("_c") else key
            e[self.index(name)] += val
        return tuple(e)

    def conjugate_vector(self, e: Sequence[int]) -> tuple[int, ...]:
        out = list(e)
        out[0::2], out[1::2] = e[1::2], e[0::2]
        return tuple(out)


@dataclass(frozen=True)
class Relation:
    exponents: tuple[int, ...]
    q_power: int

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def extended(self) -> tuple[int, ...]:
        return self.exponents + (self.q_power,)

    def name(self, gens: GeneratorSet) -> str:
        parts = []
        for slot, e in zip(gens.slots, self.exponents):
            if e == 1:
                parts.append(slot)
            elif e:
                parts.append(f"({slot})^{e}")
        lhs = "*".join(parts) if parts else "1"
        return f"{lhs} = q^{self.q_power}"

    def conjugate(self, gens: GeneratorSet) -> Relation:
        return Relation(gens.conjugate_vector(self.exponents), self.q_power)

    def to_json(self, gens: GeneratorSet) -> dict:
        return {
            "exponents": {s: e for s, e in zip(gens.slots, self.exponents) if e},
            "q_power": self.q_power,
        }


def _check_dim(gens: GeneratorSet, e: Sequence[int]) -> None:
    if len(e) != len(gens):
        raise ValueError(f"exponent vector has length {len(e)}, generator set has {len(gens)} slots")


def divisor_sum(gens: GeneratorSet, e: Sequence[int]) -> list[int]:
    _check_dim(gens, e)
    return combine(e, gens.divisors, gens.ctx.order)


def is_relation(gens: GeneratorSet, e: Sequence[int], j: int) -> bool:
    return divisor_sum(gens, e) == [2 * j] * gens.ctx.order


def q_power(gens: GeneratorSet, e: Sequence[int]) -> int | None:
    """The ``j`` making ``e`` a relation, or None if its divisor is not a power of q."""
    d = divisor_sum(gens, e)
    if len(set(d)) != 1 or d[0] % 2:
        return None
    return d[0] // 2


def degree2_relations(gens: GeneratorSet) -> list[Relation]:
    """All relations with nonnegative exponents summing to 2 and j = 1.

    These are the slot pairs (including a slot with itself, which happens
    only for supersingular classes) whose divisors add up to that of q.
    """
    out = []
    n = len(gens)
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        e = [0] * n
        e[a] += 1
        e[b] += 1
        if is_relation(gens, e, 1):
            out.append(Relation(tuple(e), 1))
    return out


@dataclass(frozen=True)
class RelationLattice:
    """Integer span of relation vectors ``(e, j)``."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_relations(cls, gens: GeneratorSet, rels: Sequence[Relation]) -> RelationLattice:
        for r in rels:
            if not is_relation(gens, r.exponents, r.q_power):
                raise ValueError(f"not a relation: {r.name(gens)}")
        return cls(len(gens) + 1, tuple(r.extended for r in rels))

    @classmethod
    def degree2(cls, gens: GeneratorSet) -> RelationLattice:
        return cls.from_relations(gens, degree2_relations(gens))

    @cached_property
    def hermite(self) -> HermiteForm:
        return hermite_form(self.basis, self.dim)

    def to_json(self) -> dict:
        return {"basis": [list(b) for b in self.basis]}


def lattice_membership(rel: Relation, lat: RelationLattice, names: Sequence[str] | None = None) -> Membership:
    """Exact decision of ``(e, j) in lat`` with an integer certificate.

    ``names`` labels the coordinates in the obstruction message; pass
    ``gens.slots + ("q",)``.
    """
    m = membership(lat.hermite, rel.extended, names)
    if m.member:
        assert combine(m.certificate, lat.basis, lat.dim) == list(rel.extended)
    return m


def bounded_membership(rel: Relation, lat: RelationLattice, bound: int = 3) -> tuple[int, ...] | None:
    """Brute-force search for coefficients in ``[-bound, bound]`` over the basis.

    Only a semi-decision (it misses members needing larger coefficients);
    used as an independent cross-check of :func:`lattice_membership`.
    """
    r = len(lat.basis)
    target = np.array(rel.extended, dtype=np.int64)
    if r == 0:
        return () if not target.any() else None
    B = np.array(lat.basis, dtype=np.int64)
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    # vectorise over all but the first coefficient, loop over the first
    rest = np.array(list(itertools.product(vals, repeat=r - 1)), dtype=np.int64)
    rest = rest.reshape(len(vals) ** (r - 1), r - 1)
    partial = rest @ B[1:]
    for a in vals:
        hit = np.flatnonzero(np.all(partial + a * B[0] == target, axis=1))
        if hit.size:
            return (int(a),) + tuple(int(x) for x in rest[hit[0]])
    return None


def monoid_membership(rel: Relation, gens: GeneratorSet, rels: Sequence[Relation] | None = None) -> tuple[int, ...] | None:
    """Nonnegative combination of degree-2 relations equal to ``rel``, if any."""
    rels = degree2_relations(gens) if rels is None else list(rels)
    target = list(rel.extended)
    if any(x < 0 for x in target):
        return None
    counts = [0] * len(rels)

    def search(i, remaining):
        if not any(remaining):
            return True
        if i == len(rels):
            return False
        vec = rels[i].extended
        top = min((remaining[t] // v for t, v in enumerate(vec) if v > 0), default=0)
        for n in range(top, -1, -1):
            counts[i] = n
            if search(i + 1, [x - n * v for x, v in zip(remaining, vec)]):
                return True
        counts[i] = 0
        return False

    return tuple(counts) if search(0, target) else None


@dataclass(frozen=True)
class ExoticRelation:
    relation: Relation
    membership: Membership

    def to_json(self, gens: GeneratorSet) -> dict:
        return {
            "relation": self.relation.to_json(gens),
            "name": self.relation.name(gens),
            "degree": self.relation.degree,
            "membership": self.membership.to_json(),
        }


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for tail in _compositions(n - a, parts - 1):
            yield (a,) + tail


def nonnegative_relations(gens: GeneratorSet, max_degree: int) -> list[Relation]:
    """All relations with nonnegative exponents and degree in ``[1, max_degree]``,
    ordered by degree then reverse-lexicographically."""
    out = []
    for d in range(1, max_degree + 1):
        for e in _compositions(d, len(gens)):
            j = q_power(gens, e)
            if j is not None:
                out.append(Relation(e, j))
    return out


@dataclass
class RelationSurvey:
    """Nonnegative relations up to a degree, split by how they reduce to degree 2.

    ``exotic`` are outside the integer span of the degree-2 relations;
    ``monoid_gaps`` are inside that span but not a nonnegative combination.
    """

    gens: GeneratorSet
    max_degree: int
    degree2: list[Relation]
    checked: int
    exotic: list[ExoticRelation]
    monoid_gaps: list[Relation]

    def to_json(self) -> dict:
        g = self.gens
        return {
            "generators": list(g.slots),
            "max_degree": self.max_degree,
            "degree2_relations": [r.to_json(g) for r in self.degree2],
            "relations_checked": self.checked,
            "exotic": [x.to_json(g) for x in self.exotic],
            "monoid_gaps": [{"relation": r.to_json(g), "name": r.name(g)} for r in self.monoid_gaps],
        }


def survey_relations(gens: GeneratorSet, max_degree: int = DEFAULT_EXOTIC_DEGREE) -> RelationSurvey:
    if not 2 <= max_degree <= MAX_EXOTIC_DEGREE:
        raise ValueError(f"max_degree must lie in [2, {MAX_EXOTIC_DEGREE}], got {max_degree}")
    d2 = degree2_relations(gens)
    survey = RelationSurvey(gens, max_degree, d2, 0, [], [])
    if not gens.classes:
        return survey
    lat = RelationLattice.from_relations(gens, d2)
    names = gens.slots + ("q",)
    rels = nonnegative_relations(gens, max_degree)
    survey.checked = len(rels)
    for rel in rels:
        m = lattice_membership(rel, lat, names)
        if not m.member:
            survey.exotic.append(ExoticRelation(rel, m))
        elif monoid_membership(rel, gens, d2) is None:
            survey.monoid_gaps.append(rel)
    return survey


def find_exotic(gens: GeneratorSet, max_degree: int = DEFAULT_EXOTIC_DEGREE) -> list[ExoticRelation]:
    """Nonnegative relations of degree <= ``max_degree`` outside the degree-2 lattice."""
    return survey_relations(gens, max_degree).exotic
