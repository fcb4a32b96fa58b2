"""Isogeny classes over F_q seen through the divisor of their Weil number.

A Weil q-number in a multiquadratic CM field K with Galois group
G = (Z/2)^k is recorded by its p-adic valuation vector over the Galois orbit
of one fixed prime above p, divided by r (q = p^r) and then doubled so that
all values are integers:

* ``q`` has divisor ``2 * N`` (the all-2 vector),
* a supersingular number ``+-p^(r/2)`` has the all-1 vector,
* an ordinary number has a {0, 2}-vector ``m`` with ``m + c.m = 2N``,
  one prime per coset of complex conjugation ("a section").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

from .groupring import (
    GroupRingElt,
    check_element,
    check_rank,
    generator,
    norm_element,
    stabilizer,
    translate,
)

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"
Kind = Literal["ordinary", "supersingular"]

S1, S2, S3 = generator(1), generator(2), generator(3)
#: complex conjugation in the standard rank-3 context
STANDARD_C = S1 ^ S2 ^ S3


@dataclass(frozen=True)
class FieldContext:
    """Galois group (Z/2)^k together with its complex conjugation ``c``."""

    k: int
    c: int

    def __post_init__(self):
        check_rank(self.k)
        check_element(self.k, self.c)
        if self.k >= 1 and self.c == 0:
            raise ValueError("complex conjugation must be nontrivial when k >= 1")
        if self.k == 0 and self.c != 0:
            raise ValueError("rank 0 context has only the identity")

    @classmethod
    def standard(cls) -> FieldContext:
        """k = 3, c = s1 s2 s3: the compositum of three imaginary quadratic fields."""
        return cls(3, STANDARD_C)

    @property
    def order(self) -> int:
        return 1 << self.k

    @property
    def norm(self) -> GroupRingElt:
        return norm_element(self.k)

    @property
    def q_divisor(self) -> GroupRingElt:
        """Divisor of q in doubled units."""
        return GroupRingElt.constant(self.k, 2)

    def cosets(self) -> list[tuple[int, ...]]:
        """The cosets of <c>, each sorted, in order of smallest element."""
        seen: set[int] = set()
        out = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted({g, g ^ self.c}))
            seen.update(coset)
            out.append(coset)
        return out

    def conj(self, x: GroupRingElt) -> GroupRingElt:
        return translate(self.c, x)

    def to_json(self) -> dict:
        return {"k": self.k, "c": self.c}

    @classmethod
    def from_json(cls, data: dict) -> FieldContext:
        return cls(int(data["k"]), int(data["c"]))


def is_section(ctx: FieldContext, m: GroupRingElt) -> bool:
    if m.k != ctx.k or ctx.k == 0:
        return False
    return all(
        a in (0, 2) and a + m[g ^ ctx.c] == 2 for g, a in enumerate(m.coeffs)
    )


def is_ordinary_divisor(ctx: FieldContext, d: GroupRingElt) -> bool:
    """gcd(gamma, gamma^c) = 1 at divisor level: no prime is shared with its conjugate."""
    return all(min(a, d[g ^ ctx.c]) == 0 for g, a in enumerate(d.coeffs))


@dataclass(frozen=True)
class WeilClass:
    label: str
    kind: Kind
    divisor: GroupRingElt

    def __post_init__(self):
        if self.kind not in (ORDINARY, SUPERSINGULAR):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == SUPERSINGULAR and self.divisor != GroupRingElt.constant(self.divisor.k, 1):
            raise ValueError("supersingular divisor must be the all-1 vector")
        if self.kind == ORDINARY:
            d = self.divisor
            if d.k == 0 or not all(a in (0, 2) for a in d):
                raise ValueError(f"ordinary divisor must be a nonzero-rank {{0,2}}-vector: {d}")

    @classmethod
    def ordinary(cls, label: str, ctx: FieldContext, divisor: GroupRingElt) -> WeilClass:
        if not is_section(ctx, divisor):
            raise ValueError(f"{label}: {list(divisor)} is not a section for c={ctx.c}")
        return cls(label, ORDINARY, divisor)

    @classmethod
    def supersingular(cls, label: str, ctx: FieldContext) -> WeilClass:
        return cls(label, SUPERSINGULAR, GroupRingElt.constant(ctx.k, 1))

    def check_context(self, ctx: FieldContext) -> None:
        if self.divisor.k != ctx.k:
            raise ValueError(f"class {self.label} has rank {self.divisor.k}, context has {ctx.k}")
        if self.kind == ORDINARY and not is_section(ctx, self.divisor):
            raise ValueError(f"class {self.label} is not a section for c={ctx.c}")

    def to_json(self) -> dict:
        return {"label": self.label, "kind": self.kind, "divisor": self.divisor.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> WeilClass:
        return cls(str(data["label"]), data["kind"], GroupRingElt.from_json(data["divisor"]))


def enumerate_sections(ctx: FieldContext) -> list[GroupRingElt]:
    """All ordinary divisors in ``ctx``, lexicographically sorted.

    There are ``2 ** (2 ** (k - 1))`` of them; rank 0 has none.
    """
    if ctx.k == 0:
        return []
    cosets = ctx.cosets()
    out = []
    for choice in itertools.product((0, 1), repeat=len(cosets)):
        v = [0] * ctx.order
        for coset, bit in zip(cosets, choice):
            v[coset[bit]] = 2
        out.append(tuple(v))
    return [GroupRingElt(ctx.k, v) for v in sorted(out)]


@dataclass(frozen=True)
class SectionInfo:
    stabilizer: tuple[int, ...]
    field_degree: int
    is_elliptic: bool
    dimension: int

    def to_json(self) -> dict:
        return {
            "stabilizer": list(self.stabilizer),
            "field_degree": self.field_degree,
            "is_elliptic": self.is_elliptic,
            "dimension": self.dimension,
        }


def classify_section(ctx: FieldContext, m: GroupRingElt) -> SectionInfo:
    """Stabilizer, degree of Q(gamma), and Honda-Tate dimension of an ordinary class.

    For an ordinary Weil number the simple abelian variety has dimension
    [Q(gamma):Q] / 2.
    """
    if not is_section(ctx, m):
        raise ValueError(f"not a section for c={ctx.c}: {list(m)}")
    stab = stabilizer(m)
    degree = ctx.order // len(stab)
    return SectionInfo(tuple(stab), degree, degree == 2, degree // 2)


def classify(ctx: FieldContext, cls: WeilClass) -> SectionInfo:
    """Like :func:`classify_section` but also accepts supersingular classes,
    which are always elliptic of dimension 1."""
    cls.check_context(ctx)
    if cls.kind == SUPERSINGULAR:
        return SectionInfo(tuple(range(ctx.order)), 1, True, 1)
    return classify_section(ctx, cls.divisor)


def elliptic_sections(ctx: FieldContext) -> list[GroupRingElt]:
    return [m for m in enumerate_sections(ctx) if classify_section(ctx, m).is_elliptic]


def orbits(ctx: FieldContext, mod_c: bool = True, mod_galois: bool = False) -> list[list[GroupRingElt]]:
    """Partition the sections into equivalence classes.

    ``mod_c`` identifies ``m`` with ``c.m``; ``mod_galois`` identifies ``m``
    with every translate ``g.m``.  Classes are listed by their smallest
    member, members sorted.
    """
    sections = enumerate_sections(ctx)
    index = {m: i for i, m in enumerate(sections)}
    moves = set()
    if mod_c:
        moves.add(ctx.c)
    if mod_galois:
        moves.update(range(ctx.order))
    parent = list(range(len(sections)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, m in enumerate(sections):
        for g in moves:
            j = index[translate(g, m)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[GroupRingElt]] = {}
    for i, m in enumerate(sections):
        groups.setdefault(find(i), []).append(m)
    return [groups[r] for r in sorted(groups)]


def _doubled(k: int, elements) -> GroupRingElt:
    return GroupRingElt.from_terms(k, {g: 2 for g in elements})


def _require_standard(ctx: FieldContext) -> None:
    if ctx != FieldContext.standard():
        raise ValueError(f"construction needs k=3, c=s1s2s3; got k={ctx.k}, c={ctx.c}")


def standard_quadruple(ctx: FieldContext) -> tuple[GroupRingElt, GroupRingElt, GroupRingElt, GroupRingElt]:
    """Divisors of alpha_1..alpha_4 (doubled units).

    alpha_i for i <= 3 is fixed by the s_j with j != i; alpha_4 lives in the
    fourth imaginary quadratic subfield, cut out by chi1*chi2*chi3.
    """
    _require_standard(ctx)
    m1 = _doubled(3, (0, S2, S3, S2 ^ S3))
    m2 = _doubled(3, (0, S1, S3, S1 ^ S3))
    m3 = _doubled(3, (0, S1, S2, S1 ^ S2))
    m4 = _doubled(3, (0, S1 ^ S2, S1 ^ S3, S2 ^ S3))
    return m1, m2, m3, m4


def standard_classes(ctx: FieldContext) -> list[WeilClass]:
    return [
        WeilClass.ordinary(f"alpha{i}", ctx, m)
        for i, m in enumerate(standard_quadruple(ctx), start=1)
    ]


def construct_beta(ctx: FieldContext) -> WeilClass:
    """The ordinary class beta with divisor on {1, s1, s2, s3}.

    It satisfies alpha1 alpha2 alpha3 alpha4^c = q beta^2 and Q(beta) = K,
    giving a simple abelian fourfold.
    """
    _require_standard(ctx)
    return WeilClass.ordinary("beta", ctx, _doubled(3, (0, S1, S2, S3)))
