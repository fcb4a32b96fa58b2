"""Frobenius eigenvalues on H^n of a product of elliptic curves and their coniveau.

An eigenvalue on H^n = Lambda^n H^1 is a monomial in the Weil numbers
alpha_i and their conjugates alpha_i^c.  Two notions of coniveau are
compared:

* Tate coniveau: the largest j with q^j dividing the eigenvalue (divisor level);
* witnessed coniveau: the largest number of disjoint factor pairs whose
  product has the divisor of q.  Each such pair gives a divisor class on
  E_i x E_j, so this is the coniveau reachable by products of degree-2 cycles.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .groupring import GroupRingElt, defect, element_name, norm_element, translate
from .weilmodel import (
    FieldContext,
    WeilClass,
    classify,
    elliptic_sections,
    standard_quadruple,
)


@dataclass(frozen=True)
class ProductSpec:
    """X = product of elliptic curves E_i^{mult_i}, one Weil class per isogeny class."""

    ctx: FieldContext
    factors: tuple[tuple[WeilClass, int], ...]

    def __post_init__(self):
        factors = tuple((cls, int(mult)) for cls, mult in self.factors)
        labels = [cls.label for cls, _ in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate class labels: {labels}")
        for cls, mult in factors:
            if mult < 1:
                raise ValueError(f"multiplicity of {cls.label} must be >= 1, got {mult}")
            if not classify(self.ctx, cls).is_elliptic:
                raise ValueError(f"{cls.label} is not an elliptic Weil class")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, ctx: FieldContext, classes: Sequence[WeilClass], mults: Sequence[int] | None = None) -> ProductSpec:
        mults = [1] * len(classes) if mults is None else mults
        return cls(ctx, tuple(zip(classes, mults)))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def labels(self) -> list[str]:
        return [cls.label for cls, _ in self.factors]

    @cached_property
    def slot_divisors(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Per factor, the divisors of alpha_i and alpha_i^c as plain tuples."""
        return tuple(
            (cls.divisor.coeffs, translate(self.ctx.c, cls.divisor).coeffs)
            for cls, _ in self.factors
        )

    def to_json(self) -> dict:
        return {
            "context": self.ctx.to_json(),
            "factors": [{"class": cls.to_json(), "multiplicity": m} for cls, m in self.factors],
        }


@dataclass(frozen=True)
class EigenvalueMonomial:
    """Exponents ``(e_i, ebar_i)`` of alpha_i and alpha_i^c for each factor."""

    exponents: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return sum(a + b for a, b in self.exponents)

    def conjugate(self) -> EigenvalueMonomial:
        return EigenvalueMonomial(tuple((b, a) for a, b in self.exponents))

    def name(self, labels: Sequence[str]) -> str:
        parts = []
        for label, (a, b) in zip(labels, self.exponents):
            for sym, e in ((label, a), (label + "^c", b)):
                if e == 1:
                    parts.append(sym)
                elif e > 1:
                    parts.append(f"({sym})^{e}")
        return "*".join(parts) if parts else "1"

    def to_json(self, labels: Sequence[str]) -> dict:
        return {label: [a, b] for label, (a, b) in zip(labels, self.exponents)}


def monomial(spec: ProductSpec, **exps) -> EigenvalueMonomial:
    """Convenience constructor: ``monomial(spec, alpha1=1, alpha4_c=1)``."""
    out = []
    for label in spec.labels:
        out.append((exps.pop(label, 0), exps.pop(label + "_c", 0)))
    if exps:
        raise ValueError(f"unknown slots: {sorted(exps)}")
    mon = EigenvalueMonomial(tuple(out))
    _check_monomial(spec, mon)
    return mon


def _check_monomial(spec: ProductSpec, mon: EigenvalueMonomial) -> None:
    if len(mon.exponents) != len(spec.factors):
        raise ValueError("monomial does not match the product")
    for (cls, mult), (a, b) in zip(spec.factors, mon.exponents):
        if not (0 <= a <= mult and 0 <= b <= mult):
            raise ValueError(f"exponents ({a}, {b}) of {cls.label} exceed multiplicity {mult}")


def _exponent_tuples(bounds: Sequence[int], n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if not bounds:
        if n == 0:
            yield ()
        return
    m, rest = bounds[0], bounds[1:]
    room = 2 * sum(rest)
    for a in range(min(m, n) + 1):
        for b in range(min(m, n - a) + 1):
            if n - a - b <= room:
                for tail in _exponent_tuples(rest, n - a - b):
                    yield ((a, b),) + tail


def eigenvalue_monomials(spec: ProductSpec, n: int) -> list[EigenvalueMonomial]:
    """All eigenvalue monomials on H^n, ordered lexicographically by exponents."""
    if not 0 <= n <= 2 * spec.dimension:
        raise ValueError(f"degree {n} outside [0, {2 * spec.dimension}]")
    bounds = [m for _, m in spec.factors]
    return [EigenvalueMonomial(t) for t in _exponent_tuples(bounds, n)]


def _divisor_sum(spec: ProductSpec, mon: EigenvalueMonomial) -> list[int]:
    total = [0] * spec.ctx.order
    for (d, dc), (a, b) in zip(spec.slot_divisors, mon.exponents):
        if a:
            total = [t + a * x for t, x in zip(total, d)]
        if b:
            total = [t + b * x for t, x in zip(total, dc)]
    return total


def divisor_of_monomial(spec: ProductSpec, mon: EigenvalueMonomial) -> GroupRingElt:
    """Divisor of the eigenvalue in doubled units."""
    return GroupRingElt(spec.ctx.k, tuple(_divisor_sum(spec, mon)))


def tate_coniveau(spec: ProductSpec, mon: EigenvalueMonomial) -> int:
    """Largest j such that q^j divides the eigenvalue."""
    return min(_divisor_sum(spec, mon)) // 2


@dataclass(frozen=True)
class Slot:
    label: str
    conjugate: bool

    def __str__(self):
        return self.label + ("^c" if self.conjugate else "")


def _slots(spec: ProductSpec, mon: EigenvalueMonomial) -> list[tuple[Slot, tuple[int, ...]]]:
    out = []
    for label, (d, dc), (a, b) in zip(spec.labels, spec.slot_divisors, mon.exponents):
        out.extend([(Slot(label, False), d)] * a)
        out.extend([(Slot(label, True), dc)] * b)
    return out


def witnessed_coniveau(spec: ProductSpec, mon: EigenvalueMonomial) -> tuple[int, list[tuple[Slot, Slot]]]:
    """Maximum number of disjoint q-pairs among the factors, with a witness.

    Whether two factors pair up depends only on their divisors ``d, d'``
    (``d + d' = 2N``), and ``d -> 2N - d`` is an involution, so the pairing
    graph is a disjoint union of complete bipartite graphs (``d`` against its
    complement) and cliques (self-complementary ``d``, i.e. supersingular).
    A maximum matching is therefore found greedily per divisor.
    """
    by_div: dict[tuple[int, ...], list[Slot]] = defaultdict(list)
    for slot, d in _slots(spec, mon):
        by_div[d].append(slot)
    pairs: list[tuple[Slot, Slot]] = []
    for d in sorted(by_div):
        comp = tuple(2 - a for a in d)
        if comp == d:
            group = by_div[d]
            pairs.extend(zip(group[0::2], group[1::2]))
        elif d < comp and comp in by_div:
            pairs.extend(zip(by_div[d], by_div[comp]))
    return len(pairs), pairs


def witnessed_count(spec: ProductSpec, mon: EigenvalueMonomial) -> int:
    """``witnessed_coniveau(spec, mon)[0]`` without building the witness."""
    counts: dict[tuple[int, ...], int] = defaultdict(int)
    for (d, dc), (a, b) in zip(spec.slot_divisors, mon.exponents):
        counts[d] += a
        counts[dc] += b
    j = 0
    for d, n in counts.items():
        comp = tuple(2 - x for x in d)
        if comp == d:
            j += n // 2
        elif d < comp:
            j += min(n, counts.get(comp, 0))
    return j


@dataclass
class MonomialRecord:
    monomial: EigenvalueMonomial
    name: str
    tate: int
    witnessed: int
    witness_pairs: list[tuple[Slot, Slot]]

    @property
    def is_gap(self) -> bool:
        return self.tate > self.witnessed


@dataclass
class ConiveauReport:
    spec: ProductSpec
    degree: int
    records: list[MonomialRecord]

    @property
    def gaps(self) -> list[MonomialRecord]:
        return [r for r in self.records if r.is_gap]

    def to_json(self) -> dict:
        labels = self.spec.labels
        return {
            "spec": self.spec.to_json(),
            "degree": self.degree,
            "monomials": [
                {
                    "name": r.name,
                    "exponents": r.monomial.to_json(labels),
                    "tate": r.tate,
                    "witnessed": r.witnessed,
                    "witness_pairs": [[str(a), str(b)] for a, b in r.witness_pairs],
                }
                for r in self.records
            ],
            "gaps": [r.name for r in self.gaps],
        }


def analyze(spec: ProductSpec, n: int) -> ConiveauReport:
    records = []
    for mon in eigenvalue_monomials(spec, n):
        j, pairs = witnessed_coniveau(spec, mon)
        records.append(
            MonomialRecord(mon, mon.name(spec.labels), tate_coniveau(spec, mon), j, pairs)
        )
    return ConiveauReport(spec, n, records)


# --- exhaustive verifiers -------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    params: dict
    configurations_checked: int
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and all(
            v for k, v in self.details.items() if k.endswith("_holds")
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "configurations_checked": self.configurations_checked,
            "counterexamples": self.counterexamples,
            "details": self.details,
            "passed": self.passed,
        }


def _lemma1_context(k: int, c: int) -> tuple[int, list]:
    ctx = FieldContext(k, c)
    q = ctx.q_divisor.coeffs
    options = [GroupRingElt.constant(k, 1).coeffs] + [m.coeffs for m in elliptic_sections(ctx)]
    checked = 0
    bad = []
    for triple in itertools.combinations_with_replacement(options, 3):
        checked += 1
        total = [a + b + d for a, b, d in zip(*triple)]
        if any(a < b for a, b in zip(total, q)):
            continue
        if any(
            [a + b for a, b in zip(x, y)] == list(q)
            for x, y in itertools.combinations(triple, 2)
        ):
            continue
        bad.append({"k": k, "c": c, "triple": [list(t) for t in triple], "sum": total})
    return checked, bad


def _map(fn, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*items)))
    return [fn(*it) for it in items]


def verify_lemma1(kmax: int, jobs: int = 1) -> VerificationReport:
    """Exhaustive check of the pair lemma for three elliptic Weil numbers.

    For every rank ``k <= kmax``, every nontrivial ``c`` and every multiset of
    three elliptic classes (supersingular or an ordinary section with field
    degree 2) whose divisors sum to at least the divisor of q, some pair must
    multiply to q exactly.
    """
    from .groupring import MAX_RANK

    if not 1 <= kmax <= MAX_RANK:
        raise ValueError(f"kmax must lie in [1, {MAX_RANK}]")
    items = [(k, c) for k in range(1, kmax + 1) for c in range(1, 1 << k)]
    results = _map(_lemma1_context, items, jobs)
    report = VerificationReport("lemma1", {"kmax": kmax}, 0)
    per_rank: dict[int, int] = defaultdict(int)
    for (k, _), (checked, bad) in zip(items, results):
        report.configurations_checked += checked
        per_rank[k] += checked
        report.counterexamples.extend(bad)
    report.details["configurations_per_rank"] = {str(k): v for k, v in sorted(per_rank.items())}
    return report


def verify_thm2(ctx: FieldContext, bound: int) -> VerificationReport:
    """Check that alpha1^n1 alpha2^n2 alpha3^n3 (and the variant with alpha3^c)
    is never divisible by p, for all exponents in ``[0, bound]^3`` minus 0.

    The bounded scan is backed by a structural fact covering every n: each
    alpha_i divisor vanishes at c (resp. at s1s2 after conjugating alpha3),
    so that coefficient of any nonnegative combination is zero.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    m1, m2, m3, _ = (m.halve() for m in standard_quadruple(ctx))
    m3c = translate(ctx.c, m3)
    target = norm_element(ctx.k)
    s1s2 = 0b011
    report = VerificationReport("thm2", {"k": ctx.k, "c": ctx.c, "bound": bound}, 0)
    for variant, third in (("plain", m3), ("conjugated", m3c)):
        for n in itertools.product(range(bound + 1), repeat=3):
            if n == (0, 0, 0):
                continue
            report.configurations_checked += 1
            x = m1.scale(n[0]) + m2.scale(n[1]) + third.scale(n[2])
            if not defect(x, target):
                report.counterexamples.append({"variant": variant, "exponents": list(n)})
    report.details.update(
        {
            "plain_zero_element": element_name(ctx.c),
            "plain_zero_holds": all(m[ctx.c] == 0 for m in (m1, m2, m3)),
            "conjugated_zero_element": element_name(s1s2),
            "conjugated_zero_holds": all(m[s1s2] == 0 for m in (m1, m2, m3c)),
            "m": (m1 + m2 + m3).to_json(),
            "m_defect": sorted(defect(m1 + m2 + m3, target)),
            "m_prime": (m1 + m2 + m3c).to_json(),
            "m_prime_defect": sorted(defect(m1 + m2 + m3c, target)),
        }
    )
    return report
