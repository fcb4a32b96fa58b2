"""Integral group ring Z[G] of an elementary abelian 2-group G = (Z/2)^k.

Group elements are bit indices in ``range(2**k)``: generator ``s_i`` is the
element with only bit ``i - 1`` set and the group law is XOR.  An element of
Z[G] is a length ``2**k`` tuple of Python ints (exact, unbounded).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

#: Largest group rank accepted by constructors; exhaustive searches are
#: exponential in 2**k so this is a guard rather than a math limit.
MAX_RANK = 6


def check_rank(k: int) -> int:
    k = int(k)
    if k < 0 or k > MAX_RANK:
        raise ValueError(f"group rank must lie in [0, {MAX_RANK}], got {k}")
    return k


def check_element(k: int, g: int) -> int:
    g = int(g)
    if not 0 <= g < (1 << k):
        raise ValueError(f"group element {g} out of range for rank {k}")
    return g


def generator(i: int) -> int:
    """Index of the i-th generator s_i (1-based)."""
    if i < 1:
        raise ValueError("generators are numbered from 1")
    return 1 << (i - 1)


def element_name(g: int) -> str:
    """Human-readable word for ``g``, e.g. ``5 -> 's1s3'`` and ``0 -> '1'``."""
    if g == 0:
        return "1"
    return "".join(f"s{i + 1}" for i in range(g.bit_length()) if (g >> i) & 1)


def parse_element(word: str) -> int:
    """Inverse of :func:`element_name`; accepts ``'1'``, ``'s2'``, ``'s1s2s3'``."""
    word = word.strip()
    if word in ("1", "e", ""):
        return 0
    g = 0
    parts = word.split("s")
    if parts[0] != "":
        raise ValueError(f"cannot parse group element {word!r}")
    for p in parts[1:]:
        if not p.isdigit():
            raise ValueError(f"cannot parse group element {word!r}")
        g ^= generator(int(p))
    return g


@dataclass(frozen=True)
class GroupRingElt:
    """Element of Z[(Z/2)^k], stored as its full coefficient vector."""

    k: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_rank(self.k)
        coeffs = tuple(int(a) for a in self.coeffs)
        if len(coeffs) != 1 << self.k:
            raise ValueError(
                f"rank {self.k} needs {1 << self.k} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, k: int) -> GroupRingElt:
        return cls(k, (0,) * (1 << check_rank(k)))

    @classmethod
    def one(cls, k: int) -> GroupRingElt:
        return cls.basis(k, 0)

    @classmethod
    def basis(cls, k: int, g: int) -> GroupRingElt:
        """The group element ``g`` viewed inside Z[G]."""
        check_rank(k)
        g = check_element(k, g)
        v = [0] * (1 << k)
        v[g] = 1
        return cls(k, tuple(v))

    @classmethod
    def from_terms(cls, k: int, terms: Mapping[int, int] | Iterable[int]) -> GroupRingElt:
        """Build from ``{element: coefficient}`` or an iterable of elements
        (each occurrence adds 1)."""
        check_rank(k)
        v = [0] * (1 << k)
        items = terms.items() if isinstance(terms, Mapping) else ((g, 1) for g in terms)
        for g, a in items:
            v[check_element(k, g)] += int(a)
        return cls(k, tuple(v))

    @classmethod
    def constant(cls, k: int, value: int) -> GroupRingElt:
        """Vector with every coefficient equal to ``value`` (``value * N``)."""
        return cls(k, (int(value),) * (1 << check_rank(k)))

    # ring structure -----------------------------------------------------
    def _same_rank(self, other: GroupRingElt) -> None:
        if not isinstance(other, GroupRingElt):
            raise TypeError(f"expected GroupRingElt, got {type(other).__name__}")
        if other.k != self.k:
            raise ValueError(f"rank mismatch: {self.k} vs {other.k}")

    def __add__(self, other: GroupRingElt) -> GroupRingElt:
        self._same_rank(other)
        return GroupRingElt(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: GroupRingElt) -> GroupRingElt:
        self._same_rank(other)
        return GroupRingElt(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> GroupRingElt:
        return GroupRingElt(self.k, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, n: int) -> GroupRingElt:
        return GroupRingElt(self.k, tuple(n * a for a in self.coeffs))

    def __getitem__(self, g: int) -> int:
        return self.coeffs[g]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # misc ---------------------------------------------------------------
    def support(self) -> list[int]:
        return [g for g, a in enumerate(self.coeffs) if a]

    def augmentation(self) -> int:
        """Sum of all coefficients."""
        return sum(self.coeffs)

    def halve(self) -> GroupRingElt:
        """Exact division by 2; raises if any coefficient is odd."""
        if any(a % 2 for a in self.coeffs):
            raise ValueError("cannot halve a vector with odd coefficients")
        return GroupRingElt(self.k, tuple(a // 2 for a in self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> GroupRingElt:
        n = len(data)
        if n == 0 or n & (n - 1):
            raise ValueError(f"coefficient list length must be a power of two, got {n}")
        if any(isinstance(a, bool) or not isinstance(a, int) for a in data):
            raise ValueError("coefficients must be integers")
        return cls(n.bit_length() - 1, tuple(data))

    def __str__(self) -> str:
        terms = []
        for g, a in enumerate(self.coeffs):
            if a == 0:
                continue
            name = element_name(g)
            if g == 0:
                body = str(abs(a))
            elif abs(a) == 1:
                body = name
            else:
                body = f"{abs(a)}{name}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def mul(x: GroupRingElt, y: GroupRingElt) -> GroupRingElt:
    """Product in Z[G]: XOR convolution of coefficient vectors."""
    x._same_rank(y)
    n = 1 << x.k
    out = [0] * n
    ys = [(b, yb) for b, yb in enumerate(y.coeffs) if yb]
    for a, xa in enumerate(x.coeffs):
        if not xa:
            continue
        for b, yb in ys:
            out[a ^ b] += xa * yb
    return GroupRingElt(x.k, tuple(out))


def translate(g: int, x: GroupRingElt) -> GroupRingElt:
    """Galois action of ``g``: ``result[h] = x[g*h]``.

    Equal to multiplication by the basis element ``g`` since ``g`` is an
    involution.
    """
    g = check_element(x.k, g)
    c = x.coeffs
    return GroupRingElt(x.k, tuple(c[g ^ h] for h in range(len(c))))


def norm_element(k: int) -> GroupRingElt:
    """The norm element N = sum of all group elements."""
    return GroupRingElt.constant(k, 1)


def defect(x: GroupRingElt, target: GroupRingElt) -> set[int]:
    """Elements where ``x`` falls short of ``target``; empty iff ``x >= target``."""
    x._same_rank(target)
    return {g for g, (a, b) in enumerate(zip(x.coeffs, target.coeffs)) if a < b}


def stabilizer(x: GroupRingElt) -> list[int]:
    """Sorted list of ``g`` with ``translate(g, x) == x``."""
    return [g for g in range(1 << x.k) if translate(g, x) == x]


def subgroup_closure(k: int, gens: Iterable[int]) -> list[int]:
    """Subgroup of (Z/2)^k generated by ``gens`` (sorted)."""
    span = {0}
    for g in gens:
        g = check_element(k, g)
        if g not in span:
            span |= {h ^ g for h in span}
    return sorted(span)
