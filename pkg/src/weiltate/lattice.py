"""Exact integer row lattices: Hermite normal form and membership certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class HermiteForm:
    """Row-style HNF ``H = U @ B`` of an integer matrix ``B``.

    ``rows`` holds the nonzero rows of H (echelon form, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``), ``pivots`` their
    pivot columns, and ``transform`` the matching rows of the unimodular U.
    ``kernel`` holds the remaining rows of U, which map to zero.
    """

    ncols: int
    nbasis: int
    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]
    kernel: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)


def hermite_form(basis: Sequence[Sequence[int]], ncols: int | None = None) -> HermiteForm:
    m = len(basis)
    if ncols is None:
        if not basis:
            raise ValueError("ncols is required for an empty basis")
        ncols = len(basis[0])
    rows = []
    for i, b in enumerate(basis):
        if len(b) != ncols:
            raise ValueError(f"basis row {i} has length {len(b)}, expected {ncols}")
        unit = [0] * m
        unit[i] = 1
        rows.append([int(a) for a in b] + unit)

    prow = 0
    pivots = []
    for col in range(ncols):
        if prow == m:
            break
        while True:
            live = [r for r in range(prow, m) if rows[r][col]]
            if not live:
                break
            best = min(live, key=lambda r: abs(rows[r][col]))
            rows[prow], rows[best] = rows[best], rows[prow]
            piv = rows[prow]
            done = True
            for r in range(prow + 1, m):
                a = rows[r][col]
                if a:
                    qt = a // piv[col]
                    rows[r] = [x - qt * y for x, y in zip(rows[r], piv)]
                    if rows[r][col]:
                        done = False
            if done:
                break
        if prow < m and rows[prow][col]:
            if rows[prow][col] < 0:
                rows[prow] = [-x for x in rows[prow]]
            p = rows[prow][col]
            for r in range(prow):
                qt = rows[r][col] // p
                if qt:
                    rows[r] = [x - qt * y for x, y in zip(rows[r], rows[prow])]
            pivots.append(col)
            prow += 1

    return HermiteForm(
        ncols=ncols,
        nbasis=m,
        rows=tuple(tuple(r[:ncols]) for r in rows[:prow]),
        pivots=tuple(pivots),
        transform=tuple(tuple(r[ncols:]) for r in rows[:prow]),
        kernel=tuple(tuple(r[ncols:]) for r in rows[prow:]),
    )


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: tuple[int, ...] | None = None
    obstruction: str | None = None

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "certificate": None if self.certificate is None else list(self.certificate),
            "obstruction": self.obstruction,
        }


def membership(hf: HermiteForm, vec: Sequence[int], names: Sequence[str] | None = None) -> Membership:
    """Decide whether ``vec`` lies in the integer row span, by reduction against H.

    On success the certificate ``x`` satisfies ``x @ B == vec``.  On failure
    the obstruction names the first coordinate that cannot be cleared.
    """
    if len(vec) != hf.ncols:
        raise ValueError(f"vector has length {len(vec)}, lattice ambient dimension is {hf.ncols}")
    name = (lambda j: names[j]) if names is not None else str
    res = [int(a) for a in vec]
    coeffs = []
    pivot_of = dict(zip(hf.pivots, range(hf.rank)))
    for j in range(hf.ncols):
        if not res[j]:
            continue
        i = pivot_of.get(j)
        if i is None:
            return Membership(
                False,
                obstruction=f"coordinate {name(j)} = {res[j]} after reduction; no basis pivot in this column",
            )
        p = hf.rows[i][j]
        if res[j] % p:
            return Membership(
                False,
                obstruction=f"coordinate {name(j)} = {res[j]} after reduction is not divisible by pivot {p}",
            )
        qt = res[j] // p
        res = [x - qt * y for x, y in zip(res, hf.rows[i])]
        coeffs.append((i, qt))
    cert = [0] * hf.nbasis
    for i, qt in coeffs:
        cert = [x + qt * u for x, u in zip(cert, hf.transform[i])]
    return Membership(True, certificate=tuple(cert))


def combine(coeffs: Sequence[int], basis: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for a, row in zip(coeffs, basis):
        if a:
            out = [x + a * y for x, y in zip(out, row)]
    return out
