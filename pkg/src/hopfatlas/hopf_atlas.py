"""Legendrian realisations of the Hopf link in the lens space L(p,1).

The two components are the spines of the genus-one Heegaard splitting. A
realisation is determined by its classical invariants, so each one is
recorded here as the tuple ``(tbq0, rotq0, tbq1, rotq1, d3)`` together with
the ambient structure and which components are loose.

``classify`` lists every realisation for given ``(p, t0, t1)``, where
``tbq_i = t_i + 1/p``. Parameters outside the canonical ordering of the
cases are handled by exchanging the roles of the two components.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .slope_calculus import count_tight, closed_form_count

__all__ = [
    "CASE_TAGS",
    "Realization",
    "UnknotTableEntry",
    "CountRow",
    "CountReport",
    "canonical_case",
    "classify",
    "exceptional_unknot_rots",
    "looseness_hint",
    "verify_counts",
]

CASE_TAGS = ("a", "b", "c1", "c2", "c3", "d1", "d2", "d3", "e_t1eq1", "e_t1gt1")

TIGHT = "tight"
OVERTWISTED = "overtwisted"
LOOSE = "loose"
POSSIBLY_EXCEPTIONAL = "possibly_exceptional"


@dataclass(frozen=True)
class Realization:
    case_tag: str
    p: int
    t0: int
    t1: int
    tbq0: Fraction
    rotq0: Fraction
    tbq1: Fraction
    rotq1: Fraction
    d3: Fraction
    ambient: str
    loose0: bool
    loose1: bool
    r: int | None = None
    r0: int | None = None
    r1: int | None = None
    # which of the listed sign choices or sub-families produced this entry
    variant: str = ""

    def invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.tbq0, self.rotq0, self.tbq1, self.rotq1, self.d3)

    def swapped(self) -> "Realization":
        """The same link with the roles of the two components exchanged."""
        return replace(
            self,
            t0=self.t1,
            t1=self.t0,
            tbq0=self.tbq1,
            rotq0=self.rotq1,
            tbq1=self.tbq0,
            rotq1=self.rotq0,
            loose0=self.loose1,
            loose1=self.loose0,
            r0=self.r1,
            r1=self.r0,
        )


@dataclass(frozen=True)
class UnknotTableEntry:
    t: int
    rots: tuple[Fraction, ...]


def canonical_case(t0: int, t1: int) -> tuple[str, bool]:
    """Case tag for ``(t0, t1)`` and whether the components must be swapped first."""
    for a, b, swapped in ((t0, t1, False), (t1, t0, True)):
        if a < 0 and b < 0:
            return "a", swapped
        if a == 0 and b <= 0:
            return "b", swapped
        if a == 0 and b > 0:
            return ("c1" if b == 1 else "c2" if b == 2 else "c3"), swapped
        if a > 0 and b > 0:
            if a == 1:
                return ("d1" if b == 1 else "d2"), swapped
            if b > 1:
                return "d3", swapped
        if a < 0 and b > 0:
            return ("e_t1eq1" if b == 1 else "e_t1gt1"), swapped
    raise DomainError(f"no case covers (t0, t1) = ({t0}, {t1})")


def _steps(lo: int, hi: int) -> range:
    return range(lo, hi + 1, 2)


def classify(p: int, t0: int, t1: int) -> list[Realization]:
    if p < 2:
        raise DomainError(f"p must be at least 2, got {p}")
    tag, swapped = canonical_case(t0, t1)
    if swapped:
        return [x.swapped() for x in _classify_canonical(tag, p, t1, t0)]
    return _classify_canonical(tag, p, t0, t1)


def _classify_canonical(tag: str, p: int, t0: int, t1: int) -> list[Realization]:
    P = Fraction(p)
    tb0 = t0 + 1 / P
    tb1 = t1 + 1 / P
    out: list[Realization] = []

    def add(rot0, rot1, d3, ambient=OVERTWISTED, loose0=True, loose1=True, **params):
        out.append(
            Realization(tag, p, t0, t1, tb0, Fraction(rot0), tb1, Fraction(rot1), Fraction(d3),
                        ambient, loose0, loose1, **params)
        )

    if tag == "a":
        for r in _steps(-p + 2, p - 2):
            d3 = -(1 + r * r / P) / 4
            for r0 in _steps(t0 + 1, -t0 - 1):
                for r1 in _steps(t1 + 1, -t1 - 1):
                    add(r0 - r / P, r1 - r / P, d3, TIGHT, False, False, r=r, r0=r0, r1=r1)
    elif tag == "b":
        # at t1 = 0 the range collapses to a single entry whose two components
        # have equal invariants; it is kept and marked
        variant = "degenerate" if t1 == 0 else ""
        for r1 in _steps(t1, -t1):
            add(0, r1, Fraction(3 - p, 4), loose0=False, loose1=True, r1=r1, variant=variant)
    elif tag == "c1":
        d3 = (3 * P - P * P - 4) / (4 * P)
        for s in (1, -1):
            add(s * 2 / P, s * (1 + 2 / P), d3, variant=_sign(s))
    elif tag == "c2":
        d3 = (3 * P - P * P - 4) / (4 * P)
        for s in (1, -1):
            add(s * 2 / P, s * (2 + 2 / P), d3, variant=_sign(s))
        add(0, 0, Fraction(7 - p, 4), variant="0")
    elif tag == "c3":
        for s in (1, -1):
            add(0, s * (t1 - 2), Fraction(7 - p, 4), variant="A" + _sign(s))
        d3 = (3 * P - P * P - 4) / (4 * P)
        for s in (1, -1):
            add(s * 2 / P, s * (t1 + 2 / P), d3, variant="B" + _sign(s))
    elif tag == "d1":
        # the orientation flip sends r to -r, which is already in the list
        for r in _steps(-p - 2, p + 2):
            add(r / P, r / P, (7 * P - r * r) / (4 * P), r=r)
    elif tag == "d2":
        for r in _steps(-p - 1, p + 1):
            u = (1 - r) / P
            d3 = (7 * P - 1 + 2 * r - r * r) / (4 * P)
            for s in (1, -1):
                add(s * u, s * (t1 - 1 + u), d3, r=r, variant=_sign(s))
    elif tag == "d3":
        for r in _steps(-p, p):
            u = (2 - r) / P
            d3 = (7 * P - 4 + 4 * r - r * r) / (4 * P)
            for s in (1, -1):
                add(s * (t0 - 1 + u), s * (t1 - 1 + u), d3, r=r, variant="A" + _sign(s))
            d3 = (7 * P - r * r) / (4 * P)
            for s in (1, -1):
                add(s * (t0 - 1 + r / P), -s * (t1 - 1 - r / P), d3, r=r, variant="B" + _sign(s))
    elif tag == "e_t1eq1":
        # flipping orientations gives (r0, r) -> (-r0, -r), already listed
        for r in _steps(-p, p):
            d3 = (3 * P - r * r) / (4 * P)
            for r0 in _steps(t0 + 1, -t0 - 1):
                add(r0 - r / P, -r / P, d3, loose0=True, loose1=False, r=r, r0=r0)
    elif tag == "e_t1gt1":
        for r in _steps(-p + 1, p - 1):
            u = (1 - r) / P
            d3 = (3 + (2 * r - r * r - 1) / P) / 4
            for r0 in _steps(t0 + 1, -t0 - 1):
                for s in (1, -1):
                    add(s * (r0 + u), s * (t1 - 1 + u), d3, loose0=True, loose1=False,
                        r=r, r0=r0, variant=_sign(s))
    else:
        raise DomainError(f"unknown case tag {tag!r}")
    return out


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def exceptional_unknot_rots(p: int, t: int) -> UnknotTableEntry:
    """Rational rotation numbers of exceptional rational unknots with ``tb_Q = t + 1/p``."""
    if p < 2:
        raise DomainError(f"p must be at least 2, got {p}")
    P = Fraction(p)
    if t < 0:
        rots: tuple[Fraction, ...] = ()
    elif t == 0:
        rots = (Fraction(0),)
    elif t == 1:
        rots = tuple(-1 + 2 * k / P for k in range(p + 1))
    else:
        pos = [t - 2 + 2 * k / P for k in range(1, p + 1)]
        rots = tuple(sorted([-v for v in pos] + pos))
    return UnknotTableEntry(t, rots)


def looseness_hint(p: int, t: int, rotq) -> str:
    """``loose`` if no exceptional rational unknot has these invariants.

    A match only means the component may be exceptional; deciding that would
    need the d3 values of the exceptional unknots, which are not tabulated here.
    """
    if Fraction(rotq) in exceptional_unknot_rots(p, t).rots:
        return POSSIBLY_EXCEPTIONAL
    return LOOSE


@dataclass(frozen=True, order=True)
class CountRow:
    p: int
    t0: int
    t1: int
    classified: int
    closed_form: int
    normalized: int
    # case label with the swap flag folded in, for reports
    case_tag: str = field(default="", compare=False)

    @property
    def ok(self) -> bool:
        return self.classified == self.closed_form == self.normalized


@dataclass(frozen=True)
class CountReport:
    rows: tuple[CountRow, ...]

    @property
    def mismatches(self) -> tuple[CountRow, ...]:
        return tuple(r for r in self.rows if not r.ok)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _count_row(key: tuple[int, int, int]) -> CountRow:
    p, t0, t1 = key
    tag, swapped = canonical_case(t0, t1)
    return CountRow(
        p, t0, t1,
        len(classify(p, t0, t1)),
        closed_form_count(p, t0, t1),
        count_tight(p, t0, t1),
        tag + (" (swapped)" if swapped else ""),
    )


def default_workers() -> int:
    raw = os.environ.get("ATLAS_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_counts(p_range: Iterable[int], t_range: Iterable[int], workers: int | None = None) -> CountReport:
    """Compare the three independent counts over a grid of ``(p, t0, t1)``.

    Grid points may be evaluated in parallel (``ATLAS_WORKERS`` caps the pool);
    rows are sorted by key, so the report does not depend on scheduling.
    """
    ts = list(t_range)
    keys = [(p, t0, t1) for p in p_range for t0 in ts for t1 in ts]
    workers = default_workers() if workers is None else max(1, workers)
    if workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_count_row, keys, chunksize=32))
    else:
        rows = [_count_row(k) for k in keys]
    return CountReport(tuple(sorted(rows)))
