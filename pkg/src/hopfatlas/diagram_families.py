"""Explicit surgery diagrams realising the Hopf link cases.

Each constructor takes a :class:`FamilySpec` and returns a
:class:`FamilyDiagram`, which unpacks as ``(diagram, L0, L1)``. The link
components are described by their tb, rot and linking numbers with the
surgery knots, and the diagram also records ``lk(L0, L1)`` in the three-sphere
so that the rational linking number (and hence positivity) can be checked.

Building blocks used below:

* a *stack*: Legendrian unknots with tb = -1 that are pairwise linked -1,
  i.e. successive push-offs of one unknot;
* a *chain*: knots clasped in a row, consecutive ones linked +1;
* a *push-off* of a surgery knot: a parallel copy, linking it tb times and
  every other knot as it does.

The second-case family (one component with twisting zero) has no constructor
for ``t1 = 1``; that realisation is only known through contact cuts and its
invariants live in :mod:`hopfatlas.hopf_atlas` as closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import DomainError
from .hopf_atlas import Realization, canonical_case, classify
from .surgery_diagram import (
    LinkComponent,
    SurgeryDiagram,
    SurgeryKnot,
    d3_invariant,
    rational_linking,
    rot_rational,
    tb_rational,
)

__all__ = [
    "FAMILY_CASES",
    "FamilySpec",
    "FamilyDiagram",
    "build",
    "build_case_a",
    "build_case_b",
    "build_case_c2",
    "build_case_c3",
    "build_case_d1",
    "build_case_d2",
    "build_case_d3",
    "build_case_e1",
    "build_case_e2",
    "family_specs",
    "closed_form",
]

SIGNED = ("+", "-")
C2_VARIANTS = ("left+", "left-", "right")
AB_VARIANTS = ("A+", "A-", "B+", "B-")


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one diagram in a family.

    ``k, l`` are exterior cusp counts of the surgery knot in case ``a`` and
    stabilisation counts of ``L1`` in case ``b``; ``k0, l0, k1, l1`` are the
    cusp counts of the components in case ``a``. ``r`` is the rotation
    number of the distinguished surgery knot and ``r0`` that of ``L0``.
    ``variant`` selects among sign choices and sub-families.
    """

    case: str
    p: int
    t0: int | None = None
    t1: int | None = None
    k: int | None = None
    l: int | None = None
    k0: int | None = None
    l0: int | None = None
    k1: int | None = None
    l1: int | None = None
    r: int | None = None
    r0: int | None = None
    variant: str | None = None


@dataclass(frozen=True)
class FamilyDiagram:
    spec: FamilySpec
    diagram: SurgeryDiagram
    l0: LinkComponent
    l1: LinkComponent
    lk01: int

    def __iter__(self):
        return iter((self.diagram, self.l0, self.l1))

    def rational_linking(self) -> Fraction:
        return rational_linking(self.diagram, self.l0, self.l1, self.lk01)

    @property
    def positive(self) -> bool:
        """Whether the two components form a positive Hopf link (lk_Q = +1/p)."""
        return self.rational_linking() == Fraction(1, self.spec.p)

    def invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        D = self.diagram
        return (
            tb_rational(D, self.l0),
            rot_rational(D, self.l0),
            tb_rational(D, self.l1),
            rot_rational(D, self.l1),
            d3_invariant(D).d3,
        )


class _Builder:
    def __init__(self):
        self.knots: list[SurgeryKnot] = []
        self.lk: dict[tuple[int, int], int] = {}

    def knot(self, tb: int, rot: int, sign: int) -> int:
        self.knots.append(SurgeryKnot(tb, rot, sign))
        return len(self.knots) - 1

    def link(self, i: int, j: int, v: int):
        self.lk[(min(i, j), max(i, j))] = v

    def stack(self, count: int, extra: list[int] = ()) -> list[int]:
        """``count`` tb = -1 unknots linked -1 with each other and with ``extra``."""
        idx = [self.knot(-1, 0, 1) for _ in range(count)]
        members = list(extra) + idx
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                self.link(members[a], members[b], -1)
        return idx

    def chain(self, idx: list[int]):
        for a, b in zip(idx, idx[1:]):
            self.link(a, b, 1)

    def row(self, i: int) -> list[int]:
        return [self.lk.get((min(i, j), max(i, j)), 0) for j in range(len(self.knots))]

    def pushoff(self, i: int, name: str, reverse: bool = False) -> LinkComponent:
        links = self.row(i)
        links[i] = self.knots[i].tb
        rot = self.knots[i].rot
        c = LinkComponent(self.knots[i].tb, rot, tuple(links), name)
        return c.reversed() if reverse else c

    def component(self, tb: int, rot: int, links: dict[int, int], name: str) -> LinkComponent:
        vec = [links.get(j, 0) for j in range(len(self.knots))]
        return LinkComponent(tb, rot, tuple(vec), name)

    def finish(self, spec: FamilySpec, l0: LinkComponent, l1: LinkComponent, lk01: int) -> FamilyDiagram:
        n = len(self.knots)
        off = [self.row(i) for i in range(n)]
        D = SurgeryDiagram(tuple(self.knots), off, (l0, l1), family=spec.case)
        return FamilyDiagram(spec, D, l0, l1, lk01)


def _need(spec: FamilySpec, *names: str):
    missing = [n for n in names if getattr(spec, n) is None]
    if missing:
        raise DomainError(f"case {spec.case} needs parameters: {', '.join(missing)}")
    if spec.p < 2:
        raise DomainError(f"p must be at least 2, got {spec.p}")


def _check(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _in_steps(v: int, lo: int, hi: int) -> bool:
    return lo <= v <= hi and (v - lo) % 2 == 0


def _variant(spec: FamilySpec, allowed: tuple[str, ...]) -> str:
    _check(spec.variant in allowed, f"case {spec.case}: variant must be one of {allowed}, got {spec.variant!r}")
    return spec.variant


def build_case_a(spec: FamilySpec) -> FamilyDiagram:
    """One surgery knot with contact coefficient -1 and two meridional unknots.

    ``k + l = p`` exterior cusps on the surgery knot, ``k_i + l_i = 1 - t_i``
    on component ``i``; every cusp count is at least one.
    """
    _need(spec, "k", "l", "k0", "l0", "k1", "l1")
    p = spec.p
    _check(min(spec.k, spec.l, spec.k0, spec.l0, spec.k1, spec.l1) >= 1, "cusp counts must be positive")
    _check(spec.k + spec.l == p, f"k + l must equal p = {p}")
    t0 = 1 - spec.k0 - spec.l0
    t1 = 1 - spec.k1 - spec.l1
    _check(spec.t0 in (None, t0) and spec.t1 in (None, t1), "t_i disagree with the cusp counts")
    b = _Builder()
    K = b.knot(1 - p, spec.l - spec.k, -1)
    # K is oriented against the components, so each links it -1
    L0 = b.component(t0, spec.l0 - spec.k0, {K: -1}, "L0")
    L1 = b.component(t1, spec.l1 - spec.k1, {K: -1}, "L1")
    return b.finish(spec, L0, L1, 0)


def build_case_b(spec: FamilySpec) -> FamilyDiagram:
    """``p + 1`` stacked unknots with coefficient +1; ``L1`` is stabilised ``k + l = -t1`` times."""
    _need(spec, "k", "l")
    p = spec.p
    _check(spec.k >= 0 and spec.l >= 0, "stabilisation counts must be non-negative")
    t1 = -(spec.k + spec.l)
    _check(spec.t1 in (None, t1), "t1 must equal -(k + l)")
    b = _Builder()
    stack = b.stack(p + 1)
    L0 = b.pushoff(stack[0], "L0")
    L1 = b.component(t1 - 1, spec.l - spec.k, {j: -1 for j in stack}, "L1")
    return b.finish(spec, L0, L1, -1)


def build_case_c2(spec: FamilySpec) -> FamilyDiagram:
    """A tb = -3 knot stacked with ``p + 2`` unknots; ``L1`` is its reversed push-off."""
    p = spec.p
    _need(spec)
    rho = {"left+": 2, "left-": -2, "right": 0}[_variant(spec, C2_VARIANTS)]
    b = _Builder()
    T = b.knot(-3, rho, 1)
    stack = b.stack(p + 2, extra=[T])
    L0 = b.component(-1, 0, {j: -1 for j in [T] + stack}, "L0")
    L1 = b.pushoff(T, "L1", reverse=True)
    return b.finish(spec, L0, L1, 1)


def _shark_chain(spec: FamilySpec, b: _Builder, t_rot: int, length: int, end: tuple[int, int]) -> tuple[int, int]:
    """Chain ``T - X x length - E`` with T a tb = -2 knot of coefficient +1.

    The ``X`` are tb = -1 unknots and ``E = (tb, rot)``; both have coefficient
    -1. Returns the indices of ``T`` and ``E``.
    """
    T = b.knot(-2, t_rot, 1)
    mids = [b.knot(-1, 0, -1) for _ in range(length)]
    E = b.knot(end[0], end[1], -1)
    b.chain([T] + mids + [E])
    return T, E


def _clasp_stack(b: _Builder, E: int, count: int) -> list[int]:
    stack = b.stack(count)
    for j in stack:
        b.link(E, j, 1)
    return stack


def build_case_c3(spec: FamilySpec) -> FamilyDiagram:
    """Shark chain of length ``t1 - 3`` ending in a tb = -2 knot clasped by ``p + 2`` unknots."""
    _need(spec, "t1")
    p, t1 = spec.p, spec.t1
    _check(t1 > 2, "case c3 needs t1 > 2")
    v = _variant(spec, AB_VARIANTS)
    s = 1 if v[1] == "+" else -1
    end_rot = s if v[0] == "A" else -s
    b = _Builder()
    T, E = _shark_chain(spec, b, -s, t1 - 3, (-2, end_rot))
    stack = _clasp_stack(b, E, p + 2)
    L0 = b.component(-1, 0, {E: 1, **{j: -1 for j in stack}}, "L0")
    L1 = b.pushoff(T, "L1")
    return b.finish(spec, L0, L1, 0)


def build_case_d1(spec: FamilySpec) -> FamilyDiagram:
    """A tb = -p-3 knot of rotation ``r`` stacked with two unknots."""
    _need(spec, "r")
    p, r = spec.p, spec.r
    _check(_in_steps(r, -p - 2, p + 2), f"case d1 needs r in {{-p-2, ..., p+2}} step 2, got {r}")
    b = _Builder()
    T = b.knot(-p - 3, r, 1)
    stack = b.stack(2, extra=[T])
    L0 = b.component(-1, 0, {j: -1 for j in [T] + stack}, "L0")
    L1 = b.pushoff(T, "L1", reverse=True)
    return b.finish(spec, L0, L1, 1)


def build_case_d2(spec: FamilySpec) -> FamilyDiagram:
    """Shark chain of length ``t1 - 2`` ending in a tb = -p-2 knot clasped by two unknots."""
    _need(spec, "t1", "r")
    p, t1, r = spec.p, spec.t1, spec.r
    _check(t1 > 1, "case d2 needs t1 > 1")
    _check(_in_steps(r, -p - 1, p + 1), f"case d2 needs r in {{-p-1, ..., p+1}} step 2, got {r}")
    s = 1 if _variant(spec, SIGNED) == "+" else -1
    b = _Builder()
    T, E = _shark_chain(spec, b, -s, t1 - 2, (-p - 2, s * r))
    stack = _clasp_stack(b, E, 2)
    L0 = b.component(-1, 0, {E: 1, **{j: -1 for j in stack}}, "L0")
    L1 = b.pushoff(T, "L1")
    return b.finish(spec, L0, L1, 0)


# (rotation of the end knot next to L0, rotation of the end knot next to L1)
_D3_ENDS = {"A+": (-1, -1), "A-": (1, 1), "B+": (-1, 1), "B-": (1, -1)}


def build_case_d3(spec: FamilySpec) -> FamilyDiagram:
    """Chain ``T1 - X x (t1-2) - Y - X x (t0-2) - T0`` with ``Y`` of tb = -p-1."""
    _need(spec, "t0", "t1", "r")
    p, t0, t1, r = spec.p, spec.t0, spec.t1, spec.r
    _check(t0 > 1 and t1 > 1, "case d3 needs t0, t1 > 1")
    _check(_in_steps(r, -p, p), f"case d3 needs r in {{-p, ..., p}} step 2, got {r}")
    a0, a1 = _D3_ENDS[_variant(spec, AB_VARIANTS)]
    s = 1 if spec.variant[1] == "+" else -1
    # in the second sub-family the table's r is minus the rotation of Y
    y_rot = s * r if spec.variant[0] == "A" else -s * r
    b = _Builder()
    T1 = b.knot(-2, a1, 1)
    upper = [b.knot(-1, 0, -1) for _ in range(t1 - 2)]
    Y = b.knot(-p - 1, y_rot, -1)
    lower = [b.knot(-1, 0, -1) for _ in range(t0 - 2)]
    T0 = b.knot(-2, a0, 1)
    b.chain([T1] + upper + [Y] + lower + [T0])
    L0 = b.pushoff(T0, "L0")
    L1 = b.pushoff(T1, "L1")
    return b.finish(spec, L0, L1, 0)


def _check_r0(spec: FamilySpec):
    t0, r0 = spec.t0, spec.r0
    _check(t0 < 0, "case e needs t0 < 0")
    _check(_in_steps(r0, t0 + 1, -t0 - 1), f"r0 must lie in {{t0+1, ..., -t0-1}} step 2, got {r0}")


def build_case_e1(spec: FamilySpec) -> FamilyDiagram:
    """``t1 = 1``: one tb = -p-1 knot of coefficient +1, ``L1`` its push-off."""
    _need(spec, "t0", "r", "r0")
    p, r = spec.p, spec.r
    _check(spec.t1 in (None, 1), "case e1 has t1 = 1")
    _check(_in_steps(r, -p, p), f"case e1 needs r in {{-p, ..., p}} step 2, got {r}")
    _check_r0(spec)
    b = _Builder()
    K = b.knot(-p - 1, r, 1)
    L0 = b.component(spec.t0, spec.r0, {K: -1}, "L0")
    L1 = b.pushoff(K, "L1")
    return b.finish(spec, L0, L1, -1)


def build_case_e2(spec: FamilySpec) -> FamilyDiagram:
    """``t1 > 1``: chain ``K - X x (t1-2) - T``; ``L0`` clasps ``K``, ``L1`` is a push-off of ``T``."""
    _need(spec, "t0", "t1", "r", "r0")
    p, t1, r = spec.p, spec.t1, spec.r
    _check(t1 > 1, "case e2 needs t1 > 1")
    _check(_in_steps(r, -p + 1, p - 1), f"case e2 needs r in {{-p+1, ..., p-1}} step 2, got {r}")
    _check_r0(spec)
    s = 1 if _variant(spec, SIGNED) == "+" else -1
    b = _Builder()
    K = b.knot(-p, s * r, -1)
    mids = [b.knot(-1, 0, -1) for _ in range(t1 - 2)]
    T = b.knot(-2, -s, 1)
    b.chain([K] + mids + [T])
    L0 = b.component(spec.t0, s * spec.r0, {K: -1}, "L0")
    L1 = b.pushoff(T, "L1")
    return b.finish(spec, L0, L1, 0)


BUILDERS: dict[str, Callable[[FamilySpec], FamilyDiagram]] = {
    "a": build_case_a,
    "b": build_case_b,
    "c2": build_case_c2,
    "c3": build_case_c3,
    "d1": build_case_d1,
    "d2": build_case_d2,
    "d3": build_case_d3,
    "e1": build_case_e1,
    "e2": build_case_e2,
}
FAMILY_CASES = tuple(BUILDERS)

# family name -> case tag used by the classification
CASE_TAG = {
    "a": "a", "b": "b", "c2": "c2", "c3": "c3", "d1": "d1", "d2": "d2", "d3": "d3",
    "e1": "e_t1eq1", "e2": "e_t1gt1",
}


def build(spec: FamilySpec) -> FamilyDiagram:
    try:
        builder = BUILDERS[spec.case]
    except KeyError:
        raise DomainError(f"no diagram family for case {spec.case!r}") from None
    return builder(spec)


def family_specs(case: str, p: int, t0: int | None = None, t1: int | None = None) -> Iterator[FamilySpec]:
    """Every parameter choice of a family for fixed ``p`` and twisting numbers."""
    if case == "a":
        _check(t0 is not None and t1 is not None and t0 < 0 and t1 < 0, "case a needs t0, t1 < 0")
        for k in range(1, p):
            for k0 in range(1, 1 - t0):
                for k1 in range(1, 1 - t1):
                    yield FamilySpec("a", p, t0, t1, k=k, l=p - k, k0=k0, l0=1 - t0 - k0, k1=k1, l1=1 - t1 - k1)
    elif case == "b":
        _check(t1 is not None and t1 <= 0, "case b needs t1 <= 0")
        for k in range(0, -t1 + 1):
            yield FamilySpec("b", p, 0, t1, k=k, l=-t1 - k)
    elif case == "c2":
        for v in C2_VARIANTS:
            yield FamilySpec("c2", p, 0, 2, variant=v)
    elif case == "c3":
        _check(t1 is not None and t1 > 2, "case c3 needs t1 > 2")
        for v in AB_VARIANTS:
            yield FamilySpec("c3", p, 0, t1, variant=v)
    elif case == "d1":
        for r in range(-p - 2, p + 3, 2):
            yield FamilySpec("d1", p, 1, 1, r=r)
    elif case == "d2":
        _check(t1 is not None and t1 > 1, "case d2 needs t1 > 1")
        for r in range(-p - 1, p + 2, 2):
            for v in SIGNED:
                yield FamilySpec("d2", p, 1, t1, r=r, variant=v)
    elif case == "d3":
        _check(t0 is not None and t1 is not None and t0 > 1 and t1 > 1, "case d3 needs t0, t1 > 1")
        for r in range(-p, p + 1, 2):
            for v in AB_VARIANTS:
                yield FamilySpec("d3", p, t0, t1, r=r, variant=v)
    elif case == "e1":
        _check(t0 is not None and t0 < 0, "case e1 needs t0 < 0")
        for r in range(-p, p + 1, 2):
            for r0 in range(t0 + 1, -t0, 2):
                yield FamilySpec("e1", p, t0, 1, r=r, r0=r0)
    elif case == "e2":
        _check(t0 is not None and t1 is not None and t0 < 0 and t1 > 1, "case e2 needs t0 < 0 < 1 < t1")
        for r in range(-p + 1, p, 2):
            for r0 in range(t0 + 1, -t0, 2):
                for v in SIGNED:
                    yield FamilySpec("e2", p, t0, t1, r=r, r0=r0, variant=v)
    else:
        raise DomainError(f"no diagram family for case {case!r}")


def closed_form(spec: FamilySpec) -> Realization:
    """The classification entry that a family diagram with these parameters realises."""
    t0 = spec.t0 if spec.t0 is not None else _default_t(spec, 0)
    t1 = spec.t1 if spec.t1 is not None else _default_t(spec, 1)
    tag, swapped = canonical_case(t0, t1)
    _check(not swapped and tag == CASE_TAG[spec.case], f"({t0}, {t1}) is not in case {spec.case}")
    want = _expected_labels(spec)
    hits = [x for x in classify(spec.p, t0, t1) if _labels(x) == want]
    _check(len(hits) == 1, f"no unique classification entry for {spec}")
    return hits[0]


def _default_t(spec: FamilySpec, i: int) -> int:
    case = spec.case
    if case == "a":
        return 1 - (spec.k0 + spec.l0 if i == 0 else spec.k1 + spec.l1)
    if case == "b":
        return 0 if i == 0 else -(spec.k + spec.l)
    fixed = {"c2": (0, 2), "c3": (0, None), "d1": (1, 1), "d2": (1, None), "e1": (None, 1)}
    if case in fixed and fixed[case][i] is not None:
        return fixed[case][i]
    raise DomainError(f"case {case} needs t{i}")


def _labels(x: Realization) -> tuple:
    return (x.r, x.r0, x.r1, x.variant)


def _expected_labels(spec: FamilySpec) -> tuple:
    case = spec.case
    if case == "a":
        return (spec.l - spec.k, spec.l0 - spec.k0, spec.l1 - spec.k1, "")
    if case == "b":
        t1 = -(spec.k + spec.l)
        return (None, None, spec.l - spec.k, "degenerate" if t1 == 0 else "")
    if case == "c2":
        return (None, None, None, {"left+": "+", "left-": "-", "right": "0"}[spec.variant])
    if case == "c3":
        return (None, None, None, spec.variant)
    if case == "d1":
        return (spec.r, None, None, "")
    if case in ("d2", "d3"):
        return (spec.r, None, None, spec.variant)
    if case == "e1":
        return (spec.r, spec.r0, None, "")
    return (spec.r, spec.r0, None, spec.variant)
