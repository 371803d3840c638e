"""Contact (+-1)-surgery diagrams and the rational classical invariants.

A diagram is a list of Legendrian surgery knots in the standard contact
three-sphere, each with a contact surgery coefficient of +1 or -1, together
with their pairwise linking numbers. A Legendrian link component sitting in
the diagram is recorded by its own tb, rot and its linking numbers with the
surgery knots. Orientations are not modelled geometrically; they are carried
by the signs of rot and of the linking numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import exact_linalg as la
from .errors import DiagramFormatError, DomainError, SingularMatrixError

__all__ = [
    "SurgeryKnot",
    "SurgeryDiagram",
    "LinkComponent",
    "D3Breakdown",
    "linking_matrix",
    "extended_matrix",
    "tb_rational",
    "rot_rational",
    "rational_linking",
    "d3_invariant",
    "homology_order",
    "diagram_to_dict",
    "diagram_from_dict",
    "dumps_diagram",
    "loads_diagram",
]


@dataclass(frozen=True)
class SurgeryKnot:
    tb: int
    rot: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"contact surgery coefficient must be +1 or -1, got {self.sign}")
        if (self.tb + self.rot) % 2 == 0:
            # tb + rot is odd for every Legendrian knot in the standard sphere
            raise DomainError(f"tb={self.tb}, rot={self.rot} have the same parity")

    @property
    def framing(self) -> int:
        """Topological surgery framing ``tb + sign``."""
        return self.tb + self.sign


@dataclass(frozen=True)
class LinkComponent:
    tb: int
    rot: int
    links: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(int(v) for v in self.links))

    def reversed(self) -> "LinkComponent":
        return LinkComponent(self.tb, -self.rot, tuple(-v for v in self.links), self.name)


@dataclass(frozen=True)
class SurgeryDiagram:
    """Surgery knots plus the symmetric matrix of their pairwise linking numbers.

    ``offdiag`` is a full ``n x n`` matrix whose diagonal is ignored (and
    stored as zero). ``family`` names the constructor that produced the
    diagram, or is ``None`` for diagrams supplied from outside.
    """

    knots: tuple[SurgeryKnot, ...] = ()
    offdiag: tuple[tuple[int, ...], ...] = ()
    components: tuple[LinkComponent, ...] = ()
    family: str | None = None

    def __post_init__(self):
        knots = tuple(self.knots)
        n = len(knots)
        rows = tuple(tuple(int(v) for v in row) for row in self.offdiag)
        if n == 0 and not rows:
            rows = ()
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DiagramFormatError(f"offdiag must be {n}x{n} for {n} knots")
        rows = tuple(tuple(0 if i == j else rows[i][j] for j in range(n)) for i in range(n))
        if not la.is_symmetric(rows):
            raise DiagramFormatError("offdiag is not symmetric")
        comps = tuple(self.components)
        for c in comps:
            if len(c.links) != n:
                raise DiagramFormatError(
                    f"component {c.name or '?'} has {len(c.links)} linking numbers, expected {n}"
                )
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "offdiag", rows)
        object.__setattr__(self, "components", comps)

    @property
    def size(self) -> int:
        return len(self.knots)

    @property
    def rot_vector(self) -> tuple[int, ...]:
        return tuple(k.rot for k in self.knots)

    def with_components(self, *components: LinkComponent) -> "SurgeryDiagram":
        return SurgeryDiagram(self.knots, self.offdiag, components, self.family)

    def reoriented(self, j: int) -> "SurgeryDiagram":
        """Reverse surgery knot ``j``: negates its rot and every linking number with it."""
        knots = list(self.knots)
        k = knots[j]
        knots[j] = SurgeryKnot(k.tb, -k.rot, k.sign)
        flip = [-1 if i == j else 1 for i in range(self.size)]
        off = [[self.offdiag[a][b] * flip[a] * flip[b] for b in range(self.size)] for a in range(self.size)]
        comps = [
            LinkComponent(c.tb, c.rot, tuple(v * f for v, f in zip(c.links, flip)), c.name)
            for c in self.components
        ]
        return SurgeryDiagram(tuple(knots), off, tuple(comps), self.family)

    def permuted(self, perm: Sequence[int]) -> "SurgeryDiagram":
        """Reorder the knots so that new knot ``i`` is old knot ``perm[i]``."""
        knots = tuple(self.knots[i] for i in perm)
        off = tuple(tuple(self.offdiag[i][j] for j in perm) for i in perm)
        comps = tuple(
            LinkComponent(c.tb, c.rot, tuple(c.links[i] for i in perm), c.name) for c in self.components
        )
        return SurgeryDiagram(knots, off, comps, self.family)


@dataclass(frozen=True)
class D3Breakdown:
    c_squared: Fraction
    sigma: int
    chi: int
    q: int
    d3: Fraction
    # set when the diagram did not come from a known family, so the torsion
    # hypothesis behind the formula has not been checked
    unchecked_hypothesis: bool = field(default=False)


def linking_matrix(D: SurgeryDiagram) -> tuple[tuple[int, ...], ...]:
    n = D.size
    return tuple(
        tuple(D.knots[i].framing if i == j else D.offdiag[i][j] for j in range(n)) for i in range(n)
    )


def extended_matrix(D: SurgeryDiagram, L: LinkComponent) -> tuple[tuple[int, ...], ...]:
    """Linking matrix bordered by a zero corner and the component's linking numbers."""
    _check_links(D, L)
    M = linking_matrix(D)
    top = (0,) + L.links
    return (top,) + tuple((L.links[i],) + M[i] for i in range(D.size))


def _check_links(D: SurgeryDiagram, L: LinkComponent):
    if len(L.links) != D.size:
        raise DiagramFormatError(f"component has {len(L.links)} linking numbers, diagram has {D.size} knots")


def _nonsingular(M) -> int:
    d = la.det(M)
    if d == 0:
        raise SingularMatrixError("linking matrix is singular: surgery does not give a rational homology sphere")
    return d


def tb_rational(D: SurgeryDiagram, L: LinkComponent) -> Fraction:
    """``tb + det(extended matrix) / det(linking matrix)``."""
    d = _nonsingular(linking_matrix(D))
    return L.tb + Fraction(la.det(extended_matrix(D, L)), d)


def rot_rational(D: SurgeryDiagram, L: LinkComponent) -> Fraction:
    """``rot - <rot vector, M^{-1} links>``."""
    _check_links(D, L)
    M = linking_matrix(D)
    _nonsingular(M)
    if D.size == 0:
        return Fraction(L.rot)
    x = la.solve(M, L.links)
    return L.rot - sum((r * xi for r, xi in zip(D.rot_vector, x)), Fraction(0))


def rational_linking(D: SurgeryDiagram, L0: LinkComponent, L1: LinkComponent, lk01: int) -> Fraction:
    """Rational linking number of two components after surgery.

    ``lk01`` is their linking number in the three-sphere before surgery.
    """
    _check_links(D, L0)
    _check_links(D, L1)
    M = linking_matrix(D)
    _nonsingular(M)
    if D.size == 0:
        return Fraction(lk01)
    x = la.solve(M, L1.links)
    return lk01 - sum((a * b for a, b in zip(L0.links, x)), Fraction(0))


def d3_invariant(D: SurgeryDiagram) -> D3Breakdown:
    M = linking_matrix(D)
    _nonsingular(M)
    rot = D.rot_vector
    if D.size:
        x = la.solve(M, rot)
        c2 = sum((a * b for a, b in zip(x, rot)), Fraction(0))
    else:
        c2 = Fraction(0)
    sigma = la.signature(M)
    chi = 1 + D.size
    q = sum(1 for k in D.knots if k.sign == 1)
    d3 = (c2 - 3 * sigma - 2 * chi) / 4 + q
    return D3Breakdown(c2, sigma, chi, q, d3, unchecked_hypothesis=D.family is None)


def homology_order(D: SurgeryDiagram) -> int:
    return abs(la.det(linking_matrix(D)))


# JSON diagram format


def diagram_to_dict(D: SurgeryDiagram) -> dict[str, Any]:
    return {
        "knots": [{"tb": k.tb, "rot": k.rot, "sign": k.sign} for k in D.knots],
        "offdiag": [list(row) for row in D.offdiag],
        "components": [
            {"name": c.name, "tb": c.tb, "rot": c.rot, "links": list(c.links)} for c in D.components
        ],
    }


def _int(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise DiagramFormatError(f"{where}: missing field '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise DiagramFormatError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def _int_list(v: Any, where: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(e, bool) or not isinstance(e, int) for e in v):
        raise DiagramFormatError(f"{where}: expected a list of integers")
    return v


def diagram_from_dict(data: Any) -> SurgeryDiagram:
    if not isinstance(data, dict):
        raise DiagramFormatError("top level must be an object")
    knots_raw = data.get("knots", [])
    if not isinstance(knots_raw, list):
        raise DiagramFormatError("knots: expected a list")
    knots = []
    for i, k in enumerate(knots_raw):
        where = f"knots[{i}]"
        if not isinstance(k, dict):
            raise DiagramFormatError(f"{where}: expected an object")
        try:
            knots.append(SurgeryKnot(_int(k, "tb", where), _int(k, "rot", where), _int(k, "sign", where)))
        except DomainError as exc:
            raise DiagramFormatError(f"{where}: {exc}") from None
    off_raw = data.get("offdiag", [])
    if not isinstance(off_raw, list):
        raise DiagramFormatError("offdiag: expected a list of rows")
    offdiag = [_int_list(row, f"offdiag[{i}]") for i, row in enumerate(off_raw)]
    comps = []
    comps_raw = data.get("components", [])
    if not isinstance(comps_raw, list):
        raise DiagramFormatError("components: expected a list")
    for i, c in enumerate(comps_raw):
        where = f"components[{i}]"
        if not isinstance(c, dict):
            raise DiagramFormatError(f"{where}: expected an object")
        name = c.get("name", f"L{i}")
        if not isinstance(name, str):
            raise DiagramFormatError(f"{where}.name: expected a string")
        links = _int_list(c.get("links"), f"{where}.links")
        comps.append(LinkComponent(_int(c, "tb", where), _int(c, "rot", where), tuple(links), name))
    return SurgeryDiagram(tuple(knots), offdiag, tuple(comps))


def dumps_diagram(D: SurgeryDiagram) -> str:
    return json.dumps(diagram_to_dict(D), indent=2) + "\n"


def loads_diagram(text: str) -> SurgeryDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return diagram_from_dict(data)
