"""Exact invariants, counts and realisations of Legendrian Hopf links in L(p,1)."""

from .errors import (
    AtlasError,
    DiagramFormatError,
    DomainError,
    MathPreconditionError,
    NotSymmetricError,
    SingularMatrixError,
)
from .exact_linalg import det, signature, solve
from .slope_calculus import (
    NcfExpansion,
    Slope,
    Unimodular2x2,
    count_tight,
    honda_count,
    ncf_eval,
    ncf_expand,
    normalize_slopes,
    closed_form_count,
    prop2_count,
    stabilizer_shift,
)
from .surgery_diagram import (
    D3Breakdown,
    LinkComponent,
    SurgeryDiagram,
    SurgeryKnot,
    d3_invariant,
    extended_matrix,
    homology_order,
    linking_matrix,
    rot_rational,
    tb_rational,
)
from .hopf_atlas import Realization, classify, exceptional_unknot_rots, looseness_hint, verify_counts
from .diagram_families import FamilySpec, build

__version__ = "0.1.0"
