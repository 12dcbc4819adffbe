"""Desk-scale certification of CW posets.

Finite graded posets, order complexes and face posets, Moebius/Eulerian/
thinness invariants, exact integral homology via Smith normal form,
shelling search, and a rank-recursive sphere certifier.
"""

from .certify import (
    CERTIFIED_SPHERE,
    Certificate,
    FAILED as CERT_FAILED,
    HOMOLOGY_SPHERE_ONLY,
    IntervalCertificate,
    ROUTE_DANARAJ_KLEE,
    ROUTE_LINK_JOIN,
    ROUTE_LOW_DIM,
    cw_certify,
    sphere_recognize_lowdim,
)
from .complexes import (
    ComplexError,
    NotAFace,
    NotPure,
    SimplicialComplex,
    are_isomorphic,
    barycentric_subdivision,
    complex_from_doc,
    complex_to_doc,
    face_label,
    face_poset,
    is_connected,
    is_pseudomanifold,
    is_pure,
    join,
    link,
    order_complex,
    same_face_sets,
)
from .generators import (
    NamedTriangulation,
    OutOfRange,
    UnknownName,
    boolean_lattice,
    bruhat_interval,
    crosspolytope_face_poset,
    named_triangulation,
)
from .homology import (
    ChainComplex,
    DimensionMismatch,
    HomologyGroups,
    NON_ORIENTABLE,
    NOT_PSEUDOMANIFOLD,
    ORIENTABLE,
    PI1_TRIVIAL,
    PI1_UNKNOWN,
    SnfResult,
    chain_complex,
    invariant_factors,
    is_homology_cm,
    is_homology_sphere,
    orientability_class,
    pi1_triviality,
    reduced_homology,
    smith_normal_form,
)
from .invariants import (
    MissingBounds,
    MobiusTable,
    hall_identity_violations,
    is_eulerian,
    is_thin,
    mobius,
    reduced_euler_characteristic,
)
from .poset import (
    CycleDetected,
    IntervalSpec,
    NonCoverEdge,
    NotComparable,
    NotGraded,
    Poset,
    PosetError,
    build_poset,
    induced_subposet,
    interval,
    poset_from_doc,
    poset_to_doc,
    product,
)
from .shelling import (
    DanarajKleeReport,
    NotAPermutation,
    ShellingSearch,
    ShellingVerdict,
    danaraj_klee_check,
    find_shelling,
    verify_shelling,
)

__version__ = "0.1.0"
