"""Element absorb topologies on finite rings.

Given a finite ring ``R`` and an element ``a``, the open sets are the
subsets ``I`` with ``I*a`` inside ``I``. The package builds rings, computes
the topology through orbits of ``x -> x*a``, cross-checks it against
exhaustive enumeration, and audits known statements about it.
"""

from .errors import (
    AbsorbTopError,
    EngineInvariantError,
    InvalidCoverError,
    InvalidOrderError,
    NotIdempotentError,
    OracleTooLargeError,
    RingAxiomError,
    RingTooLargeError,
    SpecParseError,
    UnknownClaimError,
)
from .ring import (
    FiniteRing,
    IdempotentSet,
    PierceSplit,
    build_from_tables,
    build_matrix_ring,
    build_product,
    build_upper_triangular,
    build_zn,
    idempotents,
    left_set,
    pierce_decompose,
    right_set,
)
from .specs import build_ring, parse_shorthand
from .subsets import SubsetMask
from .topology import ActionSide, OrbitSet, TopologySpace

__version__ = "0.1.0"
