"""Exact quasi-isometry invariants of nonpolycyclic nilpotent-by-cyclic groups.

Every function takes a path to an algebra/endomorphism document (see the
README for the JSON schema) and returns the parsed report as plain Python
data. The heavy lifting is exact rational and real-algebraic arithmetic in
the C++ core.
"""

import json as _json

from nbcqi import _core
from nbcqi._core import (  # noqa: F401  (re-exported exception types)
    AssumptionViolationError,
    DocumentError,
    NbcqiError,
    UnsupportedEigenvalueError,
)

__all__ = [
    "validate",
    "weights",
    "jordan",
    "pajf",
    "rates",
    "growth",
    "standing_assumptions",
    "compare",
    "oracle",
    "AssumptionViolationError",
    "DocumentError",
    "NbcqiError",
    "UnsupportedEigenvalueError",
]


def validate(path):
    """Antisymmetry / Jacobi / triangularity report for a document."""
    return _json.loads(_core.validate_json(str(path)))


def weights(path):
    """Weight vector, grade dimensions and Carnot certificate."""
    return _json.loads(_core.weights_json(str(path)))


def jordan(path, endo):
    """Exact Jordan block structure and absolute Jordan form."""
    return _json.loads(_core.jordan_json(str(path), endo))


def pajf(path, endo, weight_order="asc"):
    """Permuted absolute Jordan form (blocks, sigma, matrix)."""
    return _json.loads(_core.pajf_json(str(path), endo, weight_order))


def rates(path, endo, direction="fwd"):
    """Divergence-rate multiset of the adapted basis directions."""
    return _json.loads(_core.rates_json(str(path), endo, direction))


def growth(path, endo):
    """Growth-space filtration with subalgebra fingerprints."""
    return _json.loads(_core.growth_json(str(path), endo))


def standing_assumptions(path, endo):
    """Homomorphism / injectivity / nonsurjectivity / unipotent-free / Carnot."""
    return _json.loads(_core.assumptions_json(str(path), endo))


def compare(path_a, endo_a, path_b, endo_b, power_bound=12):
    """Classify two endomorphisms: quasi_isometric / not_quasi_isometric / unknown."""
    return _json.loads(_core.compare_json(str(path_a), endo_a, str(path_b), endo_b, power_bound))


def oracle(path, endo, direction="fwd", t_min=10, t_max=40, seed=0):
    """Numeric flow-line validation of every symbolic rate."""
    return _json.loads(_core.oracle_json(str(path), endo, direction, t_min, t_max, seed))
