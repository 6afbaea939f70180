"""Orthogonality diagrams (quantum logics): two-valued states, partition
logics, exact polytope facets, Born-rule probabilities and correlation scans."""

from .correlations import correlation_polytope, scan
from .fixtures import FIXTURES, get_fixture
from .geometry import (
    HPolytope,
    Inequality,
    Verdict,
    VPolytope,
    evaluate,
    hull,
    parse_inequality,
    verify_inequality,
    vertex_enumerate,
)
from .logic import Logic, detect_loops, horizontal_pasting, parse_logic, serialize_logic
from .quantum import Realization, born, is_frame_function, parse_realization, validate_realization
from .states import classify, enumerate_states, mix, partition_logic, symbolic_mix

__version__ = "0.1.0"
