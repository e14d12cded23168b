"""Forest-plus-matching decompositions of graphs embedded on surfaces of
nonnegative Euler characteristic: embeddings, structure tests, exact and
constructive decomposers, and exact discharging audits."""

__version__ = "0.1.0"

from .decomposition import (DecompositionError, OracleBudgetExceeded, OrientedDecomposition,
                            Violation, defective_coloring, degeneracy_order, oracle_decide,
                            verify)
from .discharging import RULESETS, apply_rules, audit, initial_charges
from .embedding import (Dart, EmbeddingError, RotationGraph, euler_characteristic,
                        remove_vertices, trace_faces)
from .formats import (FormatError, parse_decomposition, parse_rotation_graph,
                      serialize_decomposition, serialize_rotation_graph)
from .generators import generate
from .reducer import (ConfigMatch, Diagnostic, apply_reduction, decompose_by_reduction,
                      find_config)
from .structure import classify

__all__ = [
    "ConfigMatch", "Dart", "DecompositionError", "Diagnostic", "EmbeddingError", "FormatError",
    "OracleBudgetExceeded", "OrientedDecomposition", "RULESETS", "RotationGraph", "Violation",
    "apply_reduction", "apply_rules", "audit", "classify", "decompose_by_reduction",
    "defective_coloring", "degeneracy_order", "euler_characteristic", "find_config", "generate",
    "initial_charges", "oracle_decide", "parse_decomposition", "parse_rotation_graph",
    "remove_vertices", "serialize_decomposition", "serialize_rotation_graph", "trace_faces",
    "verify",
]
