"""Exact distance labels for unweighted planar graphs.

Every vertex gets a short bit string; the distance between two vertices is
computed from their two labels alone. Labels use O(sqrt n) bits.
"""
from .errors import (CodecError, EmbeddingError, FormatError, ParseError, PlanarLabelError,
                     SeparatorError, SizeError)
from .gadget import (AugmentedGraph, SubdividedCycle, augment_with_gadgets, aux_count,
                     build_subdivided_cycle)
from .generators import FAMILIES, generate
from .kernels import backend, use_backend
from .labeler import (Label, LabelSet, build_label_sets, build_labels, build_labels_baseline,
                      deserialize_labels, read_label, serialize_labels)
from .planar import (UNREACHABLE, FaceSet, RotationGraph, all_pairs_distances, bfs_distances,
                     connected_components, dump_graph, enumerate_faces, induced_subembedding,
                     load_graph, parse_graph)
from .query import LabelDecoder, decode_distance
from .separator import (CycleSeparator, SeparatorResult, find_separator, project_separator,
                        triangulate_squares, weighted_cycle_separator)

__version__ = "0.1.0"

__all__ = [
    "AugmentedGraph", "CodecError", "CycleSeparator", "EmbeddingError", "FAMILIES", "FaceSet",
    "FormatError", "Label", "LabelDecoder", "LabelSet", "ParseError", "PlanarLabelError",
    "RotationGraph", "SeparatorError", "SeparatorResult", "SizeError", "SubdividedCycle",
    "UNREACHABLE", "all_pairs_distances", "augment_with_gadgets", "aux_count", "backend",
    "bfs_distances", "build_label_sets", "build_labels", "build_labels_baseline",
    "build_subdivided_cycle", "connected_components", "decode_distance", "deserialize_labels",
    "dump_graph", "enumerate_faces", "find_separator", "generate", "induced_subembedding",
    "load_graph", "parse_graph", "project_separator", "read_label", "serialize_labels",
    "triangulate_squares", "use_backend", "weighted_cycle_separator",
]
