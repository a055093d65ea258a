"""Watermark codec over self-inverting permutations and reducible
permutation flow-graphs, with edge-modification resilience analysis."""

from .errors import (
    FalseIncorrectGraph,
    GraphFormatError,
    NotAWatermark,
    OutOfTheoremRange,
    ResourceBoundError,
    SipInvariantError,
    SizeMismatchError,
    TemplateViolation,
    UnsupportedAttack,
    WatermarkDomainError,
)
from .integrity import (
    EdgeEdit,
    ValidityReport,
    apply_edge_edits,
    classify_graph,
    parse_edits,
    swap_conjugate,
)
from .resilience import (
    ResilienceReport,
    TheoremVerification,
    analyze_watermark,
    classify_strength,
    minvm_closed_form,
    minvm_oracle,
    proof_neighbors,
    strong_watermark_of,
    survey_range,
    verify_theorem,
)
from .rpg import (
    ReduciblePermutationGraph,
    check_reducibility,
    decode_rpg_to_sip,
    dmax_map,
    encode_sip_to_rpg,
    graph_distance,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    load_graph,
    save_graph,
)
from .sip import (
    BlockDecomposition,
    EncodingTrace,
    SelfInvertingPermutation,
    WatermarkShape,
    bit_shape,
    decode_sip_to_w,
    decompose_blocks,
    encode_w_to_sip,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "EdgeEdit",
    "EncodingTrace",
    "FalseIncorrectGraph",
    "GraphFormatError",
    "NotAWatermark",
    "OutOfTheoremRange",
    "ReduciblePermutationGraph",
    "ResilienceReport",
    "ResourceBoundError",
    "SelfInvertingPermutation",
    "SipInvariantError",
    "SizeMismatchError",
    "TemplateViolation",
    "TheoremVerification",
    "UnsupportedAttack",
    "ValidityReport",
    "WatermarkDomainError",
    "WatermarkShape",
    "analyze_watermark",
    "apply_edge_edits",
    "bit_shape",
    "check_reducibility",
    "classify_graph",
    "classify_strength",
    "decode_rpg_to_sip",
    "decode_sip_to_w",
    "decompose_blocks",
    "dmax_map",
    "encode_sip_to_rpg",
    "encode_w_to_sip",
    "graph_distance",
    "graph_from_json",
    "graph_to_dot",
    "graph_to_json",
    "load_graph",
    "minvm_closed_form",
    "minvm_oracle",
    "parse_edits",
    "proof_neighbors",
    "save_graph",
    "strong_watermark_of",
    "survey_range",
    "swap_conjugate",
    "verify_theorem",
]
