"""Bruhat order on parabolic double cosets of finite Coxeter groups."""
from .cosets import (
    DoubleCoset,
    coset_leq,
    coset_of,
    coset_star,
    cosets_tsv,
    enumerate_cosets,
    identity_coset,
    project,
    reduced_compose,
    sub_cosets,
)
from .coxeter import (
    PRESET_NAMES,
    CoxeterGroup,
    CoxeterMatrix,
    Element,
    build_group,
    format_word,
    parse_group_file,
    parse_word,
    preset_matrix,
    reduce_word,
)
from .errors import (
    CapExceeded,
    CoxeterError,
    InvalidChain,
    InvalidExpression,
    InvalidMatrix,
    JunctionMismatch,
    MismatchedTypes,
    NotASuperset,
    ParseError,
    UnknownCheckName,
)
from .expressions import (
    MultistepExpr,
    SinglestepExpr,
    concat,
    expr_length,
    expressed_coset,
    find_reduced_expression,
    is_reduced,
    parse_multistep,
    parse_singlestep,
    to_multistep,
    to_singlestep,
)
from .hasse import hasse_dot, hasse_graph
from .paths import SubordinatePath, enumerate_paths, forward_path, term_set
from .verify import CheckResult, manifest, run_suite

__all__ = [
    "DoubleCoset",
    "coset_leq",
    "coset_of",
    "coset_star",
    "cosets_tsv",
    "enumerate_cosets",
    "identity_coset",
    "project",
    "reduced_compose",
    "sub_cosets",
    "PRESET_NAMES",
    "CoxeterGroup",
    "CoxeterMatrix",
    "Element",
    "build_group",
    "format_word",
    "parse_group_file",
    "parse_word",
    "preset_matrix",
    "reduce_word",
    "CapExceeded",
    "CoxeterError",
    "InvalidChain",
    "InvalidExpression",
    "InvalidMatrix",
    "JunctionMismatch",
    "MismatchedTypes",
    "NotASuperset",
    "ParseError",
    "UnknownCheckName",
    "MultistepExpr",
    "SinglestepExpr",
    "concat",
    "expr_length",
    "expressed_coset",
    "find_reduced_expression",
    "is_reduced",
    "parse_multistep",
    "parse_singlestep",
    "to_multistep",
    "to_singlestep",
    "hasse_dot",
    "hasse_graph",
    "SubordinatePath",
    "enumerate_paths",
    "forward_path",
    "term_set",
    "CheckResult",
    "manifest",
    "run_suite",
]
__version__ = "0.1.0"
