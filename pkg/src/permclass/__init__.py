"""Exact computations in the composition algebra of permutation classes."""

from .perms import (
    EMPTY,
    Occurrence,
    Permutation,
    all_perms,
    avoids,
    complement,
    compose,
    compose_all,
    contains,
    decreasing,
    direct_sum,
    direct_sum_all,
    from_text,
    greedy_increasing_chains,
    identity,
    inverse,
    lds,
    lis,
    pattern_of,
    reverse,
    skew_sum,
    to_text,
)
from .exprs import (
    AllPerms,
    And,
    Av,
    ClassExpr,
    ClassSyntaxError,
    Comp,
    Cpl,
    Dec,
    DecK,
    FibLayered,
    Horiz,
    HorizK,
    Inc,
    IncK,
    Inv,
    LayeredAll,
    LayeredK,
    Merge,
    Or,
    Rev,
    Vert,
    VertK,
    canonical_render,
    parse_class,
    render,
)
from .algebra import (
    ClassSlice,
    Config,
    DEFAULT_CONFIG,
    ResourceLimitError,
    SliceCache,
    basis_up_to,
    class_slice,
    count,
    member,
    member_independent,
    slice_cache,
)
from .structure import (
    Block,
    BlockDecomposition,
    Coloring,
    LayerShape,
    NotLayeredError,
    SplitContractError,
    alternating_superpattern,
    colayers,
    deletion_distance_to,
    gamma_pattern,
    horizontal_split,
    is_close,
    jv_split,
    layers,
    merge_split,
    min_blocks,
    normalize_short_layers,
    vertical_split,
)
from .factor import (
    Factor,
    Factorization,
    FactorizationError,
    decompose_ik_il,
    decompose_l4,
    decompose_thm52,
    decompose_vk_hk,
    rewrite_complement_factorization,
    rewrite_reverse_factorization,
)
from .harness import (
    InclusionReport,
    MSearchReport,
    REGISTRY,
    SuiteResult,
    Verdict,
    check_behaviour,
    check_equality,
    check_group_closure,
    check_inclusion,
    run_suite,
    search_m,
)

__version__ = "0.1.0"
