"""medianforge: cuts, pocsets, dual median graphs, canonical spanning trees."""

from .errors import (
    BudgetExceeded,
    InternalInvariantError,
    MedianForgeError,
    ValidationError,
)
from .graph_core import (
    FiniteGraph,
    ball,
    boundary,
    cone,
    convex_hull,
    distance,
    interval,
    is_between,
    is_convex,
    parse_graph,
    set_diameter,
)
from .cuts_pocset import (
    HalfSpace,
    Pocset,
    connectedize,
    density_criterion,
    enumerate_cuts,
    h_blocks,
    is_nested,
    non_nested_neighbors,
    pocset_from_json,
    pocset_to_json,
    separation_profile,
    successors,
    validate_pocset,
)
from .dual_median import (
    DualMedianGraph,
    Orientation,
    build_dual,
    decode_antichain,
    dual_distance,
    dual_median,
    dual_to_json,
    minimal_elements,
    orientation_neighbors,
    principal_orientation,
)
from .median_geometry import (
    Hyperplane,
    MedianCertificate,
    check_median,
    convex_halfspaces,
    helly_witness,
    hyperplanes,
    median,
    non_nested_witness,
    project,
    roundtrip,
    separating_count,
)
from .treeify import (
    ColourClasses,
    SpanningTree,
    canonical_spanning_tree,
    greedy_colouring,
    hyperplane_intersection_graph,
    verify_spanning_tree,
)
from .ends_lab import (
    BallTruncation,
    CutFamily,
    GraphGenerator,
    QuasiMap,
    end_estimate,
    ladder_line_quasimap,
    decorated_tree_collapse_quasimap,
    make_generator,
    pullback_cut,
    quasi_tree_cut_family,
    ray_prefix,
    shrink,
    truncate,
    truncation_to_edge_list,
)

__version__ = "0.1.0"
