"""contact-atlas: non-loose Legendrian and transverse torus knots in S1 x S2.

Exact combinatorial engine for the coarse classification of non-loose
(p, q)-torus knots in contact structures on S1 x S2: Farey-graph paths,
decorations, Euler classes by two independent formulas, surgery-diagram
homology, and full census reports.
"""

__version__ = "0.1.0"

from .farey import (  # noqa: F401
    INFINITY,
    FareyError,
    Slope,
    cf_eval,
    cf_expand,
    dot,
    farey_diff,
    farey_sum,
    is_edge,
    neighbor_acw,
    neighbor_cw,
    parse_slope,
    slope_new,
)
from .paths import (  # noqa: F401
    Block,
    BlockSequence,
    FareyPath,
    PathError,
    PathSide,
    block_sequence,
    build_p1,
    build_p2,
    interleave,
    n_values,
    subdivide,
)
from .decor import (  # noqa: F401
    Decoration,
    DecorError,
    consistency_level,
    decoration_count,
    enumerate_decorations,
    is_totally_k_inconsistent,
    m_values,
    negate,
    totally_2_inconsistent,
)
from .euler import (  # noqa: F401
    EulerError,
    EulerSupport,
    Side,
    TorsionKind,
    euler_class,
    euler_support,
    euler_value_set,
    k_e,
    side_of,
    totally2_euler_set,
)
from .surgery import (  # noqa: F401
    HomologyPresentation,
    LutzKind,
    SurgeryComponent,
    SurgeryDiagram,
    SurgeryError,
    decorated_diagram,
    decoration_to_stabilizations,
    dg_expand,
    euler_cross_check,
    fill_slots,
    homology,
    linking_matrix,
    lutz,
    pd_euler,
    smith_normal_form,
    standard_diagram,
)
from .classify import (  # noqa: F401
    ClassifyError,
    Counts,
    classification_report,
    counts,
    legendrian_census,
    mountain_range,
    normalize,
    surgered_manifold,
    tight_counts,
    transverse_census,
)
