"""fanocone: K-semistability of toric Fano cone singularities.

The package decides K-semistability of a polarized toric cone singularity by
minimizing the normalized volume over the Reeb cone, evaluates Futaki and
Berman-Ding invariants of product test configurations, and ships desk-scale
checkers for the supporting identities (index-character asymptotics,
normalized multiplicities of monomial ideals, one-parameter-subgroup limit
composition).
"""

from .cones import (
    Cone,
    SimplicialDecomposition,
    contains,
    dual_cone,
    facet_normals,
    half_open_masks,
    parallelepiped_points,
    triangulate,
)
from .character import (
    CharacterSample,
    LeadingCoefficient,
    character_series,
    default_truncation,
    enumerate_semigroup,
    index_character,
    leading_coefficient,
    sample_character,
)
from .errors import (
    DegenerateXi,
    ExtrapolationDiverged,
    FanoConeError,
    NotFullDim,
    NotInReebCone,
    NotKlt,
    NotPointed,
    NotPrimary,
    NotQGorenstein,
    RoundingExitsCone,
    TruncationTooSmall,
)
from .futaki import (
    FutakiReport,
    ProductTestConfig,
    ding_product,
    futaki,
    normalize_config,
    product_config,
    t_normalize,
)
from .gittoy import (
    CompositionCheck,
    MuAdditivity,
    WeightedPoint,
    composed_equals_two_step,
    limit,
    min_composition_k,
    mu_additivity,
    mu_weight,
    two_step_limit,
)
from .ideals import (
    MonomialIdeal,
    ideal_power,
    in_newton_polyhedron,
    lct,
    multiplicity,
    newton_facets,
    normalized_multiplicity,
)
from .singularity import (
    IRREGULAR,
    QUASI_REGULAR,
    ReebVector,
    ToricConeData,
    classify_regularity,
    gorenstein_vector,
    in_reeb_cone,
    log_discrepancy,
    rationalize,
    reeb,
    validate,
)
from .volume import (
    KSemistabilityVerdict,
    MinimizationResult,
    VolumeForm,
    build_volume_form,
    grad_vol,
    hess_vol,
    is_ksemistable,
    minimize_volume,
    normalized_volume,
    scan_hvol,
    vol,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
