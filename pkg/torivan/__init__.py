from .lattice import (
    Fan, FanError, Wall, pair, primitive, make_projective_fan, make_blowup_fan,
    star_subdivide, permute_rays, walls, validate_fan, is_refinement, cone_contains,
)
from .divisor import (
    ToricDivisor, CartierData, BlowupParams, DivisorError, RefinementError,
    div_of_character, cartier_data, picard_normal_form, linearly_equivalent,
    pullback_refinement, pullback_closed_form, divisor_from_params, picard_coordinates,
)
from .positivity import (
    positivity, is_nef, is_ample, SupportFunction, support_eval, canonical_divisor,
    kodaira_precondition, demazure_precondition,
)
from .cohomology import (
    CapExceeded, active_rays, nerve, reduced_ranks, search_box, total_cohomology,
    char1_predicate, mainthmsev_predicate, classify_disconnected, Shape,
)
from .sweep import SweepGrid, verify_one, verify_sweep, summarize
from .config import load_settings
