import logging

from .tools import constants
from .errors import KSMetricError
from .metricspace import MetricMeasureSpace
from .ballfamily import BallFamily, BallScheme
from .functions import GradientWitness, SampledFunction
from .gridspec import GridSpec, MultiIndex, multi_indices
from .normparams import NormParams, conjugate_exponent

#space
from .tools.spacefuncs.instantiation import (
    build_space,
    function_from_dict,
    load_function,
    load_space,
    save_function,
    save_space,
    space_from_dict,
)
from .tools.spacefuncs.geometry import diameter, doubling_constant
from .tools.spacefuncs.balls import ball_integral, ball_integrals, default_radius_grid, enumerate_balls

#ksnorm
from .tools.normfuncs.norms import embedding_constant, ks_inner, ks_norm, lp_norm
from .tools.normfuncs.reports import holder_report, inclusion_report

#lipschitz
from .tools.lipfuncs.slopes import feasible_envelope, feasibility_residual, lip_constant, slope
from .tools.lipfuncs.solver import SeminormResult, SolverOptions, ks1p_seminorm, solve_from
from .tools.lipfuncs.oracle import ks1p_oracle
from .tools.lipfuncs.reports import (
    lip_membership_bound,
    lipschitz_density_report,
    minimizer_uniqueness_probe,
    seminorm_embedding_report,
)

#sobolev
from .tools.sobolevfuncs.metric import (
    average,
    equivalent_norm_check,
    poincare_report,
    ws1p_norm,
    ws1p_parts,
)
from .tools.sobolevfuncs.grid import (
    euclid_embedding_report,
    grid_weak_derivative,
    wkp_norm,
    wsk2_inner,
    wskp_norm,
)

#maximal
from .tools.maxfuncs.operator import distribution_function, maximal_function, restricted_maximal
from .tools.maxfuncs.covering import CoveringSelection, greedy_5B, verify_covering
from .tools.maxfuncs.layercake import layer_cake
from .tools.maxfuncs.reports import strong_type_report, weak_type_report, ws_maximal_report

#harness
from .harness.config import SuiteConfig
from .harness.generators import gen_function, gen_space
from .harness.suite import Report, replay_record, run_suite
from .harness.emit import emit_report

logging.getLogger(__name__).addHandler(logging.NullHandler())
