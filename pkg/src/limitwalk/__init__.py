"""Cost, risk and fill probability of a static limit order under a symmetric random walk."""

__version__ = "0.1.0"

from .walk_prob import (  # noqa: E402
    ExecutionDistribution,
    Scenario,
    binom,
    critical_r,
    endpoint_prob,
    execution_distribution,
    no_touch_prob,
    touch_prob,
)
from .execution_analytics import (  # noqa: E402
    ExecutionStats,
    avg_cost_no_touch,
    avg_cost_touch,
    execution_stats,
    fill_prob_exact,
    net_gain,
    variance_components,
    variance_exact,
)
from .asymptotics import (  # noqa: E402
    TimeScaling,
    execution_stdev_approx,
    fill_prob_asymptotic,
    fill_prob_time,
    risk_time_exponent,
    variance_approx,
)
from .mc_sim import McReport, enumerate_stats, simulate  # noqa: E402
