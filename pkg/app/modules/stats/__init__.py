"""Sample-variance estimation and concentration-bound evaluators."""

from app.modules.stats.bounds import (
    BoundInputs,
    BoundResult,
    SubexponentialParam,
    SubgaussianParam,
    dependent_bound,
    dependent_t_for,
    hetero_inflation,
    hetero_thm_prob,
    lemma1_params,
    prop1_bound,
    prop1_log_bound,
    subexp_tail,
    subexponential_sum_param,
    subgaussian_sum_param,
    subgaussian_tail,
    thm1_prob,
    thm2_prob,
)
from app.modules.stats.variance import RunningMoments, sample_variance

__all__ = [
    "BoundInputs",
    "BoundResult",
    "RunningMoments",
    "SubexponentialParam",
    "SubgaussianParam",
    "dependent_bound",
    "dependent_t_for",
    "hetero_inflation",
    "hetero_thm_prob",
    "lemma1_params",
    "prop1_bound",
    "prop1_log_bound",
    "sample_variance",
    "subexp_tail",
    "subexponential_sum_param",
    "subgaussian_sum_param",
    "subgaussian_tail",
    "thm1_prob",
    "thm2_prob",
]
