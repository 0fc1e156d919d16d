"""Power-law process estimation for systems with competing failure causes."""

import json

from ._plpcr import (
    FailureHistory,
    PlpcrError,
    cause_stats,
    credible_interval,
    duane_points,
    gamma_cdf,
    gamma_quantile,
    harvester_fixture,
    ln_gamma,
    parse_history,
    posterior,
    reg_gamma_p,
    reg_gamma_q,
)
from . import _plpcr

__all__ = [
    "FailureHistory",
    "PlpcrError",
    "cause_stats",
    "credible_interval",
    "duane_points",
    "fit",
    "gamma_cdf",
    "gamma_quantile",
    "harvester_fixture",
    "ln_gamma",
    "parse_history",
    "posterior",
    "reg_gamma_p",
    "reg_gamma_q",
    "run_study",
]

_ALL_METHODS = ("mle", "cmle", "jeffreys", "reference")


def fit(history, model="distinct", methods=_ALL_METHODS, point="map", level=0.95,
        paper_compat=False):
    """Estimate table as {"rows": [...], "warnings": [...]}."""
    return json.loads(_plpcr._fit_json(history, model, list(methods), point, level, paper_compat))


def run_study(scenario, replications=None, seed=None, workers=1):
    """Monte Carlo accuracy report for a preset scenario ("scenario1".."scenario5")."""
    return json.loads(_plpcr._run_study_json(scenario, replications, seed, workers))
