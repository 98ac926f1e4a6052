"""Consistent scoring, Murphy diagrams and dominance tests for (VaR, ES) forecasts."""

from ._core import (
    JointForecast,
    black_scholes_put_zero_rate,
    dominance_test,
    elementary_score_v1,
    elementary_score_v2,
    fit_qml,
    fz_score,
    hs_forecast,
    mixture_score,
    murphy_curve,
    murphy_diff,
    rolling_evaluation,
    scaled_t_var_es,
    simulate_dgp,
    size_power_study,
    student_t_es,
    verify_pricing_equivalence,
    westfall_young_adjust,
)

__all__ = [
    "JointForecast",
    "black_scholes_put_zero_rate",
    "dominance_test",
    "elementary_score_v1",
    "elementary_score_v2",
    "fit_qml",
    "fz_score",
    "hs_forecast",
    "mixture_score",
    "murphy_curve",
    "murphy_diff",
    "rolling_evaluation",
    "scaled_t_var_es",
    "simulate_dgp",
    "size_power_study",
    "student_t_es",
    "verify_pricing_equivalence",
    "westfall_young_adjust",
]
