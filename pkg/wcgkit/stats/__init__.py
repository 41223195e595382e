"""Statistics package: special functions and hypothesis tests"""
from .special import regularized_incomplete_beta, student_t_cdf, student_t_sf, f_cdf, f_sf
from .hypothesis_tests import pearson, welch_t, f_test, bonferroni_threshold

__all__ = [
    "regularized_incomplete_beta",
    "student_t_cdf",
    "student_t_sf",
    "f_cdf",
    "f_sf",
    "pearson",
    "welch_t",
    "f_test",
    "bonferroni_threshold",
]
