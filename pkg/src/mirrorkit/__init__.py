"""Exact series, rational functions and linear differential operators for
mirror maps, modular pull-backs and hypergeometric identities."""

from .diffop import DiffOp, exterior_square, frobenius_mum, guess_min_ode, hypergeometric_operator, op_apply
from .hyper import eta_quotient_qseries, pfq_series, theta_null_qseries
from .mirror import build_mirror_bundle, qs_numeric, theta4_operator
from .ratpoly import MPoly, Poly, RatFun
from .registry import VerifyReport, numeric_spotcheck, run_all, run_identity
from .series import LogSeries, PowerSeries

__version__ = "0.1.0"

__all__ = [
    "DiffOp", "LogSeries", "MPoly", "Poly", "PowerSeries", "RatFun", "VerifyReport",
    "build_mirror_bundle", "eta_quotient_qseries", "exterior_square", "frobenius_mum",
    "guess_min_ode", "hypergeometric_operator", "numeric_spotcheck", "op_apply", "pfq_series",
    "qs_numeric", "run_all", "run_identity", "theta4_operator", "theta_null_qseries",
]
