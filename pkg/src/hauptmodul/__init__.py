"""Fourier coefficients of the Gamma_0(2) Hauptmodul eta^24(tau)/eta^24(2 tau),
computed from exact q-series and from traces of singular moduli, with range
checks for the sign-change theorem and the inequalities behind it."""

from .bqf import QuadraticForm, ReducedForm, enumerate_reduced, hurwitz_class_number, reduce_form
from .identities import divisor_sum, kaneko_a, ohta_c, zagier_sum
from .qseries import LaurentSeries, named_series
from .traces import TraceRecord, trace_t, trace_table
from .verify import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "LaurentSeries",
    "named_series",
    "QuadraticForm",
    "ReducedForm",
    "reduce_form",
    "enumerate_reduced",
    "hurwitz_class_number",
    "TraceRecord",
    "trace_t",
    "trace_table",
    "divisor_sum",
    "ohta_c",
    "kaneko_a",
    "zagier_sum",
    "VerificationReport",
]
