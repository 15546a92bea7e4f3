"""Extremal polynomials for the measure of the set where ``|f| >= h``.

Trigonometric polynomials with fixed leading harmonic and monic polynomials
with zeros on the unit circle: closed-form extremal values, explicit extremal
polynomials, a level-set engine, brute-force oracles and geometric checks.
"""

__version__ = "0.1.0"

from .closedforms import (
    arc_extremal,
    arc_threshold,
    babenko_beta,
    delta,
    eps_arc,
    extremal_fnk,
    extremal_g,
    extremal_g_composition,
    mu_leading,
    polya_e,
    relate_params,
    segment_extremal,
    sigma,
    u_compact,
)
from .errors import (
    ChebmeasError,
    ClosureViolated,
    DomainError,
    EvenLength,
    InvalidThreshold,
    OddDegree,
    ZeroHarmonic,
)
from .kernels import BACKEND
from .levelset import LevelSet, SampleGrid, chi, level_set, mu
from .oracle import (
    SearchConfig,
    SearchResult,
    babenko_scan,
    e_on_set,
    minimax_on_set,
    minimize_measure,
    minimize_supnorm,
    sum_functional,
)
from .trigpoly import CirclePoly, ComplexZeroForm, TrigPoly, ZeroForm, realify
