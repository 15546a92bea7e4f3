"""Closed-form least deviations and the explicit extremal polynomials.

Values
------
sigma(n, y)        least measure of ``{|f| >= 1}`` over ``f = y cos nt + lower order``
delta(m, h)        least measure of ``{|P(e^{it})| >= h}`` over monic P with zeros on the circle
eps_arc(m, 2a)     least sup-norm of such P on an arc of length 2a
u_compact(n, 2a)   least sup-deviation of ``cos nt - lower order`` on a set of measure 2a
babenko_beta(n)    sharp constant comparing the measure of the leading harmonic to the whole
polya_e(m, 2r)     least sup-norm of monic real-line polynomials on a set of measure 2r

All arccos evaluations near 1 go through ``arccos(1 - u) = 2 asin(sqrt(u/2))``
with ``u`` from ``expm1``, which keeps ratios such as ``sigma`` near ``y = 1``
accurate to full relative precision.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroHarmonic
from .trigpoly import CirclePoly, TrigPoly, ZeroForm, cheb_T, dirichlet_D


def _arccos_one_minus(u):
    """``arccos(1 - u)`` for ``0 <= u <= 2``."""
    return 2.0 * math.asin(math.sqrt(0.5 * u))


def _check_int(name, v, lo=1):
    if int(v) != v or v < lo:
        raise DomainError(f"{name} must be an integer >= {lo}, got {v}")
    return int(v)


def sigma(n, y):
    """``4 arccos(y^{-1/(2n)})`` for ``y >= 1``."""
    n = _check_int("n", n)
    if not y >= 1.0:
        raise DomainError(f"sigma needs y >= 1, got {y}")
    return 4.0 * _arccos_one_minus(-math.expm1(-math.log(y) / (2 * n)))


def delta(m, h):
    """``4 arccos((h/2)^{1/m})`` for ``0 <= h <= 2``."""
    m = _check_int("m", m)
    if not 0.0 <= h <= 2.0:
        raise DomainError(f"delta needs 0 <= h <= 2, got {h}")
    if h == 0.0:
        return 2.0 * math.pi
    return 4.0 * _arccos_one_minus(-math.expm1(math.log(h / 2.0) / m))


def _half_alpha(two_alpha):
    if not 0.0 < two_alpha < 2.0 * math.pi:
        raise DomainError(f"arc length 2*alpha must lie in (0, 2pi), got {two_alpha}")
    return 0.25 * two_alpha


def eps_arc(m, two_alpha):
    """``2 sin^m(alpha/2)``: least sup-norm on an arc (and on any set) of length ``2 alpha``."""
    m = _check_int("m", m)
    return 2.0 * math.sin(_half_alpha(two_alpha)) ** m


def u_compact(n, two_alpha):
    """``sin^{2n}(alpha/2)``."""
    n = _check_int("n", n)
    return math.sin(_half_alpha(two_alpha)) ** (2 * n)


def babenko_beta(n):
    """``sqrt(2n)``."""
    n = _check_int("n", n)
    return math.sqrt(2 * n)


def polya_e(m, two_rho):
    """``2 (rho/2)^m``."""
    m = _check_int("m", m)
    if not two_rho > 0:
        raise DomainError(f"set length 2*rho must be positive, got {two_rho}")
    return 2.0 * (0.25 * two_rho) ** m


def min_supnorm_value(m):
    """Least uniform norm on the circle of a monic polynomial with unimodular zeros."""
    _check_int("m", m)
    return 2.0


def mu_leading(y):
    """``4 arccos(1/y)``: measure of ``{|y cos nt| >= 1}``, for every n."""
    if not y >= 1.0:
        raise DomainError(f"mu_leading needs y >= 1, got {y}")
    if math.isinf(y):
        return 2.0 * math.pi
    return 4.0 * _arccos_one_minus((y - 1.0) / y)


# --- parameter relations --------------------------------------------------

@dataclass(frozen=True)
class ParamRelation:
    m: int
    h: float
    alpha: float
    lam: float
    y: float


def relate_params(m, h=None, alpha=None, y=None):
    """Complete ``h = 2 sin^m(alpha/2)``, ``lambda = sin^{-2}(alpha/2)``, ``y = 2/h`` from one of them."""
    m = _check_int("m", m)
    given = [v is not None for v in (h, alpha, y)]
    if sum(given) != 1:
        raise DomainError("give exactly one of h, alpha, y")
    if y is not None:
        if not y >= 1.0:
            raise DomainError(f"y must be >= 1, got {y}")
        h = 2.0 / y
    if h is not None:
        if not 0.0 < h <= 2.0:
            raise DomainError(f"h must lie in (0, 2], got {h}")
        s = (h / 2.0) ** (1.0 / m)
        alpha = 2.0 * math.asin(min(s, 1.0))
    else:
        if not 0.0 < alpha <= math.pi:
            raise DomainError(f"alpha must lie in (0, pi], got {alpha}")
        s = math.sin(alpha / 2.0)
        h = 2.0 * s ** m
    return ParamRelation(m=m, h=h, alpha=alpha, lam=s ** -2, y=2.0 / h)


@dataclass(frozen=True)
class HarmonicReduction:
    """``A cos nt + B sin nt = y cos(nt + theta)`` with ``theta = arg(A - iB)``."""

    A: float
    B: float
    y: float
    theta: float

    def shift(self, n):
        """Time shift ``c`` such that the harmonic equals ``y cos(n(t + c))``."""
        return self.theta / n

    def evaluate(self, n, t):
        return self.y * np.cos(n * np.asarray(t) + self.theta)


def reduce_harmonic(A, B):
    if A == 0 and B == 0:
        raise ZeroHarmonic("leading harmonic is identically zero")
    return HarmonicReduction(float(A), float(B), math.hypot(A, B), math.atan2(-B, A))


def normalize_leading(p):
    """Shift ``p`` so its leading harmonic becomes ``y cos nt``; returns ``(q, c)`` with ``q(t) = p(t - c)``."""
    red = reduce_harmonic(*p.leading)
    c = red.shift(p.n)
    q = p.shifted(c)
    a, b = list(q.a), list(q.b)
    a[-1], b[-1] = red.y, 0.0
    return TrigPoly(a, b), c


# --- constructors ---------------------------------------------------------

def compose_cheb(n, c, d, shift=0.0, scale=1.0):
    """Coefficients of ``scale * T_n(c cos(t - shift) + d)`` as a :class:`TrigPoly`."""
    inner = TrigPoly([2.0 * d, c * math.cos(shift)], [0.0, c * math.sin(shift)])
    t0, t1 = TrigPoly([2.0]), inner
    if n == 0:
        return t0 * scale
    for _ in range(n - 1):
        t0, t1 = t1, 2.0 * inner * t1 - t0
    return (t1 * scale).trimmed()


def extremal_fnk(n, y, k=0):
    """``(-1)^k T_n(y^{1/n} cos(t - pi k/n) - y^{1/n} + 1)``; leading harmonic ``y cos nt``."""
    n = _check_int("n", n)
    if not y > 1.0:
        raise DomainError(f"extremal polynomials need y > 1, got {y}")
    k = int(k) % (2 * n)
    lam = y ** (1.0 / n)
    return compose_cheb(n, lam, 1.0 - lam, math.pi * k / n, (-1.0) ** k)


def segment_extremal(n, alpha, k=0):
    """``(-1)^k sin^{2n}(alpha/2) T_n(lam cos(t + pi k/n) - lam + 1)``, ``lam = sin^{-2}(alpha/2)``.

    Leading harmonic ``cos nt``; least sup-deviation on ``[-alpha, alpha] - pi k/n``.
    """
    n = _check_int("n", n)
    if not 0.0 < alpha < math.pi:
        raise DomainError(f"alpha must lie in (0, pi), got {alpha}")
    k = int(k) % (2 * n)
    s2 = math.sin(alpha / 2.0) ** 2
    lam = 1.0 / s2
    return compose_cheb(n, lam, 1.0 - lam, -math.pi * k / n, (-1.0) ** k * s2 ** n)


def _arc_angles(m, alpha):
    m = _check_int("m", m)
    if not 0.0 < alpha < math.pi:
        raise DomainError(f"alpha must lie in (0, pi), got {alpha}")
    n = m // 2
    s2 = math.sin(alpha / 2.0) ** 2
    angles = []
    for k in range(1, n + 1):
        x = math.cos(math.pi * (2 * k - 1) / (2 * m))
        a = 1.0 - 2.0 * x * x * s2
        angles.append(math.acos(a))
    return n, angles


def arc_extremal(m, alpha):
    """Monic polynomial of least sup-norm on the arc ``|t| <= alpha``.

    Even ``m = 2n``: ``prod_k (z^2 - 2 a_k z + 1)``; odd ``m``: the same times ``(z - 1)``.
    """
    n, angles = _arc_angles(m, alpha)
    phis = [s * th for th in angles for s in (1, -1)]
    if m % 2:
        phis.append(0.0)
    return CirclePoly(tuple(phis))


def extremal_g(m, alpha):
    """Real form of :func:`arc_extremal` as a :class:`ZeroForm`.

    Even ``m = 2n``: ``lam^{-n} 2 T_n(lam cos t - (lam - 1))``;
    odd ``m = 2n+1``: ``lam^{-n} 2 sin(t/2) D_n(lam cos t - (lam - 1))``.
    """
    n, angles = _arc_angles(m, alpha)
    phis = [s * th for th in angles for s in (1, -1)]
    if m % 2:
        phis.append(0.0)
    return ZeroForm(tuple(phis), (-1.0) ** n)


def extremal_g_composition(m, alpha):
    """The same function as :func:`extremal_g`, evaluated through ``T_n`` or ``D_n``."""
    m = _check_int("m", m)
    n = m // 2
    lam = math.sin(alpha / 2.0) ** -2

    def g(t):
        t = np.asarray(t, dtype=float)
        x = lam * np.cos(t) - (lam - 1.0)
        if m % 2:
            return lam ** -n * 2.0 * np.sin(t / 2.0) * dirichlet_D(n, x)
        return lam ** -n * 2.0 * cheb_T(n, x)

    return g


def arc_threshold(m, alpha):
    """Level ``h = 2 sin^m(alpha/2)`` at which :func:`extremal_g` is extremal."""
    return 2.0 * math.sin(alpha / 2.0) ** m


def rotate(P, theta):
    """Rotate the zeros of a :class:`CirclePoly` by ``theta``."""
    return P.rotate(theta)
