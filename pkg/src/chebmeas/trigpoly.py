"""Real trigonometric polynomials and their zero-product and unit-circle forms.

Three representations of the same objects are used throughout:

* :class:`TrigPoly` -- coefficients ``a_0/2 + sum a_k cos kt + b_k sin kt``;
* :class:`ZeroForm` -- ``c * prod_j 2 sin((t - phi_j)/2)``;
* :class:`CirclePoly` -- monic ``prod_j (z - e^{i phi_j})`` on the unit circle.

A polynomial of order n with leading harmonic ``y cos nt`` and complex zeros is
a :class:`ComplexZeroForm`; :func:`realify` collapses its complex zero pairs
onto the circle without increasing ``|f|`` anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ClosureViolated, DomainError, EvenLength, OddDegree

TWO_PI = 2.0 * math.pi

#: tolerance for structural identities (closure, representation round trips)
STRUCT_TOL = 1e-9
#: tolerance for conjugate symmetry of coefficient vectors
SYM_TOL = 1e-12


def canonical_angle(phi):
    """Reduce ``phi`` into ``[0, 2pi)``; returns ``(angle, wraps)`` with ``phi = angle + 2pi*wraps``."""
    wraps = math.floor(phi / TWO_PI)
    r = phi - wraps * TWO_PI
    if r >= TWO_PI:
        r -= TWO_PI
        wraps += 1
    if r < 0.0:
        r += TWO_PI
        wraps -= 1
    if r >= TWO_PI:  # -tiny + 2pi rounds to 2pi
        r = 0.0
        wraps += 1
    return r, wraps


@dataclass(frozen=True)
class TrigPoly:
    """Real trigonometric polynomial of order ``n = len(a) - 1``.

    ``b[0]`` is ignored and stored as 0.
    """

    a: tuple
    b: tuple = None

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        if not a:
            raise ValueError("TrigPoly needs at least a_0")
        b = (0.0,) * len(a) if self.b is None else tuple(float(x) for x in self.b)
        if len(b) != len(a):
            raise ValueError(f"len(a)={len(a)} but len(b)={len(b)}")
        b = (0.0,) + b[1:]
        if not all(math.isfinite(x) for x in a + b):
            raise ValueError("TrigPoly coefficients must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self):
        return len(self.a) - 1

    @property
    def exact_order(self):
        return self.a[-1] ** 2 + self.b[-1] ** 2 > 0.0

    @property
    def leading(self):
        """``(a_n, b_n)``."""
        return self.a[-1], self.b[-1]

    def __call__(self, t):
        out = kernels.eval_trig(self.a, self.b, t)
        return out if np.ndim(t) else float(out[0])

    # complex-exponential view: f(t) = sum_{k=-n}^{n} c_k e^{ikt}
    def exp_coeffs(self):
        n = self.n
        c = np.zeros(2 * n + 1, dtype=complex)
        a = np.asarray(self.a)
        b = np.asarray(self.b)
        c[n] = a[0] / 2
        c[n + 1:] = (a[1:] - 1j * b[1:]) / 2
        c[:n][::-1] = (a[1:] + 1j * b[1:]) / 2
        return c

    @classmethod
    def from_exp_coeffs(cls, c):
        c = np.asarray(c, dtype=complex)
        n = (len(c) - 1) // 2
        a = np.empty(n + 1)
        b = np.zeros(n + 1)
        a[0] = 2 * c[n].real
        a[1:] = 2 * c[n + 1:].real
        b[1:] = -2 * c[n + 1:].imag
        return cls(a, b)

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly([2.0 * other])
        n = max(self.n, other.n)
        a = np.zeros(n + 1)
        b = np.zeros(n + 1)
        a[: self.n + 1] += self.a
        b[: self.n + 1] += self.b
        a[: other.n + 1] += other.a
        b[: other.n + 1] += other.b
        return TrigPoly(a, b)

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return TrigPoly.from_exp_coeffs(np.convolve(self.exp_coeffs(), other.exp_coeffs()))
        return TrigPoly([other * x for x in self.a], [other * x for x in self.b])

    __rmul__ = __mul__

    def shifted(self, c):
        """The polynomial ``t -> f(t - c)``."""
        n = self.n
        k = np.arange(-n, n + 1)
        return TrigPoly.from_exp_coeffs(self.exp_coeffs() * np.exp(-1j * k * c))

    def trimmed(self, tol=0.0):
        """Drop trailing harmonics whose coefficients are at most ``tol`` in modulus."""
        n = self.n
        while n > 0 and abs(self.a[n]) <= tol and abs(self.b[n]) <= tol:
            n -= 1
        return TrigPoly(self.a[: n + 1], self.b[: n + 1])


def eval_trig(p, t):
    """Evaluate ``p`` at ``t`` (scalar or array) by Clenshaw's recurrence."""
    return p(t)


def cheb_T(n, x):
    """Chebyshev polynomial of the first kind by the three-term recurrence.

    Valid for any real ``x`` (no arccos), scalar or array.
    """
    if n < 0:
        raise DomainError("Chebyshev order must be nonnegative")
    x = np.asarray(x, dtype=float)
    t0, t1 = np.ones_like(x), x
    if n == 0:
        out = t0
    else:
        for _ in range(n - 1):
            t0, t1 = t1, 2.0 * x * t1 - t0
        out = t1
    return out if out.ndim else float(out)


def dirichlet_D(n, x):
    """Algebraic Dirichlet kernel ``D_n(x) = 1 + 2 sum_{k=1}^n T_k(x)``.

    ``D_n(cos t) = sin((2n+1)t/2) / sin(t/2)``.
    """
    if n < 0:
        raise DomainError("Dirichlet order must be nonnegative")
    x = np.asarray(x, dtype=float)
    t0, t1 = np.ones_like(x), x
    total = np.ones_like(x)
    for k in range(1, n + 1):
        total = total + 2.0 * t1
        t0, t1 = t1, 2.0 * x * t1 - t0
    return total if total.ndim else float(total)


@dataclass(frozen=True)
class ZeroForm:
    """``scale * prod_j 2 sin((t - phi_j)/2)`` with zeros kept sorted in ``[0, 2pi)``.

    Each ``phi_j`` given outside ``[0, 2pi)`` is wrapped and the sign of
    ``scale`` flipped once per ``2pi`` moved, so the function is unchanged.
    """

    phis: tuple
    scale: float = 1.0

    def __post_init__(self):
        scale = float(self.scale)
        if scale == 0.0 or not math.isfinite(scale):
            raise ValueError("ZeroForm scale must be finite and nonzero")
        out = []
        for phi in self.phis:
            phi = float(phi)
            if not math.isfinite(phi):
                raise ValueError("zero angles must be finite")
            r, w = canonical_angle(phi)
            if w % 2:
                scale = -scale
            out.append(r)
        object.__setattr__(self, "phis", tuple(sorted(out)))
        object.__setattr__(self, "scale", scale)

    @property
    def m(self):
        return len(self.phis)

    def __call__(self, t):
        out = kernels.eval_zeros(self.phis, self.scale, t)
        return out if np.ndim(t) else float(out[0])

    @property
    def closure_index(self):
        return closure_check(self.phis)

    def to_trig(self):
        return zeroform_to_trig(self)


@dataclass(frozen=True)
class CirclePoly:
    """Monic ``prod_j (z - e^{i phi_j})``, zeros stored sorted in ``[0, 2pi)``."""

    phis: tuple

    def __post_init__(self):
        out = sorted(canonical_angle(float(p))[0] for p in self.phis)
        object.__setattr__(self, "phis", tuple(out))

    @property
    def m(self):
        return len(self.phis)

    @property
    def Phi(self):
        return math.fsum(self.phis)

    @property
    def Psi(self):
        return self.m * math.pi + self.Phi

    def coefficients(self):
        """Ascending coefficients ``c_0 .. c_m`` (``c_m = 1``) by repeated monic multiplication."""
        c = np.array([1.0 + 0j])
        for phi in self.phis:
            root = complex(math.cos(phi), math.sin(phi))
            nxt = np.zeros(len(c) + 1, dtype=complex)
            nxt[1:] += c
            nxt[:-1] -= root * c
            c = nxt
        return c

    def at(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones_like(z)
        for phi in self.phis:
            out = out * (z - complex(math.cos(phi), math.sin(phi)))
        return out if out.ndim else complex(out)

    def rotate(self, theta):
        """Zeros rotated by ``theta``: ``e^{im theta} P(z e^{-i theta})``."""
        return CirclePoly(tuple(p + theta for p in self.phis))


def circle_eval(P, t):
    """``P(e^{it})`` as a complex number (or array)."""
    t = np.asarray(t, dtype=float)
    return P.at(np.exp(1j * t))


def closure_check(phis, tol=STRUCT_TOL):
    """Integer N with ``sum(phis) = 2 pi N`` within ``tol``, or ``None``."""
    s = math.fsum(float(p) for p in phis)
    N = round(s / TWO_PI)
    if abs(s - N * TWO_PI) <= tol:
        return int(N)
    return None


def self_inversive_check(u, tol=SYM_TOL):
    """True iff ``u_{2n-v} = conj(u_v)`` for all v (coefficients of ``P_{2n}``)."""
    u = np.asarray(u, dtype=complex)
    if len(u) % 2 == 0:
        raise EvenLength(f"self-inversive test needs 2n+1 coefficients, got {len(u)}")
    return bool(np.all(np.abs(u[::-1] - np.conj(u)) <= tol))


def zeroform_to_trig(zf):
    """Expand an even-degree :class:`ZeroForm` into :class:`TrigPoly` coefficients.

    Uses ``g(t) = (-1)^n e^{-i Phi/2} e^{-int} P_{2n}(e^{it})`` with ``P_{2n}`` the
    monic circle polynomial of the same zeros.
    """
    if zf.m % 2:
        raise OddDegree(f"zero form of odd degree m={zf.m} is not a trigonometric polynomial")
    n = zf.m // 2
    P = CirclePoly(zf.phis)
    u = P.coefficients()
    c = zf.scale * (-1) ** n * np.exp(-0.5j * P.Phi)
    return TrigPoly.from_exp_coeffs(c * u)


@dataclass(frozen=True)
class ComplexZeroForm:
    """Order-n polynomial with leading harmonic ``y cos nt`` and ``l`` complex zero pairs.

    ``pairs`` holds ``(r_k, phi_k)`` for zeros ``r_k e^{i phi_k}`` and
    ``e^{i phi_k}/r_k``; ``real_zeros`` holds the remaining ``2(n - l)`` angles.
    ``N`` is recovered from the closure condition when not given.
    """

    y: float
    pairs: tuple = ()
    real_zeros: tuple = ()
    N: int = None
    n: int = field(init=False)

    def __post_init__(self):
        pairs = tuple((float(r), float(p)) for r, p in self.pairs)
        real = tuple(float(p) for p in self.real_zeros)
        if self.y <= 0:
            raise DomainError("leading amplitude y must be positive")
        for r, _ in pairs:
            if not 0.0 < r < 1.0:
                raise DomainError(f"pair modulus r={r} must lie in (0, 1)")
        if len(real) % 2:
            raise DomainError("number of real zeros must be even")
        n = len(pairs) + len(real) // 2
        if n < 1:
            raise DomainError("order must be at least 1")
        total = 2.0 * math.fsum(p for _, p in pairs) + math.fsum(real)
        N = closure_check([total], tol=1e-10)
        if N is None or (self.N is not None and N != self.N):
            raise ClosureViolated(
                f"2*sum(pair angles) + sum(real zeros) = {total!r} is not 2*pi*N"
                + ("" if self.N is None else f" with N={self.N}")
            )
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "real_zeros", real)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "n", n)

    @property
    def l(self):
        return len(self.pairs)

    @property
    def A(self):
        return tuple(0.5 * (r + 1.0 / r) for r, _ in self.pairs)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = (-1.0) ** (self.n + self.N) * 0.5 * self.y * np.ones_like(t)
        for A, (_, phi) in zip(self.A, self.pairs):
            out = out * 2.0 * (A - np.cos(t - phi))
        for phi in self.real_zeros:
            out = out * 2.0 * np.sin(0.5 * (t - phi))
        return out if out.ndim else float(out)

    def circle_coefficients(self):
        """Coefficients of ``(y/2) prod (z - z_k)(z - 1/conj z_k) prod (z - e^{i phi_j})``."""
        roots = []
        for r, phi in self.pairs:
            roots += [r * np.exp(1j * phi), np.exp(1j * phi) / r]
        roots += [np.exp(1j * phi) for phi in self.real_zeros]
        c = np.array([1.0 + 0j])
        for z in roots:
            c = np.concatenate([[0], c]) - z * np.concatenate([c, [0]])
        return 0.5 * self.y * c

    def to_trig(self):
        """Direct expansion ``e^{-int} P_{2n}(e^{it})``, independent of the product formula."""
        return TrigPoly.from_exp_coeffs(self.circle_coefficients())


def realify(f):
    """Replace each complex zero pair of ``f`` by a double real zero at the same angle.

    The result has the same leading harmonic and satisfies ``|realify(f)(t)| <= |f(t)|``.
    """
    if not isinstance(f, ComplexZeroForm):
        raise TypeError("realify expects a ComplexZeroForm")
    phis = []
    for _, phi in f.pairs:
        phis += [phi, phi]
    phis += list(f.real_zeros)
    return ZeroForm(tuple(phis), (-1.0) ** (f.n + f.N) * 0.5 * f.y)


def as_function(p):
    """A vectorized callable ``t -> value`` for any polynomial representation."""
    if isinstance(p, CirclePoly):
        return lambda t: np.abs(circle_eval(p, t))
    if callable(p):
        return p
    raise TypeError(f"cannot evaluate {type(p).__name__}")


# --- JSON schema ----------------------------------------------------------

def poly_to_json(p):
    if isinstance(p, TrigPoly):
        return {"kind": "trig", "n": p.n, "a": list(p.a), "b": list(p.b)}
    if isinstance(p, ZeroForm):
        return {"kind": "zeros", "m": p.m, "phis": list(p.phis), "scale": p.scale}
    if isinstance(p, CirclePoly):
        return {"kind": "circle", "m": p.m, "phis": list(p.phis)}
    raise TypeError(f"no JSON schema for {type(p).__name__}")


def poly_from_json(d):
    kind = d.get("kind")
    if kind == "trig":
        p = TrigPoly(d["a"], d.get("b"))
        if "n" in d and d["n"] != p.n:
            raise ValueError(f"declared n={d['n']} but {len(p.a)} coefficients given")
        return p
    if kind == "zeros":
        p = ZeroForm(tuple(d["phis"]), d.get("scale", 1.0))
    elif kind == "circle":
        p = CirclePoly(tuple(d["phis"]))
    else:
        raise ValueError(f"unknown polynomial kind {kind!r}")
    if "m" in d and d["m"] != p.m:
        raise ValueError(f"declared m={d['m']} but {p.m} zeros given")
    return p
