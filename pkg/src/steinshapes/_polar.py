"""Evaluation engine for polynomial-trigonometric fields on the plane.

A basis is a list of terms r^m cos(k theta) or r^m sin(k theta) with
m >= k >= 0 and m - k even (the parity class of polynomials in x, y).
Values, Cartesian gradients, polar-frame and Cartesian Hessians, and
Laplacians all have closed forms:

    f_r              = m r^{m-1} T(k theta)
    (1/r) f_theta    = r^{m-1} T'(k theta)
    H_rr             = m (m-1) r^{m-2} T
    H_rtheta         = (m-1) r^{m-2} T'          (frame component d/dr(f_theta/r))
    H_thetatheta     = (m - k^2) r^{m-2} T       (f_thetatheta/r^2 + f_r/r)
    Laplacian        = (m^2 - k^2) r^{m-2} T

Negative exponents only occur where the prefactor vanishes (m <= 1 with
the parity constraint), so powers are clipped at zero and the zero
multiplier keeps the arithmetic exact, including at r = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COS, SIN = 0, 1


class PolarBasis:
    """Fixed list of r^m trig(k theta) terms with vectorized evaluation."""

    def __init__(self, powers, freqs, kinds):
        self.powers = np.asarray(powers, dtype=float)
        self.freqs = np.asarray(freqs, dtype=float)
        self.kinds = np.asarray(kinds, dtype=int)
        if self.powers.shape != self.freqs.shape or self.powers.shape != self.kinds.shape:
            raise ValueError("term arrays must share a shape")
        if np.any((self.kinds == SIN) & (self.freqs == 0)):
            raise ValueError("sin terms need k >= 1")
        self._validate()

    def _validate(self):
        if np.any(self.freqs > self.powers) or np.any((self.powers - self.freqs) % 2 != 0):
            raise ValueError("terms must satisfy m >= k with m - k even")

    @property
    def n(self) -> int:
        return self.powers.size

    def describe(self) -> list[str]:
        out = []
        for m, k, kind in zip(self.powers, self.freqs, self.kinds):
            trig = "cos" if kind == COS else "sin"
            out.append(f"r^{int(m)} {trig}({int(k)}t)")
        return out

    # -- raw trig blocks ----------------------------------------------------

    def _trig(self, theta):
        ang = np.multiply.outer(theta, self.freqs)
        return np.where(self.kinds == COS, np.cos(ang), np.sin(ang))

    def _trig_d(self, theta):
        """d/dtheta of the trig factor (includes the k factor)."""
        ang = np.multiply.outer(theta, self.freqs)
        return np.where(
            self.kinds == COS,
            -self.freqs * np.sin(ang),
            self.freqs * np.cos(ang),
        )

    def _pow(self, r, shift: int):
        expo = np.maximum(self.powers - shift, 0.0)
        return np.asarray(r, dtype=float)[:, None] ** expo

    # -- evaluations, all shaped (N, n) -------------------------------------

    def values(self, r, theta):
        return self._pow(r, 0) * self._trig(theta)

    def radial_derivative(self, r, theta):
        return self.powers * self._pow(r, 1) * self._trig(theta)

    def angular_over_r(self, r, theta):
        """(1/r) d/dtheta, the thetahat gradient component."""
        return self._pow(r, 1) * self._trig_d(theta)

    def gradients(self, r, theta):
        """Cartesian gradients, shape (N, n, 2)."""
        fr = self.radial_derivative(r, theta)
        ftr = self.angular_over_r(r, theta)
        ct = np.cos(theta)[:, None]
        st = np.sin(theta)[:, None]
        return np.stack([fr * ct - ftr * st, fr * st + ftr * ct], axis=2)

    def hessian_frame(self, r, theta):
        """(H_rr, H_rtheta, H_thetatheta), each (N, n)."""
        p2 = self._pow(r, 2)
        t = self._trig(theta)
        td = self._trig_d(theta)
        m = self.powers
        k = self.freqs
        return (
            m * (m - 1.0) * p2 * t,
            (m - 1.0) * p2 * td,
            (m - k * k) * p2 * t,
        )

    def hessians(self, r, theta):
        """Cartesian Hessians, shape (N, n, 2, 2)."""
        hrr, hrt, htt = self.hessian_frame(r, theta)
        ct = np.cos(theta)[:, None]
        st = np.sin(theta)[:, None]
        hxx = ct * ct * hrr - 2.0 * ct * st * hrt + st * st * htt
        hxy = ct * st * (hrr - htt) + (ct * ct - st * st) * hrt
        hyy = st * st * hrr + 2.0 * ct * st * hrt + ct * ct * htt
        out = np.empty(hrr.shape + (2, 2))
        out[..., 0, 0] = hxx
        out[..., 0, 1] = hxy
        out[..., 1, 0] = hxy
        out[..., 1, 1] = hyy
        return out

    def laplacians(self, r, theta):
        m = self.powers
        k = self.freqs
        return (m * m - k * k) * self._pow(r, 2) * self._trig(theta)


def harmonic_basis(order: int, include_constant: bool = False) -> PolarBasis:
    """Harmonic polynomials r^k cos/sin(k theta) up to degree ``order``."""
    powers, freqs, kinds = [], [], []
    if include_constant:
        powers.append(0)
        freqs.append(0)
        kinds.append(COS)
    for k in range(1, order + 1):
        powers.extend([k, k])
        freqs.extend([k, k])
        kinds.extend([COS, SIN])
    return PolarBasis(powers, freqs, kinds)


def full_basis(order: int, include_constant: bool = False) -> PolarBasis:
    """All parity-admissible r^m trig(k theta) with m <= order."""
    powers, freqs, kinds = [], [], []
    if include_constant:
        powers.append(0)
        freqs.append(0)
        kinds.append(COS)
    for m in range(1, order + 1):
        for k in range(m % 2, m + 1, 2):
            if k == 0:
                powers.append(m)
                freqs.append(0)
                kinds.append(COS)
            else:
                powers.extend([m, m])
                freqs.extend([k, k])
                kinds.extend([COS, SIN])
    return PolarBasis(powers, freqs, kinds)


class LoosePolarBasis(PolarBasis):
    """Terms r^m trig(k theta) with m >= 2 and unrestricted frequency.

    Dropping the polynomial parity rule admits the low-power,
    high-frequency pairs that an angle-dependent coefficient excites;
    with m >= 2 every member keeps a continuous gradient and a bounded
    Hessian at the origin, so all evaluation formulas stay finite.
    """

    def _validate(self):
        if np.any(self.powers < 2):
            raise ValueError("loose terms need m >= 2")


class LogPolarBasis(PolarBasis):
    """Terms r^m log(r) trig(k theta) with m >= 2.

    The plain power family cannot produce a Laplacian proportional to
    r^{k-2} trig(k theta): the factor m^2 - k^2 vanishes exactly on the
    needed power m = k.  The log-weighted term fills that hole,

        Laplacian r^m log r trig = r^{m-2} ((m^2 - k^2) log r + 2 m) trig,

    so the resonant members (m = k) have purely polynomial Laplacians.
    Values and gradients vanish at the origin for every member; Hessian
    components of the m = 2 members diverge like log r there, which stays
    square integrable on the disk.
    """

    def _validate(self):
        if np.any(self.powers < 2):
            raise ValueError("log terms need m >= 2")

    def describe(self) -> list[str]:
        out = []
        for m, k, kind in zip(self.powers, self.freqs, self.kinds):
            trig = "cos" if kind == COS else "sin"
            out.append(f"r^{int(m)} log(r) {trig}({int(k)}t)")
        return out

    @staticmethod
    def _logr(r):
        # finite stand-in at r = 0; every use is multiplied by r^{m-2} >= r^0
        r = np.asarray(r, dtype=float)
        return np.log(np.maximum(r, np.finfo(float).tiny))[:, None]

    def values(self, r, theta):
        return self._pow(r, 0) * self._logr(r) * self._trig(theta)

    def radial_derivative(self, r, theta):
        lg = self._logr(r)
        return self._pow(r, 1) * (self.powers * lg + 1.0) * self._trig(theta)

    def angular_over_r(self, r, theta):
        return self._pow(r, 1) * self._logr(r) * self._trig_d(theta)

    def hessian_frame(self, r, theta):
        p2 = self._pow(r, 2)
        lg = self._logr(r)
        t = self._trig(theta)
        td = self._trig_d(theta)
        m = self.powers
        k = self.freqs
        return (
            p2 * (m * (m - 1.0) * lg + 2.0 * m - 1.0) * t,
            p2 * ((m - 1.0) * lg + 1.0) * td,
            p2 * ((m - k * k) * lg + 1.0) * t,
        )

    def laplacians(self, r, theta):
        m = self.powers
        k = self.freqs
        lg = self._logr(r)
        return self._pow(r, 2) * ((m * m - k * k) * lg + 2.0 * m) * self._trig(theta)


class CompositeBasis:
    """Concatenation of bases, exposing the same evaluation protocol."""

    def __init__(self, *parts):
        if not parts:
            raise ValueError("need at least one part")
        self.parts = parts

    @property
    def n(self) -> int:
        return sum(p.n for p in self.parts)

    def describe(self) -> list[str]:
        return [line for p in self.parts for line in p.describe()]

    def _cat(self, name: str, r, theta):
        return np.concatenate(
            [getattr(p, name)(r, theta) for p in self.parts], axis=1
        )

    def values(self, r, theta):
        return self._cat("values", r, theta)

    def radial_derivative(self, r, theta):
        return self._cat("radial_derivative", r, theta)

    def angular_over_r(self, r, theta):
        return self._cat("angular_over_r", r, theta)

    def gradients(self, r, theta):
        return self._cat("gradients", r, theta)

    def hessians(self, r, theta):
        return self._cat("hessians", r, theta)

    def hessian_frame(self, r, theta):
        blocks = [p.hessian_frame(r, theta) for p in self.parts]
        return tuple(
            np.concatenate([b[i] for b in blocks], axis=1) for i in range(3)
        )

    def laplacians(self, r, theta):
        return self._cat("laplacians", r, theta)


def cascade_basis(order: int, mixed: bool = True) -> CompositeBasis:
    """Polynomial family closed under angle-coupled corrections.

    An interior operator whose coefficients depend on the polar angle
    couples a polynomial datum to frequencies outside the polynomial
    parity class and resonates on the pairs m = k, whose Poisson
    preimages carry a log weight.  Per frequency k this basis therefore
    extends ``full_basis(order)`` with the power m = k - 2 and the
    log-weighted powers m in {k - 2, k, k + 2}; with ``mixed`` it also
    admits the parity-breaking shells m in {k - 7, k - 5, k - 1, k + 1}
    and m = k - 4 that boundaries with odd harmonics excite.  Powers
    inside each family stay two apart, which keeps the collocation Gram
    matrices away from the ill conditioning of consecutive-power sets.
    """
    if order < 2:
        raise ValueError(f"cascade basis needs order >= 2, got {order}")
    loose = ([], [], [])
    logged = ([], [], [])

    def add(store, m: int, k: int) -> None:
        if m < 2 or m > order or k > order:
            return
        for kind in (COS,) if k == 0 else (COS, SIN):
            store[0].append(m)
            store[1].append(k)
            store[2].append(kind)

    for k in range(0, order + 1):
        add(loose, k - 2, k)
        for shift in (-2, 0, 2):
            add(logged, k + shift, k)
        if mixed:
            add(loose, k - 4, k)
            for offset in (-7, -5, -1, 1):
                add(loose, k + offset, k)
    return CompositeBasis(
        full_basis(order),
        LoosePolarBasis(*loose),
        LogPolarBasis(*logged),
    )


def to_polar(points) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(points, dtype=float)
    return np.hypot(p[..., 0], p[..., 1]), np.arctan2(p[..., 1], p[..., 0])


@dataclass(frozen=True)
class PolarField:
    """A fixed linear combination over a PolarBasis."""

    basis: PolarBasis
    coeffs: np.ndarray

    def value_polar(self, r, theta):
        return self.basis.values(r, theta) @ self.coeffs

    def value(self, points):
        return self.value_polar(*to_polar(points))

    def gradient_polar(self, r, theta):
        return np.einsum("njd,j->nd", self.basis.gradients(r, theta), self.coeffs)

    def gradient(self, points):
        return self.gradient_polar(*to_polar(points))

    def hessian_polar(self, r, theta):
        return np.einsum("njab,j->nab", self.basis.hessians(r, theta), self.coeffs)

    def hessian(self, points):
        return self.hessian_polar(*to_polar(points))

    def laplacian_polar(self, r, theta):
        return self.basis.laplacians(r, theta) @ self.coeffs

    def laplacian(self, points):
        return self.laplacian_polar(*to_polar(points))

    def radial_derivative(self, r, theta):
        return self.basis.radial_derivative(r, theta) @ self.coeffs
