"""Poincare ball geometry: Poisson kernel, visual metrics, Moebius maps.

Functions are vectorised over numpy arrays whose last axis has length n+1
(points of the ball or its boundary sphere S^n).  Squared distances to
boundary points are expanded as |x|^2 - 2<x,xi> + 1, which makes the
identities at the origin exact in floating point and avoids cancellation
near the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GUARD = 1e-12


@dataclass(frozen=True)
class BallPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", c)
        if np.linalg.norm(c) >= 1.0 - GUARD:
            raise ValueError("point is outside the guarded open ball")

    @property
    def dimension(self) -> int:
        return self.coords.shape[-1] - 1


@dataclass(frozen=True)
class BoundaryPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", c)
        if abs(np.linalg.norm(c) - 1.0) >= GUARD:
            raise ValueError("point is not on the unit sphere")


def _arr(p):
    if isinstance(p, (BallPoint, BoundaryPoint)):
        return p.coords
    return np.asarray(p, dtype=float)


def boundary_sq_dist(x, xi):
    """|x - xi|^2 for xi on the unit sphere, via |x|^2 - 2<x, xi> + 1."""
    x, xi = _arr(x), _arr(xi)
    nx2 = np.sum(x * x, axis=-1)
    return nx2 - 2.0 * np.sum(x * xi, axis=-1) + 1.0


def poisson_kernel(x, xi):
    """P(x, xi) = (1 - |x|^2) / |x - xi|^2; identically 1 at the origin."""
    x = _arr(x)
    nx2 = np.sum(x * x, axis=-1)
    return (1.0 - nx2) / boundary_sq_dist(x, xi)


def visual_metric(x, xi, eta):
    """d_x(xi, eta) = P(x,xi)^(1/2) P(x,eta)^(1/2) |xi - eta|."""
    xi_a, eta_a = _arr(xi), _arr(eta)
    base = np.linalg.norm(xi_a - eta_a, axis=-1)
    return np.sqrt(poisson_kernel(x, xi) * poisson_kernel(x, eta)) * base


def harmonic_measure_density(x, xi, n: int | None = None):
    """Density of the harmonic measure at x against the round measure: P^n."""
    x = _arr(x)
    if n is None:
        n = x.shape[-1] - 1
    return poisson_kernel(x, xi) ** n


def sample_harmonic_measure(x, rng: np.random.Generator, samples: int = 1):
    """Uniform boundary samples with importance weights P(x, .)^n.

    Weights average to 1, making weighted averages estimate integrals
    against the harmonic measure at x.
    """
    x = _arr(x)
    dim = x.shape[-1]
    xi = uniform_sphere(rng, samples, dim)
    w = harmonic_measure_density(x, xi, dim - 1)
    return xi, w


def uniform_sphere(rng: np.random.Generator, samples: int, dim: int) -> np.ndarray:
    v = rng.normal(size=(samples, dim))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def radial_distance(x):
    """Hyperbolic distance to the origin: log((1+|x|)^2/(1-|x|^2))."""
    r = np.linalg.norm(_arr(x), axis=-1)
    return np.log((1.0 + r) ** 2 / (1.0 - r * r))


def u_functions(x, xi):
    """The bounded frame coefficients of the Poisson-kernel gradient.

    u_i(x, xi) = ((xi_i - x_i)(1 - |x|^2) - x_i |xi - x|^2) / |x - xi|^2.
    Unit vectors: sum u_i^2 = 1, and coordinatewise differences recover the
    visual metric.
    """
    x, xi = _arr(x), _arr(xi)
    nx2 = np.sum(x * x, axis=-1, keepdims=True)
    d2 = boundary_sq_dist(x, xi)[..., None]
    return ((xi - x) * (1.0 - nx2) - x * d2) / d2


@dataclass(frozen=True)
class MoebiusMap:
    """rotation composed with the standard ball automorphism sending a to 0.

    The automorphism is T_a(x) = ((1-|a|^2)(x-a) - |x-a|^2 a) / D(x) with
    D(x) = 1 - 2<x,a> + |x|^2 |a|^2; its conformal factor is
    (1-|a|^2)/D(x), which on the boundary equals the Poisson kernel P(a, .).
    """

    rotation: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float)
        a = np.asarray(self.a, dtype=float)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "a", a)
        if not np.allclose(R @ R.T, np.eye(R.shape[0]), atol=1e-12):
            raise ValueError("rotation must be orthogonal")
        if np.linalg.norm(a) >= 1.0 - GUARD:
            raise ValueError("translation parameter must be inside the ball")

    def _denominator(self, x):
        na2 = float(np.dot(self.a, self.a))
        nx2 = np.sum(x * x, axis=-1)
        return 1.0 - 2.0 * np.sum(x * self.a, axis=-1) + nx2 * na2

    def apply(self, p):
        x = _arr(p)
        a = self.a
        na2 = float(np.dot(a, a))
        diff = x - a
        nd2 = np.sum(diff * diff, axis=-1, keepdims=True)
        num = (1.0 - na2) * diff - nd2 * a
        out = num / self._denominator(x)[..., None]
        return out @ self.rotation.T

    def conformal_factor(self, p):
        """Linear stretch |g'(x)|; equals P(a, x) for boundary x."""
        x = _arr(p)
        na2 = float(np.dot(self.a, self.a))
        return (1.0 - na2) / self._denominator(x)

    @staticmethod
    def translation_to_origin(a) -> "MoebiusMap":
        a = np.asarray(a, dtype=float)
        return MoebiusMap(np.eye(a.shape[-1]), a)

    @staticmethod
    def translation_from_origin(a) -> "MoebiusMap":
        """A map sending 0 to a (the automorphism with parameter -a)."""
        a = np.asarray(a, dtype=float)
        return MoebiusMap(np.eye(a.shape[-1]), -a)

    @staticmethod
    def random(rng: np.random.Generator, dim: int, max_radius: float = 0.8) -> "MoebiusMap":
        q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        direction = uniform_sphere(rng, 1, dim)[0]
        a = direction * (max_radius * rng.random() ** (1.0 / dim))
        return MoebiusMap(q, a)


def hyperbolic_distance(x, y):
    """d(x, y) via a Moebius map moving y to the origin."""
    y = _arr(y)
    if np.linalg.norm(y) == 0.0:
        return radial_distance(x)
    g = MoebiusMap.translation_to_origin(y)
    return radial_distance(g.apply(x))


def geodesic_ray_points(x, direction, times):
    """Points along the unit-speed geodesic from x toward a boundary direction.

    direction is a unit vector in the chart where x sits at the origin; the
    returned points are images under the translation moving 0 to x.
    """
    times = np.asarray(times, dtype=float)
    radii = np.tanh(times / 2.0)
    x = _arr(x)
    pts = radii[:, None] * np.asarray(direction, dtype=float)[None, :]
    if np.linalg.norm(x) == 0.0:
        return pts
    h = MoebiusMap.translation_from_origin(x)
    return h.apply(pts)
