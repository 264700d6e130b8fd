"""Deterministic quadrature on circles, discs, and torus shells.

Circle integrals use the equispaced trapezoid rule, which is exact for
trigonometric polynomials of degree below the node count and spectrally
accurate for integrands that extend analytically past the circle.  Disc
volumes are integrated in polar form: Gauss-Legendre panels in the radius
with dyadic panel boundaries 1 - 2^-k concentrated toward the rim, times
an equispaced angular rule.  Torus shells in several variables take tensor
products of circle rules.

Everything here is binary64 and deterministic: node construction, chunking
and accumulation order are fixed functions of the rule parameters, so two
runs with the same inputs produce bit-identical values.  Refinement always
proceeds by doubling, via :func:`refine_until`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi

# Keep vectorized evaluation blocks below ~4M points so big rules do not
# allocate multi-GB scratch arrays.  Fixed constant, hence deterministic.
_CHUNK = 1 << 22


def angular_floor(spike: float | None, *, base: int = 4096, scale: float = 64.0) -> int:
    """Initial node count for circle rules, raised when a spike is declared.

    ``spike`` is the modulus of a pole-like parameter sitting at distance
    1 - |spike| from the unit circle; resolving the induced boundary spike
    needs on the order of 1/(1 - |spike|) angular nodes.
    """
    if spike is None:
        return int(base)
    s = abs(spike)
    if s >= 1.0:
        raise ValueError(f"spike modulus must be < 1, got {s}")
    return max(int(base), int(np.ceil(scale / (1.0 - s))))


@dataclass(frozen=True)
class CircleRule:
    """Equispaced trapezoid rule with ``nodes`` points on ``|z| = radius``."""

    radius: float
    nodes: int

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.nodes < 1:
            raise ValueError(f"node count must be >= 1, got {self.nodes}")

    def points(self) -> np.ndarray:
        theta = TWO_PI * np.arange(self.nodes) / self.nodes
        return self.radius * np.exp(1j * theta)


def integrate_circle(g: Callable, rule: CircleRule) -> complex:
    """Approximate (1/2pi) * integral of g(radius * e^{i theta}) d theta."""
    vals = np.asarray(g(rule.points()), dtype=np.complex128)
    return complex(np.sum(vals) / rule.nodes)


def dyadic_panels(r_max: float, depth: int) -> np.ndarray:
    """Panel boundaries 0, r(1-2^-1), ..., r(1-2^-depth), r."""
    if not 0.0 < r_max:
        raise ValueError(f"r_max must be positive, got {r_max}")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    inner = [r_max * (1.0 - 2.0 ** -k) for k in range(1, depth + 1)]
    return np.array([0.0] + inner + [r_max])


def _panel_gauss(bounds: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    nodes = []
    weights = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(half * x + 0.5 * (hi + lo))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True, eq=False)
class PolarDiscRule:
    """Polar product rule for volume integrals over ``|z| < r_max``.

    ``radial_weights`` already contain the polar Jacobian r, so the rule
    value is sum_i sum_k  w_i * (2pi/M) * g(r_i e^{i theta_k}).
    """

    r_max: float
    depth: int
    order: int
    angular: int
    radial_nodes: np.ndarray
    radial_weights: np.ndarray

    @classmethod
    def build(cls, r_max: float = 1.0, depth: int = 6, order: int = 64,
              angular: int = 4096) -> "PolarDiscRule":
        if not 0.0 < r_max <= 1.0:
            raise ValueError(f"r_max must lie in (0, 1], got {r_max}")
        if order < 1 or angular < 1:
            raise ValueError("order and angular node count must be >= 1")
        bounds = dyadic_panels(r_max, depth)
        nodes, weights = _panel_gauss(bounds, order)
        return cls(r_max=r_max, depth=depth, order=order, angular=angular,
                   radial_nodes=nodes, radial_weights=weights * nodes)

    @property
    def total_nodes(self) -> int:
        return self.radial_nodes.size * self.angular


def integrate_disc(g: Callable, rule: PolarDiscRule) -> float:
    """Approximate the volume integral of a real integrand over the disc."""
    m = rule.angular
    theta = TWO_PI * np.arange(m) / m
    phases = np.exp(1j * theta)
    r = rule.radial_nodes
    wr = rule.radial_weights
    chunk = max(1, _CHUNK // m)
    total = 0.0
    for start in range(0, r.size, chunk):
        z = r[start:start + chunk, None] * phases[None, :]
        vals = np.asarray(g(z))
        total += float(np.sum(wr[start:start + chunk] * np.sum(vals.real, axis=1)))
    return total * (TWO_PI / m)


@dataclass(frozen=True)
class TorusRule:
    """Tensor trapezoid rule on the shell r * T^n."""

    radii: tuple[float, ...]
    angular: tuple[int, ...]

    def __post_init__(self):
        if len(self.radii) != len(self.angular):
            raise ValueError("radii and angular node counts must align")
        if any(r < 0.0 for r in self.radii):
            raise ValueError("shell radii must be nonnegative")
        if any(m < 1 for m in self.angular):
            raise ValueError("angular node counts must be >= 1")

    @property
    def dim(self) -> int:
        return len(self.radii)

    def axes(self) -> list[np.ndarray]:
        out = []
        for r, m in zip(self.radii, self.angular):
            theta = TWO_PI * np.arange(m) / m
            out.append(r * np.exp(1j * theta))
        return out


def integrate_torus(g: Callable, rule: TorusRule) -> complex:
    """Approximate the unnormalized integral over the torus shell.

    The integrand is called as ``g(z1, ..., zn)`` with broadcastable
    coordinate arrays; the result approximates the d theta_1 ... d theta_n
    integral with total mass (2pi)^n, no normalization.
    """
    axes = rule.axes()
    n = rule.dim
    shaped = []
    for j, ax in enumerate(axes):
        shape = [1] * n
        shape[j] = ax.size
        shaped.append(ax.reshape(shape))
    m0 = axes[0].size
    rest = 1
    for ax in axes[1:]:
        rest *= ax.size
    chunk = max(1, _CHUNK // max(rest, 1))
    total = 0.0 + 0.0j
    for start in range(0, m0, chunk):
        first = shaped[0][start:start + chunk]
        vals = np.asarray(g(first, *shaped[1:]), dtype=np.complex128)
        total += np.sum(vals)
    weight = 1.0
    for m in rule.angular:
        weight *= TWO_PI / m
    return complex(total * weight)


@dataclass
class RefinementReport:
    """Outcome of a doubling refinement."""

    value: complex
    node_counts: tuple[int, ...]
    rel_change: float
    converged: bool
    levels: int


def refine_until(integrator: Callable[[int], tuple[complex, Sequence[int]]],
                 tol: float, cap: int = 1 << 20,
                 max_levels: int = 40) -> RefinementReport:
    """Refine by doubling until successive values agree to ``tol`` (relative).

    ``integrator(level)`` evaluates the quantity at refinement level
    ``level`` (level k doubles the node counts of level k-1) and returns
    ``(value, node_counts)``.  Stops with ``converged=False`` when the node
    budget ``cap`` (product of node counts) is exceeded or a value comes
    back non-finite.
    """
    value, nodes = integrator(0)
    nodes = tuple(int(m) for m in nodes)
    prev = complex(value)
    if not (np.isfinite(prev.real) and np.isfinite(prev.imag)):
        return RefinementReport(prev, nodes, np.inf, False, 0)
    rel = np.inf
    for level in range(1, max_levels + 1):
        value, nodes = integrator(level)
        nodes = tuple(int(m) for m in nodes)
        value = complex(value)
        if not (np.isfinite(value.real) and np.isfinite(value.imag)):
            return RefinementReport(value, nodes, np.inf, False, level)
        diff = abs(value - prev)
        rel = 0.0 if diff == 0.0 else diff / max(abs(value), 1e-300)
        if rel <= tol:
            return RefinementReport(value, nodes, rel, True, level)
        budget = 1
        for m in nodes:
            budget *= m
        if budget >= cap:
            return RefinementReport(value, nodes, rel, False, level)
        prev = value
    return RefinementReport(prev, nodes, rel, False, max_levels)
