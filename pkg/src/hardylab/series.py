"""Power series, Taylor partial sums, and contour coefficient recovery.

Two routes to the same partial sum are kept side by side on purpose:
truncating the coefficient sequence, and applying the discrete Cauchy
integral with the truncated geometric kernel

    sum_{j=0..N} z^j / xi^(j+1)  =  (1 - (z/xi)^(N+1)) / (xi - z).

Their pointwise agreement on polynomial batteries is one of the standing
cross-checks of the package.  Coefficients are recovered from point values
by the trapezoid discretization of the Cauchy integral,

    a_j ~ (1/M) sum_k f(R w^k) w^(-jk) / R^j,   w = e^(2 pi i / M),

which is exact for polynomials of degree below M and is refined by node
doubling otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import (AliasingError, CoefficientUnavailable, NonConvergenceError,
                     SingularKernelError)

_polyval = np.polynomial.polynomial.polyval


def _f17(x: float) -> str:
    return format(float(x), ".17g")


class PowerSeries:
    """A one-variable Taylor series sum a_k z^k.

    Coefficients come either from a stored finite list (a polynomial) or
    from a generator function ``k -> a_k`` memoized on demand.  An optional
    ``closed_form`` callable provides fast evaluation; ``spike`` declares
    the modulus of a pole-like parameter so norm quadratures can set their
    angular node floors.
    """

    def __init__(self, *, coefficients=None, coefficient_fn=None, degree=None,
                 closed_form=None, spike=None, label=None):
        if (coefficients is None) == (coefficient_fn is None):
            raise ValueError("give exactly one of coefficients / coefficient_fn")
        self.closed_form = closed_form
        self.spike = spike
        self.label = label
        if coefficients is not None:
            coeffs = [complex(c) for c in coefficients]
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            if coeffs == [0j]:
                self._degree = -1
            else:
                self._degree = len(coeffs) - 1
            self._cache = coeffs
            self._fn = None
        else:
            self._fn = coefficient_fn
            self._cache = []
            self._degree = degree

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[complex], **kw) -> "PowerSeries":
        return cls(coefficients=list(coefficients), **kw)

    @classmethod
    def from_generator(cls, coefficient_fn: Callable[[int], complex],
                       degree: int | None = None, **kw) -> "PowerSeries":
        return cls(coefficient_fn=coefficient_fn, degree=degree, **kw)

    @property
    def degree(self) -> int | None:
        """Largest index with nonzero coefficient; -1 for the zero series,
        None when the series is not known to be a polynomial."""
        return self._degree

    @property
    def is_polynomial(self) -> bool:
        return self._degree is not None

    def coefficient(self, k: int) -> complex:
        if k < 0:
            raise ValueError(f"coefficient index must be >= 0, got {k}")
        if self._fn is None:
            return self._cache[k] if k < len(self._cache) else 0j
        while len(self._cache) <= k:
            i = len(self._cache)
            if self._degree is not None and i > self._degree:
                self._cache.append(0j)
                continue
            try:
                self._cache.append(complex(self._fn(i)))
            except Exception as exc:
                raise CoefficientUnavailable(
                    f"coefficient generator failed at index {i}") from exc
        return self._cache[k]

    def coefficients(self, upto: int) -> np.ndarray:
        return np.array([self.coefficient(k) for k in range(upto + 1)],
                        dtype=np.complex128)

    def __call__(self, z):
        if self.closed_form is not None:
            return self.closed_form(z)
        if self.is_polynomial:
            d = max(self._degree, 0)
            return _polyval(np.asarray(z, dtype=np.complex128),
                            self.coefficients(d))
        return self.eval_by_coefficients(z)

    def eval_by_coefficients(self, z, tol: float = 5e-16, max_terms: int = 200000):
        """Sum the series termwise; valid strictly inside the radius of
        convergence, where terms decay geometrically."""
        z = np.asarray(z, dtype=np.complex128)
        if self.is_polynomial:
            return _polyval(z, self.coefficients(max(self._degree, 0)))
        acc = np.zeros_like(z)
        power = np.ones_like(z)
        quiet = 0
        # overflow is the divergence signal here, not an anomaly
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(max_terms):
                term = self.coefficient(k) * power
                acc = acc + term
                scale = float(np.max(np.abs(acc)))
                if not np.isfinite(scale):
                    raise NonConvergenceError(
                        "series terms overflowed; point is outside the "
                        "convergence radius")
                if float(np.max(np.abs(term))) <= tol * max(scale, 1e-300):
                    quiet += 1
                    if quiet >= 4 and k >= 8:
                        return acc
                else:
                    quiet = 0
                power = power * z
        raise NonConvergenceError(
            "series evaluation did not stabilize; point may be outside the "
            "convergence radius")

    def to_multi_index(self) -> "MultiIndexSeries":
        if not self.is_polynomial:
            raise ValueError("only polynomial series convert to finite "
                             "multi-index form")
        coeffs = {(k,): self.coefficient(k)
                  for k in range(max(self._degree, 0) + 1)
                  if self.coefficient(k) != 0}
        if not coeffs:
            coeffs = {(0,): 0j}
        return MultiIndexSeries(1, coeffs, closed_form=self.closed_form,
                                spike=self.spike, label=self.label)


class MultiIndexSeries:
    """A several-variable series sum a_alpha z^alpha with finite support.

    ``coefficients`` maps multi-indices (tuples of length ``dim``) to
    complex values.  ``inf_degree`` bounds max_j alpha_j over the support.
    """

    def __init__(self, dim: int, coefficients: Mapping[tuple, complex], *,
                 inf_degree: int | None = None, closed_form=None, spike=None,
                 label=None):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        clean = {}
        support_max = 0
        for alpha, val in coefficients.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dim or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dim {dim}")
            c = complex(val)
            if c != 0:
                clean[alpha] = c
                support_max = max(support_max, max(alpha))
        self.coeffs = clean
        if inf_degree is not None and inf_degree < support_max:
            raise ValueError("inf_degree must dominate max_j alpha_j")
        self.inf_degree = support_max if inf_degree is None else int(inf_degree)
        self.closed_form = closed_form
        self.spike = spike
        self.label = label

    def coefficient(self, alpha) -> complex:
        return self.coeffs.get(tuple(int(a) for a in alpha), 0j)

    def support(self) -> list[tuple]:
        return sorted(self.coeffs)

    def dense(self) -> np.ndarray:
        shape = tuple(self.inf_degree + 1 for _ in range(self.dim))
        out = np.zeros(shape, dtype=np.complex128)
        for alpha, c in self.coeffs.items():
            out[alpha] = c
        return out

    def __call__(self, *zs):
        if self.closed_form is not None:
            return self.closed_form(*zs)
        if len(zs) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(zs)}")
        zs = [np.asarray(z, dtype=np.complex128) for z in zs]
        if self.dim > 1:
            # the polyval helpers require equal shapes, not broadcastable ones
            zs = np.broadcast_arrays(*zs)
        c = self.dense()
        if self.dim == 1:
            return _polyval(zs[0], c)
        if self.dim == 2:
            return np.polynomial.polynomial.polyval2d(zs[0], zs[1], c)
        if self.dim == 3:
            return np.polynomial.polynomial.polyval3d(zs[0], zs[1], zs[2], c)
        out = np.zeros(np.broadcast(*zs).shape, dtype=np.complex128)
        for alpha, coef in sorted(self.coeffs.items()):
            term = np.full_like(out, coef)
            for z, a in zip(zs, alpha):
                if a:
                    term = term * z ** a
            out = out + term
        return out

    def eval_grid(self, axes: list[np.ndarray]) -> np.ndarray:
        """Evaluate on the tensor grid axes[0] x ... x axes[n-1].

        Contracts the dense coefficient tensor with one Vandermonde matrix
        per coordinate; output axis j runs over axes[j].
        """
        if len(axes) != self.dim:
            raise ValueError("one axis per coordinate required")
        t = self.dense()
        for j in range(self.dim):
            ax = np.asarray(axes[j], dtype=np.complex128)
            vand = ax[:, None] ** np.arange(self.inf_degree + 1)[None, :]
            t = np.moveaxis(np.tensordot(vand, t, axes=(1, j)), 0, j)
        return t

    def to_power_series(self) -> PowerSeries:
        if self.dim != 1:
            raise ValueError("only dim-1 series convert to PowerSeries")
        d = max((a[0] for a in self.coeffs), default=0)
        coeffs = [self.coefficient((k,)) for k in range(d + 1)]
        return PowerSeries.from_coefficients(coeffs, closed_form=self.closed_form,
                                             spike=self.spike, label=self.label)

    @classmethod
    def from_power_series(cls, ps: PowerSeries) -> "MultiIndexSeries":
        return ps.to_multi_index()


@dataclass(frozen=True)
class PartialSumReport:
    """A constructed partial sum together with how it was built."""

    N: int
    series: PowerSeries
    method: str                      # "truncation" or "contour"
    contour_radius: float | None = None


def partial_sum(f: PowerSeries, N: int) -> PowerSeries:
    """Coefficient truncation S_N f = sum_{k<=N} a_k z^k."""
    if N < 0:
        raise ValueError(f"partial sum order must be >= 0, got {N}")
    coeffs = f.coefficients(N)
    return PowerSeries.from_coefficients(coeffs, spike=f.spike,
                                         label=None if f.label is None
                                         else f"S{N}[{f.label}]")


def square_partial_sum(F: MultiIndexSeries, N: int) -> MultiIndexSeries:
    """Keep the multi-indices with max_j alpha_j <= N."""
    if N < 0:
        raise ValueError(f"partial sum order must be >= 0, got {N}")
    kept = {a: c for a, c in F.coeffs.items() if max(a) <= N}
    return MultiIndexSeries(F.dim, kept, spike=F.spike,
                            label=None if F.label is None
                            else f"S{N}[{F.label}]")


def _circle_modes(f: Callable, radius: float, m: int) -> np.ndarray:
    theta = (2.0 * np.pi) * np.arange(m) / m
    vals = np.asarray(f(radius * np.exp(1j * theta)), dtype=np.complex128)
    if vals.shape != (m,):
        vals = np.broadcast_to(vals, (m,)).astype(np.complex128)
    return np.fft.fft(vals) / m


def extract_coefficient(f: Callable, j: int, contour_radius: float = 0.75, *,
                        tol: float = 1e-12, cap: int = 1 << 20,
                        start_nodes: int | None = None) -> complex:
    """Recover the j-th Taylor coefficient of f from circle samples.

    Node count starts at max(256, 4(j+1)) and doubles until two successive
    extractions agree to ``tol`` relative; raises on budget exhaustion.
    """
    if j < 0:
        raise ValueError(f"coefficient index must be >= 0, got {j}")
    if contour_radius <= 0.0:
        raise ValueError("contour radius must be positive")
    m = start_nodes if start_nodes is not None else max(256, 4 * (j + 1))
    if m <= j:
        raise AliasingError(
            f"{m} nodes alias mode {j}; need node count > {j}")
    scale_pow = contour_radius ** (-j)
    prev = None
    prev_scale = 1.0
    while m <= cap:
        theta = (2.0 * np.pi) * np.arange(m) / m
        pts = contour_radius * np.exp(1j * theta)
        vals = np.asarray(f(pts), dtype=np.complex128)
        if vals.shape != (m,):
            vals = np.broadcast_to(vals, (m,)).astype(np.complex128)
        val = complex(np.sum(vals * np.exp(-1j * j * theta)) / m) * scale_pow
        scale = float(np.mean(np.abs(vals))) * scale_pow
        if prev is not None:
            floor = 1e-12 * max(scale, prev_scale) + 1e-300
            if abs(val - prev) <= tol * max(abs(val), floor):
                return val
        prev, prev_scale = val, scale
        m *= 2
    raise NonConvergenceError(
        f"coefficient extraction did not stabilize within {cap} nodes")


def block_coefficients(f: Callable, upto: int, contour_radius: float = 0.75, *,
                       tol: float = 1e-12, cap: int = 1 << 20) -> np.ndarray:
    """Recover coefficients 0..upto at once via the FFT of circle samples."""
    if upto < 0:
        raise ValueError("upto must be >= 0")
    m = max(256, 4 * (upto + 1))
    scale = contour_radius ** (-np.arange(upto + 1, dtype=np.float64))
    prev = None
    while m <= cap:
        modes = _circle_modes(f, contour_radius, m)[:upto + 1] * scale
        if prev is not None:
            num = float(np.max(np.abs(modes - prev)))
            den = max(float(np.max(np.abs(modes))), 1e-300)
            if num <= tol * den:
                return modes
        prev = modes
        m *= 2
    raise NonConvergenceError(
        f"block extraction did not stabilize within {cap} nodes")


def block_coefficients_nd(f: Callable, upto: int, dim: int,
                          contour_radius: float = 0.75, *, tol: float = 1e-12,
                          cap_per_axis: int = 1 << 14) -> np.ndarray:
    """Tensor variant of :func:`block_coefficients` for ``dim`` variables.

    Returns the coefficient tensor for 0 <= alpha_j <= upto, computed by an
    n-dimensional FFT of values on a tensor contour grid, doubling all axes
    until the kept block stabilizes.
    """
    if upto < 0 or dim < 1:
        raise ValueError("upto must be >= 0 and dim >= 1")
    m = max(64, 4 * (upto + 1))
    scale_1d = contour_radius ** (-np.arange(upto + 1, dtype=np.float64))
    prev = None
    while m <= cap_per_axis:
        theta = (2.0 * np.pi) * np.arange(m) / m
        ax = contour_radius * np.exp(1j * theta)
        grids = []
        for j in range(dim):
            shape = [1] * dim
            shape[j] = m
            grids.append(ax.reshape(shape))
        vals = np.asarray(f(*grids), dtype=np.complex128)
        vals = np.broadcast_to(vals, (m,) * dim)
        modes = np.fft.fftn(vals) / (m ** dim)
        block = modes[(slice(0, upto + 1),) * dim].copy()
        for j in range(dim):
            shape = [1] * dim
            shape[j] = upto + 1
            block *= scale_1d.reshape(shape)
        if prev is not None:
            num = float(np.max(np.abs(block - prev)))
            den = max(float(np.max(np.abs(block))), 1e-300)
            if num <= tol * den:
                return block
        prev = block
        m *= 2
    raise NonConvergenceError(
        f"tensor block extraction did not stabilize within {cap_per_axis} "
        "nodes per axis")


def kernel_identity_check(z: complex, xi: complex, N: int) -> float:
    """Absolute gap between the truncated geometric kernel written as a sum
    and in closed form; zero up to roundoff whenever xi != 0, xi != z."""
    if N < 0:
        raise ValueError(f"kernel order must be >= 0, got {N}")
    z = complex(z)
    xi = complex(xi)
    if xi == 0:
        raise SingularKernelError("kernel undefined at xi = 0")
    if xi == z:
        raise SingularKernelError("kernel undefined at xi = z")
    powers = np.arange(N + 1)
    direct = complex(np.sum(z ** powers / xi ** (powers + 1)))
    closed = (1.0 - (z / xi) ** (N + 1)) / (xi - z)
    return abs(direct - closed)


def partial_sum_kernel(f: Callable, N: int, z, contour_radius: float | None = None,
                       *, tol: float = 1e-12, cap: int = 1 << 20):
    """Evaluate (S_N f)(z) through the discrete Cauchy integral with the
    truncated geometric kernel, refining the contour rule by doubling.

    ``z`` may be a scalar or an array of points strictly inside the contour.
    """
    if N < 0:
        raise ValueError(f"partial sum order must be >= 0, got {N}")
    z = np.asarray(z, dtype=np.complex128)
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    radius = (1.0 + zmax) / 2.0 if contour_radius is None else float(contour_radius)
    if radius <= 0.0:
        raise ValueError("contour radius must be positive")
    if zmax >= radius:
        raise ValueError(
            f"evaluation points must satisfy |z| < contour radius {radius}")
    m = max(256, 4 * (N + 1))
    zcol = z.reshape(-1, 1)
    prev = None
    while m <= cap:
        theta = (2.0 * np.pi) * np.arange(m) / m
        xi = radius * np.exp(1j * theta)
        fvals = np.asarray(f(xi), dtype=np.complex128)
        if fvals.shape != (m,):
            fvals = np.broadcast_to(fvals, (m,)).astype(np.complex128)
        kern = (1.0 - (zcol / xi[None, :]) ** (N + 1)) / (xi[None, :] - zcol)
        vals = (fvals[None, :] * xi[None, :] * kern).sum(axis=1) / m
        fscale = float(np.mean(np.abs(fvals)))
        if prev is not None:
            num = float(np.max(np.abs(vals - prev)))
            den = max(float(np.max(np.abs(vals))), 1e-3 * fscale, 1e-300)
            if num <= tol * den:
                out = vals.reshape(z.shape)
                return complex(out) if out.ndim == 0 else out
        prev = vals
        m *= 2
    raise NonConvergenceError(
        f"kernel partial sum did not stabilize within {cap} contour nodes")


def partial_sum_with_report(f, N: int, method: str = "truncation", *,
                            contour_radius: float = 0.75,
                            evaluator: Callable | None = None,
                            tol: float = 1e-12) -> PartialSumReport:
    """Build S_N f as a polynomial by either construction route."""
    if method == "truncation":
        return PartialSumReport(N=N, series=partial_sum(f, N), method=method)
    if method == "contour":
        g = evaluator
        if g is None:
            g = f if callable(f) else None
        if g is None:
            raise ValueError("contour construction needs an evaluator")
        coeffs = block_coefficients(g, N, contour_radius, tol=tol)
        series = PowerSeries.from_coefficients(coeffs,
                                               spike=getattr(f, "spike", None))
        return PartialSumReport(N=N, series=series, method=method,
                                contour_radius=contour_radius)
    raise ValueError(f"unknown construction method {method!r}")


# ---------------------------------------------------------------------------
# JSON serialization: {"dim": n, "coeffs": [[alpha_1..alpha_n, re, im], ...]}
# in lexicographic multi-index order, floats with 17 significant digits.
# ---------------------------------------------------------------------------

def series_to_json(s) -> str:
    if isinstance(s, PowerSeries):
        if not s.is_polynomial:
            raise ValueError("only finitely supported series serialize")
        d = max(s.degree, 0)
        rows = [((k,), s.coefficient(k)) for k in range(d + 1)]
        dim = 1
    elif isinstance(s, MultiIndexSeries):
        rows = [(a, s.coeffs[a]) for a in s.support()]
        dim = s.dim
    else:
        raise TypeError(f"cannot serialize {type(s).__name__}")
    parts = []
    for alpha, c in rows:
        cells = [str(int(a)) for a in alpha] + [_f17(c.real), _f17(c.imag)]
        parts.append("[" + ", ".join(cells) + "]")
    return '{"dim": %d, "coeffs": [%s]}' % (dim, ", ".join(parts))


def series_from_json(text: str):
    data = json.loads(text)
    dim = int(data["dim"])
    if dim == 1:
        pairs = {}
        for row in data["coeffs"]:
            k = int(row[0])
            pairs[k] = complex(float(row[1]), float(row[2]))
        d = max(pairs, default=0)
        return PowerSeries.from_coefficients(
            [pairs.get(k, 0j) for k in range(d + 1)])
    coeffs = {}
    for row in data["coeffs"]:
        alpha = tuple(int(a) for a in row[:dim])
        coeffs[alpha] = complex(float(row[dim]), float(row[dim + 1]))
    return MultiIndexSeries(dim, coeffs)
