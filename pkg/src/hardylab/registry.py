"""Catalog of test functions driving the experiment runners.

Each entry bundles a series representation, a vectorized evaluator, and
the metadata the norm estimators need (spike location, polynomial degree,
known Hardy norm).  Partial sums come from per-entry fast paths where a
closed form exists, so high orders cost the same as low ones:

    extremal family   partial and tail from the two-term split
    geometric         finite geometric sum
    polynomials       exact truncated coefficient evaluation
    products          coordinatewise partials of the one-variable factors

Square (several-variable) partial sums keep multi-indices with
max_j alpha_j <= N.  The default catalog is seeded so polynomial
coefficients, and hence every derived table, are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .series import (MultiIndexSeries, PowerSeries, partial_sum,
                     square_partial_sum)
from .witnesses import T1T2Split, WitnessFa, fa_series


class TaggedEvaluator:
    """Callable wrapper carrying the metadata tags the estimators read."""

    __slots__ = ("fn", "spike", "label")

    def __init__(self, fn: Callable, spike=None, label: str | None = None):
        self.fn = fn
        self.spike = spike
        self.label = label

    def __call__(self, *z):
        return self.fn(*z)

    def __repr__(self):
        return f"TaggedEvaluator({self.label or self.fn!r})"


@dataclass(frozen=True, eq=False)
class RegistryEntry:
    """A named test function with evaluators for it and its partial sums."""

    name: str
    dim: int
    evaluator: Callable
    series: PowerSeries | MultiIndexSeries | None = None
    spike: float | tuple | None = None
    in_h1: bool = True
    degree: int | None = None
    factors: tuple | None = None
    h1_exact: float | None = None
    partial_factory: Callable | None = field(default=None, repr=False)
    tail_factory: Callable | None = field(default=None, repr=False)

    def partial_evaluator(self, N: int) -> TaggedEvaluator:
        """Pointwise evaluator of the order-N partial sum."""
        if self.dim != 1:
            raise ValueError("use square_partial_evaluator in dim >= 2")
        if self.partial_factory is not None:
            fn = self.partial_factory(N)
        else:
            fn = partial_sum(self._power_series(), N)
        return TaggedEvaluator(fn, self.spike, f"S{N}[{self.name}]")

    def tail_evaluator(self, N: int) -> TaggedEvaluator:
        """Pointwise evaluator of f minus its order-N partial sum."""
        if self.dim != 1:
            raise ValueError("use square_tail_evaluator in dim >= 2")
        if self.tail_factory is not None:
            fn = self.tail_factory(N)
        elif self.degree is not None:
            ps = self._power_series()
            hi = np.zeros(max(self.degree, N) + 1, dtype=np.complex128)
            if self.degree > N:
                hi[N + 1:self.degree + 1] = ps.coefficients(self.degree)[N + 1:]
            tail_poly = PowerSeries.from_coefficients(hi, spike=self.spike)
            fn = tail_poly
        else:
            sn = self.partial_evaluator(N)
            ev = self.evaluator
            fn = lambda z: np.asarray(ev(z)) - np.asarray(sn(z))
        return TaggedEvaluator(fn, self.spike, f"tail{N}[{self.name}]")

    def square_partial_evaluator(self, N: int) -> TaggedEvaluator:
        """Square partial sum evaluator: keep max_j alpha_j <= N."""
        if self.dim == 1:
            return self.partial_evaluator(N)
        if self.factors is not None:
            parts = [fac.partial_evaluator(N) for fac in self.factors]

            def fn(*zs, parts=parts):
                out = np.asarray(parts[0](zs[0]))
                for pe, z in zip(parts[1:], zs[1:]):
                    out = out * np.asarray(pe(z))
                return out
        else:
            fn = square_partial_sum(self.series, N)
        return TaggedEvaluator(fn, self.spike, f"S{N}[{self.name}]")

    def square_tail_evaluator(self, N: int) -> TaggedEvaluator:
        """Evaluator of f minus its square partial sum, cancellation-safe
        for products: f1 f2 - S1 S2 = t1 S2 + f1 t2 with closed-form
        one-variable tails t_j."""
        if self.dim == 1:
            return self.tail_evaluator(N)
        if self.factors is not None:
            parts = [fac.partial_evaluator(N) for fac in self.factors]
            tails = [fac.tail_evaluator(N) for fac in self.factors]
            evals = [fac.evaluator for fac in self.factors]

            def fn(*zs, parts=parts, tails=tails, evals=evals):
                out = np.asarray(tails[0](zs[0]))
                for j in range(1, len(zs)):
                    out = out * np.asarray(parts[j](zs[j]))
                acc = out
                lead = np.asarray(evals[0](zs[0]))
                for j in range(1, len(zs)):
                    term = lead * np.asarray(tails[j](zs[j]))
                    for i in range(1, len(zs)):
                        if i != j:
                            term = term * np.asarray(
                                (parts if i > j else evals)[i](zs[i]))
                    acc = acc + term
                return acc
        else:
            sn = self.square_partial_evaluator(N)
            ev = self.evaluator

            def fn(*zs, sn=sn, ev=ev):
                return np.asarray(ev(*zs)) - np.asarray(sn(*zs))
        return TaggedEvaluator(fn, self.spike, f"tail{N}[{self.name}]")

    def _power_series(self) -> PowerSeries:
        if isinstance(self.series, PowerSeries):
            return self.series
        if isinstance(self.series, MultiIndexSeries) and self.series.dim == 1:
            return self.series.to_power_series()
        raise ValueError(f"entry {self.name} has no one-variable series")


class FunctionRegistry:
    """Name-keyed collection of registry entries."""

    def __init__(self):
        self._entries: dict[str, RegistryEntry] = {}

    def add(self, entry: RegistryEntry) -> RegistryEntry:
        if entry.name in self._entries:
            raise ValueError(f"duplicate registry name {entry.name!r}")
        self._entries[entry.name] = entry
        return entry

    def get(self, name: str) -> RegistryEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise KeyError(f"no registry entry named {name!r}; "
                           f"known: {sorted(self._entries)}") from None

    def names(self) -> list[str]:
        return list(self._entries)

    def entries(self, dim: int | None = None,
                in_h1: bool | None = None) -> list[RegistryEntry]:
        out = []
        for e in self._entries.values():
            if dim is not None and e.dim != dim:
                continue
            if in_h1 is not None and e.in_h1 != in_h1:
                continue
            out.append(e)
        return out

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)


def _format_a(a: float) -> str:
    return format(float(a), "g")


def fa_entry(a: float, name: str | None = None) -> RegistryEntry:
    """Extremal family member (1-|a|^2) / (1 - conj(a) z)^2."""
    w = WitnessFa(a)
    return RegistryEntry(
        name=name or f"fa-{_format_a(a)}", dim=1, evaluator=w,
        series=fa_series(a), spike=abs(a), in_h1=True,
        degree=0 if a == 0 else None, h1_exact=1.0,
        partial_factory=lambda N, a=a: T1T2Split(a, N).partial,
        tail_factory=lambda N, a=a: T1T2Split(a, N).tail)


def polynomial_entry(name: str, coefficients) -> RegistryEntry:
    ps = PowerSeries.from_coefficients(coefficients, label=name)
    deg = ps.degree if ps.degree is not None else 0
    return RegistryEntry(name=name, dim=1, evaluator=ps, series=ps,
                         degree=deg)


def monomial_entry(k: int) -> RegistryEntry:
    coeffs = np.zeros(k + 1, dtype=np.complex128)
    coeffs[k] = 1.0
    ps = PowerSeries.from_coefficients(coeffs, label=f"mono-{k}")
    return RegistryEntry(name=f"mono-{k}", dim=1, evaluator=ps, series=ps,
                         degree=k, h1_exact=1.0)


def geometric_entry() -> RegistryEntry:
    """1/(1-z): bounded Bergman norm, infinite Hardy norm (not in H^1)."""
    ps = PowerSeries.from_generator(lambda k: 1.0 + 0j,
                                    closed_form=lambda z: 1.0 / (1.0 - z),
                                    label="geom")

    def partial(N):
        return lambda z: (1.0 - np.asarray(z, dtype=np.complex128) ** (N + 1)) \
            / (1.0 - np.asarray(z, dtype=np.complex128))

    def tail(N):
        return lambda z: np.asarray(z, dtype=np.complex128) ** (N + 1) \
            / (1.0 - np.asarray(z, dtype=np.complex128))

    return RegistryEntry(name="geom", dim=1, evaluator=ps, series=ps,
                         in_h1=False, partial_factory=partial,
                         tail_factory=tail)


def product_entry(factors: tuple[RegistryEntry, ...],
                  name: str | None = None) -> RegistryEntry:
    """Tensor product f(z) = prod_j f_j(z_j) of one-variable entries."""
    if any(f.dim != 1 for f in factors):
        raise ValueError("product factors must be one-variable entries")
    evals = [f.evaluator for f in factors]

    def fn(*zs, evals=evals):
        out = np.asarray(evals[0](zs[0]))
        for ev, z in zip(evals[1:], zs[1:]):
            out = out * np.asarray(ev(z))
        return out

    h1 = None
    if all(f.h1_exact is not None for f in factors):
        h1 = float(np.prod([f.h1_exact for f in factors]))
        h1 *= (2.0 * np.pi) ** len(factors)
    degs = [f.degree for f in factors]
    return RegistryEntry(
        name=name or "prod-" + "-".join(f.name for f in factors),
        dim=len(factors), evaluator=fn, series=None,
        spike=tuple(f.spike if f.spike is not None else 0.0 for f in factors),
        in_h1=all(f.in_h1 for f in factors),
        degree=None if any(d is None for d in degs) else int(max(degs)),
        factors=tuple(factors), h1_exact=h1)


def default_registry(seed: int = 12345) -> FunctionRegistry:
    """The seeded standard catalog used by the runners and the tests."""
    rng = np.random.default_rng(seed)
    reg = FunctionRegistry()
    reg.add(polynomial_entry("const-1", [1.0]))
    for k in (1, 2, 5):
        reg.add(monomial_entry(k))
    for deg in (3, 7, 12):
        coeffs = rng.uniform(-1.0, 1.0, deg + 1) \
            + 1j * rng.uniform(-1.0, 1.0, deg + 1)
        coeffs[deg] += 2.0     # keep the top coefficient well away from 0
        reg.add(polynomial_entry(f"poly-{deg}", coeffs))
    for a in (0.0, 0.5, 0.9, 0.99, 0.999):
        reg.add(fa_entry(a))
    reg.add(geometric_entry())

    fa05 = reg.get("fa-0.5")
    fa09 = reg.get("fa-0.9")
    reg.add(product_entry((fa09, fa09), name="prod-fa-0.9"))
    reg.add(product_entry((fa09, fa05), name="prod-fa-0.9-0.5"))
    mono2 = MultiIndexSeries(2, {(1, 2): 1.0}, label="mono2-1-2")
    reg.add(RegistryEntry(name="mono2-1-2", dim=2, evaluator=mono2,
                          series=mono2, degree=2,
                          h1_exact=(2.0 * np.pi) ** 2))
    return reg
