"""Gauss-Legendre panel quadrature and cumulative finite-range integrals.

The integral from 0 to x_l of an integrand is assembled from panel values
chi_i over [x_{i-1}, x_i] (with x_{-1} = 0), each computed by a fixed-order
Gauss-Legendre rule, then prefix-summed: F(x_l) = chi_0 + ... + chi_l.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


class QuadratureError(ValueError):
    """Evaluator failure inside a panel; carries the offending node."""


@dataclass(frozen=True)
class SampleGrid:
    """Strictly increasing sample points x_0 < x_1 < ... with x_0 > 0.

    The point x_{-1} = 0 is implicit: the first panel is [0, x_0].
    ``descriptor`` records the generator (see :func:`grid_from_descriptor`).
    """

    points: tuple[float, ...]
    descriptor: str = ""

    def __post_init__(self):
        if not self.points:
            raise ValueError("a sample grid needs at least one point")
        if self.points[0] <= 0.0:
            raise ValueError("the first grid point must be positive")
        for a, b in zip(self.points, self.points[1:]):
            if not b > a:
                raise ValueError("grid points must be strictly increasing")
        if not all(math.isfinite(p) for p in self.points):
            raise ValueError("grid points must be finite")

    def __len__(self):
        return len(self.points)


_DESCRIPTOR_RE = re.compile(r"^(linear|sqrtlinear):([-0-9.,eE+]+)$")


def grid_from_descriptor(descriptor: str, count: int) -> SampleGrid:
    """Build a grid from ``linear:a[,b]`` (x_l = a*(l+1)+b) or
    ``sqrtlinear:a`` (x_l = sqrt(a*(l+1)))."""
    m = _DESCRIPTOR_RE.match(descriptor.strip())
    if m is None:
        raise ValueError("unrecognized grid descriptor %r" % descriptor)
    kind, args = m.group(1), m.group(2).split(",")
    try:
        values = [float(v) for v in args]
    except ValueError as exc:
        raise ValueError("bad number in grid descriptor %r" % descriptor) from exc
    if kind == "linear":
        if len(values) == 1:
            a, b = values[0], 0.0
        elif len(values) == 2:
            a, b = values
        else:
            raise ValueError("linear grids take one or two parameters")
        points = tuple(a * (l + 1) + b for l in range(count))
    else:
        if len(values) != 1:
            raise ValueError("sqrtlinear grids take one parameter")
        a = values[0]
        points = tuple(math.sqrt(a * (l + 1)) for l in range(count))
    return SampleGrid(points, descriptor)


@dataclass(frozen=True)
class CumulativeIntegrals:
    """Panel integrals chi_0..chi_L and their prefix sums F(x_0)..F(x_L)."""

    chi: tuple[float, ...]
    F: tuple[float, ...]
    node_count: int


_MAX_NODES = 64
_gauss_cache: dict[int, tuple[tuple[float, ...], tuple[float, ...]]] = {}


def gauss_nodes(q: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1].

    Roots of the degree-q Legendre polynomial are found by Newton
    iteration from the classical cosine initial guesses; the rule is
    exact for polynomials of degree 2q-1.
    """
    if not (isinstance(q, int) and 1 <= q <= _MAX_NODES):
        raise ValueError("node count must be an integer in [1, %d]" % _MAX_NODES)
    cached = _gauss_cache.get(q)
    if cached is not None:
        return cached
    if q == 2:
        s = 1.0 / math.sqrt(3.0)
        result = ((-s, s), (1.0, 1.0))
        _gauss_cache[q] = result
        return result
    half: list[tuple[float, float]] = []
    for i in range(1, q // 2 + 1):
        x = math.cos(math.pi * (i - 0.25) / (q + 0.5))
        for _ in range(100):
            p_prev, p = 1.0, x
            for n in range(1, q):
                p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
            dp = q * (x * p - p_prev) / (x * x - 1.0)
            dx = p / dp
            x -= dx
            if abs(dx) < 1e-15:
                break
        p_prev, p = 1.0, x
        for n in range(1, q):
            p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
        dp = q * (x * p - p_prev) / (x * x - 1.0)
        half.append((x, 2.0 / ((1.0 - x * x) * dp * dp)))
    nodes: list[float] = []
    weights: list[float] = []
    for x, w in half:
        nodes.append(-x)
        weights.append(w)
    if q % 2:
        # P_q(0) = 0 for odd q; only the derivative is needed for the weight.
        p_prev, p = 1.0, 0.0
        for n in range(1, q):
            p_prev, p = p, (-n * p_prev) / (n + 1)
        dp = q * (0.0 - p_prev) / (0.0 - 1.0)
        nodes.append(0.0)
        weights.append(2.0 / (dp * dp))
    for x, w in reversed(half):
        nodes.append(x)
        weights.append(w)
    result = (tuple(nodes), tuple(weights))
    _gauss_cache[q] = result
    return result


def panel_integrate(f, a: float, b: float, q: int = 16) -> float:
    """q-point Gauss-Legendre approximation of the integral of f over [a, b]."""
    if not b > a:
        raise ValueError("need a < b, got [%r, %r]" % (a, b))
    nodes, weights = gauss_nodes(q)
    mid = 0.5 * (a + b)
    halfwidth = 0.5 * (b - a)
    values = []
    for xi, w in zip(nodes, weights):
        x = mid + halfwidth * xi
        try:
            values.append(w * f(x))
        except ValueError as exc:
            raise QuadratureError(
                "integrand failed at node x=%r in panel [%r, %r]: %s"
                % (x, a, b, exc)) from exc
    return halfwidth * math.fsum(values)


def _panel_with_safeguard(f, a: float, b: float, q: int) -> float:
    # Accept the doubled rule; if doubling moved the value by more than
    # 1e-12 relative, bisect once and integrate the halves at the doubled
    # order.  One level only: panels are expected to be smooth.
    refined = min(2 * q, _MAX_NODES)
    coarse = panel_integrate(f, a, b, q)
    if refined == q:
        return coarse
    fine = panel_integrate(f, a, b, refined)
    scale = max(abs(coarse), abs(fine), 1e-30)
    if abs(fine - coarse) <= 1e-12 * scale:
        return fine
    mid = 0.5 * (a + b)
    return panel_integrate(f, a, mid, refined) + panel_integrate(f, mid, b, refined)


def cumulative(f, grid: SampleGrid, q: int = 16) -> CumulativeIntegrals:
    """Panel integrals over [x_{i-1}, x_i] and their prefix sums.

    Panels are evaluated independently; the prefix sums are formed in
    index order, so F[l] equals the plain left-to-right sum of chi[0..l].
    """
    chi = []
    previous = 0.0
    for index, point in enumerate(grid.points):
        try:
            chi.append(_panel_with_safeguard(f, previous, point, q))
        except QuadratureError as exc:
            raise QuadratureError("panel %d: %s" % (index, exc)) from exc
        previous = point
    F = []
    total = 0.0
    for value in chi:
        total = total + value
        F.append(total)
    return CumulativeIntegrals(tuple(chi), tuple(F), q)
