"""Salem exponents: spectral profiles, log-log regression fits across
growing fields, closed-form predictions per family, and the exact
Hamming-variety transform.

A set E is (p, s)-Salem when its surface measure satisfies
||mu^||_p <= C |E|^{-s} with C independent of the field size.  The
implicit constant is absorbed into the regression intercept, so the
fitted slope, not any pointwise ratio, is the tested quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .ensembles import PointSet, SetDescriptor, surface_measure
from .field import VectorSpace
from .rationals import Exact, exact, as_float
from .spectral import FFMeasure, fourier_forward, lp_average_norm


@dataclass(frozen=True)
class SpectralProfile:
    """||mu^||_p over a grid of exponents, at one field size."""

    descriptor: SetDescriptor | None
    field_size: int
    dimension: int
    set_size: int
    entries: tuple[tuple[float, float], ...]  # (p_exp, norm), p_exp ascending

    def norm_at(self, p_exp: float) -> float:
        for pe, norm in self.entries:
            if pe == p_exp:
                return norm
        raise KeyError(f"p_exp {p_exp} not in profile")


@dataclass(frozen=True)
class SalemFit:
    """Least-squares slope of -log ||mu^||_p against log |E|."""

    descriptor: SetDescriptor | None
    p_exp: float
    fitted_s: float
    stderr: float
    field_sizes: tuple[int, ...]
    set_sizes: tuple[int, ...]
    predicted_s: Exact | None = None

    @property
    def n_points(self) -> int:
        return len(self.field_sizes)


@dataclass(frozen=True)
class ClosedFormPrediction:
    """A family's predicted optimal Salem exponent as a function of p_exp."""

    family: str
    params: tuple[tuple[str, int], ...]
    s_of_p: Callable[[float], Exact]

    def at(self, p_exp: float) -> Exact:
        return self.s_of_p(p_exp)


def profile(mu: FFMeasure, p_grid: Sequence[float],
            descriptor: SetDescriptor | None = None,
            kernel: str = "auto") -> SpectralProfile:
    """One transform, then every requested norm from the same mu^."""
    grid = sorted(set(float(pe) for pe in p_grid))
    if not grid:
        raise ValueError("empty p_grid")
    mhat = fourier_forward(mu.as_grid(), kernel=kernel)
    entries = tuple((pe, lp_average_norm(mhat, pe)) for pe in grid)
    support = int(np.count_nonzero(mu.weights))
    return SpectralProfile(descriptor, mu.space.p, mu.space.dimension,
                           support, entries)


def fit_salem_exponent(builder: Callable[[int], PointSet], p_exp: float,
                       field_sizes: Sequence[int],
                       predicted_s: Exact | None = None,
                       kernel: str = "auto") -> SalemFit:
    """Fit s in ||mu^||_p ~ |E|^{-s} over growing base fields.

    builder maps a field size p to the family instance in F_p^d.
    Requires at least 4 field sizes; zero norms (full-space-like inputs)
    are degenerate and rejected.
    """
    sizes = sorted(set(int(p) for p in field_sizes))
    if len(sizes) < 4:
        raise ValueError(f"need >= 4 field sizes, got {len(sizes)}")
    set_sizes = []
    norms = []
    descriptor = None
    for p in sizes:
        e = builder(p)
        descriptor = e.descriptor if descriptor is None else descriptor
        mu = surface_measure(e)
        mhat = fourier_forward(mu.as_grid(), kernel=kernel)
        norm = lp_average_norm(mhat, p_exp)
        # full-space-like inputs leave only rounding noise off frequency
        # zero; that is a zero norm for fitting purposes
        if norm <= 1e-12:
            raise ValueError(
                f"degenerate input: ||mu^||_{p_exp} = 0 at field size {p}")
        set_sizes.append(e.cardinality)
        norms.append(norm)
    xs = np.log(np.array(set_sizes, dtype=np.float64))
    ys = -np.log(np.array(norms, dtype=np.float64))
    if np.ptp(xs) == 0.0:
        raise ValueError("degenerate input: set size does not grow")
    coeffs, cov = np.polyfit(xs, ys, 1, cov=True)
    return SalemFit(descriptor, float(p_exp), float(coeffs[0]),
                    float(np.sqrt(cov[0, 0])), tuple(sizes),
                    tuple(set_sizes), predicted_s)


def predict_sphere_product(k: int, m: int, p_exp: float) -> Exact:
    """Optimal s for the m-fold product of spheres S_r^{k-1} in F^{km}:
    s_p = min{(2k(m-1) + p(k-1)) / (2mp(k-1)), 1/2}."""
    if k < 2 or m < 1:
        raise ValueError(f"need k >= 2 and m >= 1, got k={k}, m={m}")
    if p_exp == math.inf:
        return min(Fraction(1, 2 * m), Fraction(1, 2))
    pe = exact(p_exp)
    if pe < 2:
        raise ValueError(f"p_exp must be >= 2, got {p_exp}")
    branch = Fraction(2 * k * (m - 1)) / (2 * m * pe * (k - 1)) \
        + Fraction(1, 2 * m)
    return min(branch, Fraction(1, 2))


def predict_hamming(d: int, p_exp: float) -> Exact:
    """Optimal s for H_j in F^d: s_p = min{1/(d-1) + 1/p, 1/2}."""
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    if p_exp == math.inf:
        return min(Fraction(1, d - 1), Fraction(1, 2))
    pe = exact(p_exp)
    if pe < 1:
        raise ValueError(f"p_exp must be >= 1, got {p_exp}")
    return min(Fraction(1, d - 1) + 1 / pe, Fraction(1, 2))


def predict_cutoff_cylinder(n: int, m: int, k: int, p_exp: float) -> Exact:
    """Optimal s for (F^n \\ F^m) x S_1^k in F^{n+k+1}:
    s_p = min{(n/p + k/2)/(n+k), (n-m + m/p + (k+1)/p)/(n+k)}."""
    if not n > m >= 1:
        raise ValueError(f"need n > m >= 1, got n={n}, m={m}")
    if not k > 2 * (n - m):
        raise ValueError(f"need k > 2(n-m), got k={k}")
    if p_exp == math.inf:
        return Fraction(min(Fraction(k, 2), Fraction(n - m)), n + k)
    pe = exact(p_exp)
    if pe < 1:
        raise ValueError(f"p_exp must be >= 1, got {p_exp}")
    first = (n / pe + Fraction(k, 2)) / (n + k)
    second = ((n - m) + m / pe + (k + 1) / pe) / (n + k)
    return min(first, second)


def predict_zero_sphere_product(p_exp: float) -> Exact:
    """Optimal s for S_0^2 x S_1^2 inside F^6:
    s_p = min{1/8 + 1/p, 3/(4p) + 1/4}."""
    if p_exp == math.inf:
        return Fraction(1, 8)
    pe = exact(p_exp)
    if pe < 1:
        raise ValueError(f"p_exp must be >= 1, got {p_exp}")
    return min(Fraction(1, 8) + 1 / pe, Fraction(3, 4) / pe + Fraction(1, 4))


def predict_sidon(p_exp: float) -> Exact:
    """Salem exponent of a maximal Sidon set (|E| ~ p^{d/2}): s_p = 2/p
    for p >= 4 (fourth-moment bound), the universal 1/p below that."""
    if p_exp == math.inf:
        return Fraction(0)
    pe = exact(p_exp)
    if pe < 1:
        raise ValueError(f"p_exp must be >= 1, got {p_exp}")
    return 2 / pe if pe >= 4 else 1 / pe


def _hamming_zero_free_value(space: VectorSpace, j: int,
                             coords: tuple[int, ...]) -> complex:
    """Direct character sum for a frequency with no zero coordinate.

    Parametrizes H_j by the first d-1 coordinates over units, the last
    one forced to j / prod.  The sum is a Kloosterman-type sum; Deligne's
    bound |sum| <= d p^{(d-1)/2} is asserted as an internal sanity check.
    """
    p, d = space.p, space.dimension
    inv_table = np.zeros(p, dtype=np.int64)
    for u in range(1, p):
        inv_table[u] = pow(u, p - 2, p)
    grids = np.indices((p - 1,) * (d - 1), dtype=np.int64) + 1
    free = [g.reshape(-1) for g in grids]
    prod = np.ones(free[0].shape, dtype=np.int64)
    phase = np.zeros(free[0].shape, dtype=np.int64)
    for i in range(d - 1):
        prod = (prod * free[i]) % p
        phase = (phase + coords[i] * free[i]) % p
    last = (j * inv_table[prod]) % p
    phase = (phase + coords[d - 1] * last) % p
    total = complex(space.chi_table[(-phase) % p].sum())
    value = total / (p - 1) ** (d - 1)
    deligne = d * p ** ((d - 1) / 2) / (p - 1) ** (d - 1)
    if abs(value) > deligne * (1 + 1e-9):
        raise RuntimeError(
            f"Kloosterman-type sum exceeded the Deligne bound at m={coords}")
    return value


def _as_coords(space: VectorSpace, m) -> tuple[int, ...]:
    if isinstance(m, (int, np.integer)):
        return space.decode(int(m))
    coords = tuple(int(c) % space.p for c in m)
    if len(coords) != space.dimension:
        raise ValueError(f"expected {space.dimension} coordinates")
    return coords


def hamming_exact_transform(space: VectorSpace, j: int, m) -> complex:
    """mu_j^(m) for the Hamming surface measure, in closed form.

    With l = #zero coordinates of m:
        l >= 1:  (-1)^{d-l} (p-1)^{-(d-l)}   (exact)
        l  = 0:  the direct Kloosterman-type character sum, which obeys
                 |mu^(m)| <= C p^{-(d-1)/2}
    m may be a Point, a coordinate sequence, or a flat index.
    """
    j = j % space.p
    if j == 0:
        raise ValueError("hamming variety requires j != 0")
    coords = _as_coords(space, m)
    d = space.dimension
    zeros = sum(1 for c in coords if c == 0)
    if zeros >= 1:
        return complex((-1) ** (d - zeros) / (space.p - 1) ** (d - zeros))
    return _hamming_zero_free_value(space, j, coords)


def hamming_decay_constant(space: VectorSpace, j: int, m) -> float:
    """Measured C in |mu^(m)| <= C p^{-(d-1)/2} at a zero-free frequency."""
    coords = _as_coords(space, m)
    if any(c == 0 for c in coords):
        raise ValueError("decay constant is defined for zero-free frequencies")
    value = hamming_exact_transform(space, j, coords)
    return abs(value) * space.p ** ((space.dimension - 1) / 2)


@dataclass(frozen=True)
class UniversalSalemReport:
    """Check of the universal (p, 1/p)-Salem property for one set."""

    p_exp: float
    norm: float
    bound: float
    ratio: float
    passed: bool


def check_universal_salem(e: PointSet, p_exp: float,
                          kernel: str = "auto") -> UniversalSalemReport:
    """Every set is (p, 1/p)-Salem: ||mu^||_p <= |E|^{-1/p} exactly.

    At p = 2 this sharpens to the identity ||mu^||_2^2 = 1/|E| - p^{-d};
    at p = inf it is the trivial bound ||mu^||_inf <= 1.
    """
    if p_exp != math.inf and p_exp < 2:
        raise ValueError(f"p_exp must be in [2, inf], got {p_exp}")
    mu = surface_measure(e)
    mhat = fourier_forward(mu.as_grid(), kernel=kernel)
    norm = lp_average_norm(mhat, p_exp)
    if p_exp == math.inf:
        bound = 1.0
    else:
        bound = float(e.cardinality) ** (-1.0 / p_exp)
    ratio = norm / bound
    return UniversalSalemReport(float(p_exp), norm, bound, ratio,
                                ratio <= 1.0 + 1e-9)


def universal_l2_identity(e: PointSet, kernel: str = "auto") -> tuple[float, float]:
    """Both sides of ||mu^||_2^2 = 1/|E| - p^{-d} (Plancherel on E/|E|)."""
    mu = surface_measure(e)
    mhat = fourier_forward(mu.as_grid(), kernel=kernel)
    lhs = lp_average_norm(mhat, 2.0) ** 2
    rhs = 1.0 / e.cardinality - 1.0 / e.space.size
    return lhs, rhs


@dataclass(frozen=True)
class InterpolatedSalemReport:
    """Constants C_p in ||mu^||_p <= C |E|^{-(s_inf + (1-2 s_inf)/p)}."""

    s_inf: float
    rows: tuple[tuple[float, float, float, float], ...]
    # rows: (p_exp, norm, bound, constant)

    def max_constant(self) -> float:
        return max(r[3] for r in self.rows)


def check_interpolated_salem(e: PointSet, s_inf: float,
                             p_grid: Sequence[float] = (2, 4, 8, 16),
                             kernel: str = "auto") -> InterpolatedSalemReport:
    """Interpolation between L^2 and L^inf: an (inf, s_inf)-Salem set is
    (p, s_inf + (1 - 2 s_inf)/p)-Salem; reports the measured constants."""
    if not 0 <= s_inf <= 0.5 + 1e-12:
        raise ValueError(f"s_inf must lie in [0, 1/2], got {s_inf}")
    mu = surface_measure(e)
    mhat = fourier_forward(mu.as_grid(), kernel=kernel)
    rows = []
    for pe in p_grid:
        pe = float(pe)
        if pe < 2:
            raise ValueError(f"p_exp must be >= 2, got {pe}")
        norm = lp_average_norm(mhat, pe)
        if pe == math.inf:
            s = s_inf
        else:
            s = s_inf + (1.0 - 2.0 * s_inf) / pe
        bound = float(e.cardinality) ** (-s)
        rows.append((pe, norm, bound, norm / bound))
    return InterpolatedSalemReport(float(s_inf), tuple(rows))
