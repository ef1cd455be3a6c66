"""Dense functions on F_p^d, Fourier transforms, and the L^p machinery.

Conventions (unnormalized counting sums):

    forward    f^(xi)  = sum_x f(x) chi(-xi.x)
    inverse    f^v(xi) = sum_x f(x) chi(+xi.x)
    inversion  (f^)^v  = p^d f
    Parseval   sum_xi f^(xi) conj(g^(xi)) = p^d sum_x f(x) conj(g(x))

The normalized p-average of a transform excludes the zero frequency:

    ||mu^||_p   = (p^-d sum_{xi != 0} |mu^(xi)|^p)^(1/p)
    ||mu^||_inf = sup_{xi != 0} |mu^(xi)|
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .field import VectorSpace

# Per-axis kernel switchover: naive O(p^2) matrix product below this,
# Bluestein chirp-z above.
NAIVE_KERNEL_MAX_P = 64

# Flipped by the verify module's mutation check; never set directly.
# Applies to the forward transform only, so the defining-sum and
# inversion checks detect it.
_CHARACTER_SIGN_FAULT = False

_BLUESTEIN_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, int]] = {}


class GridFunction:
    """A complex-valued function on F_p^d, stored densely by flat index."""

    def __init__(self, space: VectorSpace, values: Iterable[complex]) -> None:
        arr = np.asarray(values, dtype=np.complex128)
        if arr.shape != (space.size,):
            raise ValueError(
                f"expected {space.size} values for {space}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must be finite (no NaN/Inf)")
        if arr.base is not None or arr.flags.writeable:
            arr = arr.copy()
        arr.setflags(write=False)
        self._space = space
        self._values = arr

    @property
    def space(self) -> VectorSpace:
        return self._space

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._space.size

    @classmethod
    def zero(cls, space: VectorSpace) -> "GridFunction":
        return cls(space, np.zeros(space.size, dtype=np.complex128))

    @classmethod
    def constant(cls, space: VectorSpace, value: complex = 1.0) -> "GridFunction":
        return cls(space, np.full(space.size, value, dtype=np.complex128))

    @classmethod
    def dirac(cls, space: VectorSpace, index: int = 0) -> "GridFunction":
        if not 0 <= index < space.size:
            raise ValueError(f"index {index} out of range")
        v = np.zeros(space.size, dtype=np.complex128)
        v[index] = 1.0
        return cls(space, v)

    @classmethod
    def indicator(cls, space: VectorSpace, membership: np.ndarray) -> "GridFunction":
        return cls(space, np.asarray(membership, dtype=bool).astype(np.complex128))


class FFMeasure:
    """A probability measure on F_p^d: nonnegative weights summing to 1."""

    def __init__(self, space: VectorSpace, weights: Iterable[float]) -> None:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (space.size,):
            raise ValueError(
                f"expected {space.size} weights for {space}, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {total!r}")
        if w.base is not None or w.flags.writeable:
            w = w.copy()
        w.setflags(write=False)
        self._space = space
        self._weights = w

    @property
    def space(self) -> VectorSpace:
        return self._space

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def support_indices(self) -> np.ndarray:
        return np.flatnonzero(self._weights)

    def max_weight(self) -> float:
        return float(self._weights.max())

    def as_grid(self) -> GridFunction:
        return GridFunction(self._space, self._weights.astype(np.complex128))

    @classmethod
    def uniform(cls, space: VectorSpace) -> "FFMeasure":
        return cls(space, np.full(space.size, 1.0 / space.size))

    @classmethod
    def point_mass(cls, space: VectorSpace, index: int = 0) -> "FFMeasure":
        w = np.zeros(space.size)
        w[index] = 1.0
        return cls(space, w)


def random_function(space: VectorSpace, seed: int,
                    real: bool = False) -> GridFunction:
    """Seeded standard-normal function, complex unless real=True."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(space.size)
    if not real:
        v = v + 1j * rng.standard_normal(space.size)
    return GridFunction(space, v)


def _resolve_kernel(space: VectorSpace, kernel: str) -> str:
    if kernel == "auto":
        return "naive" if space.p <= NAIVE_KERNEL_MAX_P else "bluestein"
    if kernel not in ("naive", "bluestein"):
        raise ValueError(f"unknown kernel {kernel!r}")
    return kernel


def _dft_matrix(space: VectorSpace, sign: int) -> np.ndarray:
    t = np.arange(space.p)
    return space.chi_table[(sign * np.outer(t, t)) % space.p]


def _bluestein_tables(p: int, sign: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Chirp table, FFT of the wrapped inverse chirp, and padded length.

    The chirp exponents n^2 are reduced mod 2p exactly in integers before
    the single table lookup, so no phase error accumulates with n.
    """
    key = (p, sign)
    cached = _BLUESTEIN_CACHE.get(key)
    if cached is not None:
        return cached
    base = np.exp(sign * 1j * np.pi * np.arange(2 * p) / p)
    n = np.arange(p, dtype=np.int64)
    chirp = base[(n * n) % (2 * p)]
    m = 1 << int(2 * p - 2).bit_length()
    wrapped = np.zeros(m, dtype=np.complex128)
    wrapped[:p] = chirp.conj()
    wrapped[m - p + 1:] = chirp[1:][::-1].conj()
    fwrapped = np.fft.fft(wrapped)
    _BLUESTEIN_CACHE[key] = (chirp, fwrapped, m)
    return chirp, fwrapped, m


def _bluestein_rows(rows: np.ndarray, p: int, sign: int) -> np.ndarray:
    """Length-p DFT with kernel chi(sign * n * k) applied to each row."""
    chirp, fwrapped, m = _bluestein_tables(p, sign)
    a = rows * chirp
    c = np.fft.ifft(np.fft.fft(a, n=m, axis=-1) * fwrapped, axis=-1)
    return c[..., :p] * chirp


def _transform(space: VectorSpace, values: np.ndarray, sign: int,
               kernel: str) -> np.ndarray:
    d = space.dimension
    cube = values.reshape((space.p,) * d)
    if kernel == "naive":
        mat = _dft_matrix(space, sign)
        for ax in range(d):
            cube = np.moveaxis(
                np.tensordot(mat, cube, axes=([1], [ax])), 0, ax)
    else:
        for ax in range(d):
            moved = np.moveaxis(cube, ax, -1)
            shape = moved.shape
            out = _bluestein_rows(moved.reshape(-1, space.p), space.p, sign)
            cube = np.moveaxis(out.reshape(shape), -1, ax)
    return np.ascontiguousarray(cube).reshape(-1)


def fourier_forward(f: GridFunction, kernel: str = "auto") -> GridFunction:
    """f^(xi) = sum_x f(x) chi(-xi.x), by d passes of length-p DFTs."""
    k = _resolve_kernel(f.space, kernel)
    sign = 1 if _CHARACTER_SIGN_FAULT else -1
    return GridFunction(f.space, _transform(f.space, f.values, sign, k))


def fourier_inverse(f: GridFunction, kernel: str = "auto") -> GridFunction:
    """f^v(xi) = sum_x f(x) chi(+xi.x); satisfies (f^)^v = p^d f."""
    k = _resolve_kernel(f.space, kernel)
    return GridFunction(f.space, _transform(f.space, f.values, +1, k))


def dft_reference(f: GridFunction, max_points: int = 4096) -> GridFunction:
    """The defining double sum, evaluated directly.  O(p^2d); test oracle.

    Chunked over frequencies so memory stays O(p^d) regardless of size.
    """
    space = f.space
    n = space.size
    if n > max_points:
        raise ValueError(f"defining-sum reference capped at {max_points} points")
    idx = space.all_indices()
    out = np.empty(n, dtype=np.complex128)
    chunk = max(1, (1 << 21) // n)
    for start in range(0, n, chunk):
        xi = idx[start:start + chunk]
        dots = np.zeros((len(xi), n), dtype=np.int64)
        for ax in range(space.dimension):
            dots += np.outer(space.coordinate(xi, ax), space.coordinate(idx, ax))
        out[start:start + len(xi)] = space.chi_table[(-dots) % space.p] @ f.values
    return GridFunction(space, out)


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """f*g(x) = sum_y f(y) g(x-y), evaluated as the defining sum.

    Deliberately transform-free so the convolution law can be checked
    against an independent route.  Cost is O(|supp| * p^d) using the
    sparser factor's support.
    """
    if f.space != g.space:
        raise ValueError("convolve requires functions on the same space")
    space = f.space
    sf = np.flatnonzero(f.values)
    sg = np.flatnonzero(g.values)
    a, b = (f, g) if len(sf) <= len(sg) else (g, f)
    support = sf if len(sf) <= len(sg) else sg
    d = space.dimension
    shape = (space.p,) * d
    cube = b.values.reshape(shape)
    out = np.zeros(shape, dtype=np.complex128)
    axes = tuple(range(d))
    for y in support:
        coords = space.decode(int(y))
        # cube axes run from the highest-weight coordinate down
        out += a.values[y] * np.roll(cube, shift=coords[::-1], axis=axes)
    return GridFunction(space, out.reshape(-1))


def parseval(f: GridFunction, g: GridFunction,
             kernel: str = "auto") -> tuple[complex, complex]:
    """Both sides of sum f^ conj(g^) = p^d sum f conj(g), for comparison."""
    if f.space != g.space:
        raise ValueError("parseval requires functions on the same space")
    fh = fourier_forward(f, kernel).values
    gh = fourier_forward(g, kernel).values
    lhs = complex(np.vdot(gh, fh))
    rhs = f.space.size * complex(np.vdot(g.values, f.values))
    return lhs, rhs


def lp_average_norm(mhat: GridFunction, p_exp: float) -> float:
    """||mu^||_p over nonzero frequencies, normalized by p^-d.

    The xi = 0 term is excluded by masking the zero index, never by
    subtracting from a power sum.
    """
    if p_exp != math.inf and p_exp < 1:
        raise ValueError(f"p_exp must be >= 1 or inf, got {p_exp}")
    mags = np.abs(mhat.values)
    if mags.size == 1:
        return 0.0
    if p_exp == math.inf:
        return float(mags[1:].max())
    n = mhat.space.size
    mags = mags.copy()
    mags[0] = 0.0
    return float((np.sum(mags ** p_exp) / n) ** (1.0 / p_exp))


def multiply_density(f: GridFunction, mu: FFMeasure) -> GridFunction:
    """The pointwise product (f mu)(x) = f(x) mu(x)."""
    if f.space != mu.space:
        raise ValueError("multiply_density requires a common space")
    return GridFunction(f.space, f.values * mu.weights)


def lq_norm(f: GridFunction, q: float) -> float:
    """Unnormalized counting norm (sum_x |f(x)|^q)^(1/q); sup at q = inf."""
    if q != math.inf and q < 1:
        raise ValueError(f"q must be >= 1 or inf, got {q}")
    mags = np.abs(f.values)
    if q == math.inf:
        return float(mags.max())
    return float(np.sum(mags ** q) ** (1.0 / q))


def lq_mu_norm(f: GridFunction, mu: FFMeasure, q: float) -> float:
    """Weighted norm (sum_x |f(x)|^q mu(x))^(1/q); mu-esssup at q = inf."""
    if f.space != mu.space:
        raise ValueError("lq_mu_norm requires a common space")
    if q != math.inf and q < 1:
        raise ValueError(f"q must be >= 1 or inf, got {q}")
    mags = np.abs(f.values)
    if q == math.inf:
        sup = mu.support_indices()
        return float(mags[sup].max()) if len(sup) else 0.0
    return float(np.sum(mags ** q * mu.weights) ** (1.0 / q))
