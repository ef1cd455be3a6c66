"""Registry of the named set families: construction at any field size,
idealized regularity exponents, closed-form Salem predictions, analytic
candidates for the optimal averaging exponent, and failure thresholds.

The regularity exponent alpha recorded here is the idealized rational
value (|E| ~ p^alpha), which is what the threshold formulas consume; the
finite-size alpha(p) = log|E|/log p converges to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .ensembles import (
    PointSet,
    SetDescriptor,
    cutoff_cylinder,
    embed,
    full_space,
    hamming_variety,
    product,
    random_set,
    sidon_parabola,
    sphere,
    sphere_product,
)
from .field import DEFAULT_POINT_CAP, PrimeField, VectorSpace
from .rationals import Exact, exact, is_inf
from .salem import (
    ClosedFormPrediction,
    predict_cutoff_cylinder,
    predict_hamming,
    predict_sidon,
    predict_sphere_product,
    predict_zero_sphere_product,
)
from .restriction import (
    ThresholdReport,
    improvement_condition,
    interpolation_params,
    main_threshold,
    mocktao_threshold,
    optimize_p,
    salem_threshold,
)


@dataclass(frozen=True)
class FamilySpec:
    """Everything the tooling needs to know about one family."""

    name: str
    param_defaults: tuple[tuple[str, int], ...]
    dimension: Callable[[dict], int]
    validate: Callable[[dict], None]
    construct: Callable[[dict, VectorSpace], PointSet]
    alpha: Callable[[dict], Exact] | None = None
    s_of_p: Callable[[dict, float], Exact] | None = None
    p_candidates: Callable[[dict], list[Exact]] | None = None
    failure_q: Callable[[dict], Exact] | None = None

    def resolve_params(self, given: Mapping[str, int]) -> dict:
        params = dict(self.param_defaults)
        allowed = set(params)
        for key, value in given.items():
            if value is None:
                continue
            if key not in allowed:
                raise ValueError(
                    f"family {self.name!r} takes parameters "
                    f"{sorted(allowed)}, not {key!r}")
            params[key] = int(value)
        self.validate(params)
        return params


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _hamming_candidates(params: dict) -> list[Exact]:
    d = params["d"]
    return [Fraction(2 * (d - 1), d - 3)] if d >= 4 else []


def _cylinder_candidates(params: dict) -> list[Exact]:
    n, m, k = params["n"], params["m"], params["k"]
    return [Fraction(2 * (k + 1 + m - n), k + 2 * (m - n))]


def _build_zero_sphere_product(params: dict, space: VectorSpace) -> PointSet:
    half = VectorSpace(space.field, 3)
    e = product(sphere(half, 0), sphere(half, 1), max_points=space.size)
    return PointSet(space, e.membership,
                    SetDescriptor.make("zero-sphere-product"))


def _build_sidon_embedded(params: dict, space: VectorSpace) -> PointSet:
    plane = VectorSpace(space.field, 2)
    return embed(sidon_parabola(plane), space)


_REGISTRY: dict[str, FamilySpec] = {}


def _register(spec: FamilySpec) -> None:
    _REGISTRY[spec.name] = spec


_register(FamilySpec(
    name="hamming",
    param_defaults=(("d", 2), ("j", 1)),
    dimension=lambda prm: prm["d"],
    validate=lambda prm: (_check(prm["d"] >= 2, "hamming requires d >= 2"),
                          _check(prm["j"] != 0, "hamming requires j != 0"))[0],
    construct=lambda prm, space: hamming_variety(space, prm["j"]),
    alpha=lambda prm: Fraction(prm["d"] - 1),
    s_of_p=lambda prm, pe: predict_hamming(prm["d"], pe),
    p_candidates=_hamming_candidates,
    failure_q=lambda prm: Fraction(2 * prm["d"], prm["d"] - 1),
))

def _sphere_s(prm: dict, pe: float) -> Exact:
    if prm["r"] == 0:
        raise ValueError("no closed-form exponent for the zero sphere")
    return Fraction(1, 2)


_register(FamilySpec(
    name="sphere",
    param_defaults=(("k", 2), ("r", 1)),
    dimension=lambda prm: prm["k"],
    validate=lambda prm: _check(prm["k"] >= 2, "sphere requires k >= 2"),
    construct=lambda prm, space: sphere(space, prm["r"]),
    alpha=lambda prm: Fraction(prm["k"] - 1),
    s_of_p=_sphere_s,
    p_candidates=lambda prm: [],
    failure_q=None,
))

_register(FamilySpec(
    name="sphere-product",
    param_defaults=(("k", 2), ("m", 2), ("r", 1)),
    dimension=lambda prm: prm["k"] * prm["m"],
    validate=lambda prm: (_check(prm["k"] >= 2, "need k >= 2"),
                          _check(prm["m"] >= 1, "need m >= 1"),
                          _check(prm["r"] != 0, "need r != 0"))[0],
    construct=lambda prm, space: sphere_product(
        space, prm["k"], prm["m"], prm["r"]),
    alpha=lambda prm: Fraction(prm["m"] * (prm["k"] - 1)),
    s_of_p=lambda prm, pe: predict_sphere_product(prm["k"], prm["m"], pe),
    p_candidates=lambda prm: [Fraction(2 * prm["k"], prm["k"] - 1)],
    failure_q=lambda prm: 2 + Fraction(2, prm["k"] - 1),
))

_register(FamilySpec(
    name="zero-sphere-product",
    param_defaults=(),
    dimension=lambda prm: 6,
    validate=lambda prm: None,
    construct=_build_zero_sphere_product,
    alpha=lambda prm: Fraction(4),
    s_of_p=lambda prm, pe: predict_zero_sphere_product(pe),
    p_candidates=lambda prm: [Fraction(4)],
    failure_q=lambda prm: Fraction(4),
))

_register(FamilySpec(
    name="cutoff-cylinder",
    param_defaults=(("n", 2), ("m", 1), ("k", 3)),
    dimension=lambda prm: prm["n"] + prm["k"] + 1,
    validate=lambda prm: (
        _check(prm["n"] > prm["m"] >= 1, "need n > m >= 1"),
        _check(prm["k"] > 2 * (prm["n"] - prm["m"]), "need k > 2(n-m)"))[0],
    construct=lambda prm, space: cutoff_cylinder(
        space, prm["n"], prm["m"], prm["k"]),
    alpha=lambda prm: Fraction(prm["n"] + prm["k"]),
    s_of_p=lambda prm, pe: predict_cutoff_cylinder(
        prm["n"], prm["m"], prm["k"], pe),
    p_candidates=_cylinder_candidates,
    failure_q=lambda prm: Fraction(2 * (prm["k"] + 1), prm["k"]),
))

_register(FamilySpec(
    name="sidon-parabola",
    param_defaults=(("d", 2),),
    dimension=lambda prm: 2,
    validate=lambda prm: _check(prm["d"] == 2,
                                "the parabola construction is planar (d=2)"),
    construct=lambda prm, space: sidon_parabola(space),
    alpha=lambda prm: Fraction(1),
    s_of_p=lambda prm, pe: predict_sidon(pe),
    p_candidates=lambda prm: [Fraction(4)],
    failure_q=lambda prm: Fraction(4),
))

_register(FamilySpec(
    name="sidon-embedded",
    param_defaults=(),
    dimension=lambda prm: 3,
    validate=lambda prm: None,
    construct=_build_sidon_embedded,
    alpha=lambda prm: Fraction(1),
    s_of_p=lambda prm, pe: predict_sidon(pe),
    # the ambient dimension outruns the decay: no finite q admits a
    # uniform estimate, certified by indicator-minus-dirac witnesses
    failure_q=lambda prm: math.inf,
))

_register(FamilySpec(
    name="full-space",
    param_defaults=(("d", 1),),
    dimension=lambda prm: prm["d"],
    validate=lambda prm: _check(prm["d"] >= 1, "need d >= 1"),
    construct=lambda prm, space: full_space(space),
))

_register(FamilySpec(
    name="random",
    param_defaults=(("d", 2), ("seed", 0), ("percent", 25)),
    dimension=lambda prm: prm["d"],
    validate=lambda prm: (_check(prm["d"] >= 1, "need d >= 1"),
                          _check(0 < prm["percent"] <= 100,
                                 "percent must lie in (0, 100]"))[0],
    construct=lambda prm, space: random_set(
        space, prm["percent"] / 100.0, prm["seed"]),
))


# shorthand accepted anywhere a family name is
_ALIASES = {"sidon": "sidon-parabola"}


def names() -> list[str]:
    return sorted(_REGISTRY)


def get(name: str) -> FamilySpec:
    name = _ALIASES.get(name, name)
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown family {name!r}; known: {', '.join(names())}") from None


def build_set(name: str, p: int, params: Mapping[str, int] | None = None,
              max_points: int = DEFAULT_POINT_CAP) -> PointSet:
    spec = get(name)
    prm = spec.resolve_params(params or {})
    space = VectorSpace(PrimeField(p), spec.dimension(prm),
                        max_points=max_points)
    return spec.construct(prm, space)


def builder(name: str, params: Mapping[str, int] | None = None,
            max_points: int = DEFAULT_POINT_CAP) -> Callable[[int], PointSet]:
    """A field-size-to-instance closure for fits and sweeps."""
    spec = get(name)
    prm = spec.resolve_params(params or {})

    def make(p: int) -> PointSet:
        space = VectorSpace(PrimeField(p), spec.dimension(prm),
                            max_points=max_points)
        return spec.construct(prm, space)

    return make


def prediction(name: str,
               params: Mapping[str, int] | None = None
               ) -> ClosedFormPrediction | None:
    spec = get(name)
    if spec.s_of_p is None:
        return None
    prm = spec.resolve_params(params or {})
    return ClosedFormPrediction(
        spec.name, tuple(sorted(prm.items())),
        lambda pe: spec.s_of_p(prm, pe))


def s_inf(name: str, params: Mapping[str, int] | None = None) -> Exact:
    pred = prediction(name, params)
    if pred is None:
        raise ValueError(f"family {name!r} has no closed-form exponent")
    return pred.at(math.inf)


def threshold_report(name: str,
                     params: Mapping[str, int] | None = None) -> ThresholdReport:
    """Exact q-range report for a family with a closed-form exponent."""
    spec = get(name)
    if spec.s_of_p is None:
        raise ValueError(f"family {name!r} has no closed-form exponent")
    prm = spec.resolve_params(params or {})
    d = spec.dimension(prm)
    alpha = spec.alpha(prm)
    s_infinity = spec.s_of_p(prm, math.inf)
    if s_infinity > 0:
        q_mocktao = mocktao_threshold(d, alpha, 2 * alpha * s_infinity)
    else:
        # no uniform decay input; the threshold degenerates
        q_mocktao = math.inf
    candidates = spec.p_candidates(prm) if spec.p_candidates else []
    try:
        p_opt, q_opt = optimize_p(
            lambda pe: spec.s_of_p(prm, pe), d, alpha, candidates)
    except ValueError:
        # no admissible averaging exponent anywhere
        return ThresholdReport(
            family=spec.name, params=prm, d=d, alpha=alpha,
            s_inf=s_infinity, optimal_p=None, s_at_optimal=s_infinity,
            beta_p=2 * alpha * s_infinity, q_main=None, q_corollary=None,
            q_mocktao=q_mocktao, improvement=False, lam=None,
            q_of_lambda=None)
    s_at = spec.s_of_p(prm, p_opt)
    beta_p = 2 * alpha * s_at
    q_main = main_threshold(d, alpha, p_opt, beta_p)
    improvement = improvement_condition(p_opt, s_at, s_infinity)
    lam = q_of_lambda = None
    if q_main is not None:
        lam, q_of_lambda, _ = interpolation_params(d, alpha, p_opt, beta_p)
    return ThresholdReport(
        family=spec.name, params=prm, d=d, alpha=alpha, s_inf=s_infinity,
        optimal_p=p_opt, s_at_optimal=s_at, beta_p=beta_p, q_main=q_main,
        q_corollary=q_opt, q_mocktao=q_mocktao, improvement=improvement,
        lam=lam, q_of_lambda=q_of_lambda)


def regime_label(name: str, params: Mapping[str, int] | None, q: float) -> str:
    """Theory-predicted regime at exponent q: bounded above the proven
    threshold, growing below the failure threshold, untested between."""
    spec = get(name)
    prm = spec.resolve_params(params or {})
    if spec.s_of_p is not None:
        report = threshold_report(name, prm)
        proven = report.q_corollary
        if proven is not None and q >= float(proven) - 1e-12:
            return "bounded"
    if spec.failure_q is not None:
        fail = spec.failure_q(prm)
        if is_inf(fail) or q < float(fail) - 1e-12:
            return "growing"
    return "untested"
