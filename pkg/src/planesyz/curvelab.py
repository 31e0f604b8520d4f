"""Curve-level invariants: Tjurina numbers, freeness, and the Tjurina bound suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .curves import (
    AffineCurve,
    ComponentAtInfinityError,
    CurveError,
    NotReducedError,
    ProjectiveCurve,
)
from .exactla import EchelonBasis, MonomialIndex
from .groebner import INFINITE, groebner, quotient_dimension
from .polyring import Poly, monomials_of_degree
from .syzygy import (
    AffineGenerators,
    GeneratorSet,
    InconsistencyError,
    a_ideal,
    generators_g,
    mdr_f,
    mdr_g,
    minimal_generators_f,
)

__all__ = [
    "AffineCurve", "ProjectiveCurve", "CurveError", "NotReducedError",
    "ComponentAtInfinityError", "NonIsolatedError", "TjurinaBreakdown",
    "tjurina_affine", "tjurina_projective", "tjurina_projective_oracle",
    "sing_at_infinity", "tau_bounds", "FreenessVerdict", "freeness_verdict",
    "BoundCheck", "bound_check_suite", "line_change", "transform",
    "CurveReport", "REPORT_KEYS", "analyze", "curve_pair",
]


class NonIsolatedError(CurveError):
    """A Tjurina algebra is infinite dimensional: the input is not reduced."""


class ComponentLineError(CurveError):
    pass


# -- Tjurina numbers ---------------------------------------------------------------

def _tjurina_algebra_dim(h: Poly, localize: Sequence[int] = ()) -> int:
    """dim R/(h, h_u, h_v) + (w^N : w in localize), N = 1 + dim R/(h, h_u, h_v)."""
    gens = [h, h.partial(0), h.partial(1)]
    full = quotient_dimension(groebner(gens))
    if full == INFINITE:
        raise NonIsolatedError("Tjurina algebra is infinite dimensional (non-reduced curve)")
    if not localize or full == 0:
        return int(full)
    N = int(full) + 1
    powers = [Poly.variable(i, 2) ** N for i in localize]
    return int(quotient_dimension(groebner(gens + powers)))


def tjurina_affine(X: AffineCurve) -> int:
    """tau(X) = dim R / (g_x, g_y, g)."""
    tau = quotient_dimension(X.tjurina_ideal)
    if tau == INFINITE:
        raise NonIsolatedError("internal inconsistency: reduced curve with non-isolated singularities")
    return int(tau)


@dataclass(frozen=True)
class TjurinaBreakdown:
    """tau(C) split over {z != 0}, {z = 0, y != 0} and the point (1:0:0)."""

    z: int
    inf_y: int
    inf_x: int

    @property
    def total(self) -> int:
        return self.z + self.inf_y + self.inf_x

    @property
    def at_infinity(self) -> int:
        return self.inf_y + self.inf_x


def _chart(f: Poly, keep: tuple[int, int]) -> Poly:
    # set the remaining variable to 1, keep the other two in order
    out: dict = {}
    for m, c in f.terms():
        k = (m[keep[0]], m[keep[1]])
        out[k] = out.get(k, 0) + c
    return Poly(out, 2)


def tjurina_projective(C: ProjectiveCurve) -> TjurinaBreakdown:
    f = C.f
    tau_z = _tjurina_algebra_dim(_chart(f, (0, 1)))
    # chart y = 1, coordinates (x, z): keep only points on z = 0
    tau_y = _tjurina_algebra_dim(_chart(f, (0, 2)), localize=(1,))
    # chart x = 1, coordinates (y, z): keep only the point y = z = 0
    tau_x = _tjurina_algebra_dim(_chart(f, (1, 2)), localize=(0, 1))
    return TjurinaBreakdown(tau_z, tau_y, tau_x)


def milnor_algebra_dim(C: ProjectiveCurve, k: int) -> int:
    """dim (S/J_f)_k by linear algebra on S_k."""
    if k < 0:
        return 0
    idx = MonomialIndex(3, k)
    eb = EchelonBasis(len(idx))
    for p in C.partials:
        for m in monomials_of_degree(k - C.d + 1, 3):
            q = p.mul_monomial(m)
            if q:
                eb.add(idx.encode(q))
    return len(idx) - eb.rank


def tjurina_projective_oracle(C: ProjectiveCurve, start: int | None = None,
                              limit: int | None = None) -> int:
    """Stable value of dim (S/J_f)_k, probed from k = 3(d-2) until two equal values."""
    k = max(0, 3 * (C.d - 2)) if start is None else start
    if limit is None:
        limit = k + 4 * C.d + 4
    prev = milnor_algebra_dim(C, k)
    while k < limit:
        k += 1
        cur = milnor_algebra_dim(C, k)
        if cur == prev:
            return cur
        prev = cur
    raise InconsistencyError("Milnor algebra dimension did not stabilize")


def sing_at_infinity(C: ProjectiveCurve, breakdown: TjurinaBreakdown | None = None) -> bool:
    b = breakdown or tjurina_projective(C)
    return b.at_infinity > 0


# -- bounds and freeness ----------------------------------------------------------------

def tau_bounds(d: int, r: int) -> tuple[int, int]:
    """(tau(d,r)_min, tau(d,r)_max) for a degree d curve with mdr r."""
    if not 0 <= r <= d - 1:
        raise ValueError(f"mdr {r} outside [0, {d - 1}]")
    low = (d - 1) * (d - r - 1)
    high = low + r * r
    if 2 * r >= d:
        high -= comb(2 * r - d + 2, 2)
    return low, high


@dataclass(frozen=True)
class FreenessVerdict:
    kind: str  # "free", "maximal_tjurina" or "not_free"
    mdr: int
    tau: int
    tau_min: int
    tau_max: int
    exponents: tuple[int, int] | None = None

    @property
    def free(self) -> bool:
        return self.kind == "free"


def freeness_verdict(C: ProjectiveCurve, *, mdr: int | None = None, tau: int | None = None,
                     generators: GeneratorSet | None = None) -> FreenessVerdict:
    r = mdr_f(C) if mdr is None else mdr
    t = tjurina_projective(C).total if tau is None else tau
    low, high = tau_bounds(C.d, r)
    if 2 * r < C.d and t == high:
        verdict = FreenessVerdict("free", r, t, low, high, (r, C.d - 1 - r))
        if generators is not None and generators.complete:
            if sorted(generators.degrees) != [r, C.d - 1 - r]:
                raise InconsistencyError(
                    f"free by Tjurina count but generators have degrees {generators.degrees}")
        return verdict
    if 2 * r >= C.d and t == high:
        return FreenessVerdict("maximal_tjurina", r, t, low, high)
    return FreenessVerdict("not_free", r, t, low, high)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: Any
    bound: Any
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "value": _jsonable(self.value), "bound": _jsonable(self.bound),
                "passed": self.passed, "detail": self.detail}


def _jsonable(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def bound_check_suite(X: AffineCurve | None, C: ProjectiveCurve, *,
                      mdr: int | None = None,
                      breakdown: TjurinaBreakdown | None = None,
                      tau_affine: int | None = None,
                      verdict: FreenessVerdict | None = None,
                      generators: GeneratorSet | None = None,
                      affine_generators: AffineGenerators | None = None) -> list[BoundCheck]:
    """Evaluate every inequality relating tau, mdr and the exponents.

    All of them are theorems, so a failed check points at a bug.
    """
    d = C.d
    r = mdr_f(C) if mdr is None else mdr
    b = breakdown or tjurina_projective(C)
    tau_c = b.total
    low, high = tau_bounds(d, r)
    v = verdict or freeness_verdict(C, mdr=r, tau=tau_c)
    checks = [
        BoundCheck("tau_min <= tau(C)", tau_c, low, low <= tau_c),
        BoundCheck("tau(C) <= tau_max", tau_c, high, tau_c <= high),
        BoundCheck("mdr <= d-1", r, d - 1, r <= d - 1),
    ]
    if d >= 2:
        lower = Fraction(d - 1) - Fraction(tau_c, d - 1)
        checks.append(BoundCheck("d-1-tau(C)/(d-1) <= mdr", r, lower, lower <= r))
        if tau_c < d - 1:
            checks.append(BoundCheck("tau(C) < d-1 implies mdr = d-1", r, d - 1, r == d - 1))
    if v.free:
        d1, d2 = v.exponents  # type: ignore[misc]
        checks.append(BoundCheck("free: d1 <= (d-1)/2", d1, Fraction(d - 1, 2), 2 * d1 <= d - 1))
        checks.append(BoundCheck("free: d1 + d2 = d-1", d1 + d2, d - 1, d1 + d2 == d - 1))
    if generators is not None and generators.complete:
        two = len(generators) == 2 and sum(generators.degrees) == d - 1
        checks.append(BoundCheck("free iff AR(f) has two generators", len(generators),
                                 2 if v.free else "not 2", two == v.free,
                                 f"generator degrees {generators.degrees}"))
    if X is not None:
        t_x = tjurina_affine(X) if tau_affine is None else tau_affine
        r_g, r_f = mdr_g(X), mdr_f(C)
        checks.append(BoundCheck("mdr(g) = mdr(f)", r_g, r_f, r_g == r_f == r))
        checks.append(BoundCheck("tau(X) <= tau(C)", t_x, tau_c, t_x <= tau_c))
        checks.append(BoundCheck("tau(X) <= tau_max", t_x, high, t_x <= high))
        no_inf = b.at_infinity == 0
        checks.append(BoundCheck("tau(X) = tau(C) iff no singularity at infinity",
                                 t_x == tau_c, no_inf, (t_x == tau_c) == no_inf))
        extremal = no_inf and v.kind in ("free", "maximal_tjurina")
        checks.append(BoundCheck("tau(X) = tau_max iff no singularity at infinity and C extremal",
                                 t_x == high, extremal, (t_x == high) == extremal))
        if affine_generators is not None and affine_generators.certified:
            d1, d2 = affine_generators.basis  # type: ignore[misc]
            top = max((d1.alpha * d2.beta).degree, (d2.alpha * d1.beta).degree)
            checks.append(BoundCheck("Saito basis: max(deg a1 b2, deg a2 b1) >= d", top, d, top >= d))
    return checks


# -- coordinate changes ---------------------------------------------------------------------

def _inverse3(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    (a, b, c), (d, e, f), (g, h, i) = M
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ValueError("singular coordinate change")
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return [[v / det for v in row] for row in adj]


def transform(f: Poly, M: Sequence[Sequence]) -> Poly:
    """f(M^{-1} v): the equation of the curve in the coordinates v' = M v."""
    M = [[Fraction(v) for v in row] for row in M]
    inv = _inverse3(M)
    X, Y, Z = Poly.gens(3)
    images = [X.scale(row[0]) + Y.scale(row[1]) + Z.scale(row[2]) for row in inv]
    return f.compose(images)


def line_change(C: ProjectiveCurve, ell: Poly) -> AffineCurve:
    """Affine part of C in the complement of the line ell = 0."""
    if ell.nvars != 3 or ell.degree != 1 or not ell.is_homogeneous():
        raise ValueError("ell must be a nonzero linear form in x, y, z")
    if ell.divides(C.f):
        raise ComponentLineError("the line is a component of the curve")
    row = [ell.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    units = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        M = [units[i], units[j], row]
        try:
            f_new = transform(C.f, M)
        except ValueError:
            continue
        return ProjectiveCurve(f_new, check=False).affine_part
    raise AssertionError("unreachable: some coordinate pair completes a nonzero form")


# -- full report ----------------------------------------------------------------------------

def curve_pair(poly: Poly, kind: str) -> tuple[AffineCurve | None, ProjectiveCurve]:
    if kind == "affine":
        X = AffineCurve(poly)
        return X, X.projective_closure
    C = ProjectiveCurve(poly)
    return (None if C.has_line_at_infinity() else C.affine_part), C


REPORT_KEYS = (
    "name", "kind", "degree", "f", "g", "mdr", "tau_affine", "tau_projective", "tau_charts",
    "tau_oracle", "sing_at_infinity", "free_projective", "verdict", "exponents", "bounds",
    "n_generators", "generator_degrees", "generators_complete", "generators",
    "basis_certified", "saito_lambda", "basis", "a_g_unit",
)


@dataclass
class CurveReport:
    name: str
    kind: str
    degree: int
    f: str
    g: str | None
    mdr: int
    tau_affine: int | None
    tau_projective: int
    tau_charts: dict[str, int]
    sing_at_infinity: bool
    verdict: FreenessVerdict
    tau_min: int
    tau_max: int
    checks: list[BoundCheck]
    generators: list = field(default_factory=list)
    generator_degrees: list[int] = field(default_factory=list)
    generators_complete: bool = True
    basis_certified: bool = False
    saito_lambda: Fraction | None = None
    basis: list = field(default_factory=list)
    a_g_unit: bool | None = None
    tau_oracle: int | None = None

    @property
    def bound_satisfied(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def free_projective(self) -> bool:
        return self.verdict.free

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "degree": self.degree,
            "f": self.f,
            "g": self.g,
            "mdr": self.mdr,
            "tau_affine": self.tau_affine,
            "tau_projective": self.tau_projective,
            "tau_charts": self.tau_charts,
            "tau_oracle": self.tau_oracle,
            "sing_at_infinity": self.sing_at_infinity,
            "free_projective": self.free_projective,
            "verdict": self.verdict.kind,
            "exponents": list(self.verdict.exponents) if self.verdict.exponents else None,
            "bounds": {
                "tau_min": self.tau_min,
                "tau_max": self.tau_max,
                "satisfied": self.bound_satisfied,
                "checks": [c.as_dict() for c in self.checks],
            },
            "n_generators": len(self.generators),
            "generator_degrees": self.generator_degrees,
            "generators_complete": self.generators_complete,
            "generators": [[str(p) for p in rho.components] for rho in self.generators],
            "basis_certified": self.basis_certified,
            "saito_lambda": _jsonable(self.saito_lambda),
            "basis": [[str(p) for p in rho.components] for rho in self.basis],
            "a_g_unit": self.a_g_unit,
        }

    def field_value(self, key: str):
        """Look up a (possibly dotted) report field, e.g. ``bounds.tau_max``."""
        value: Any = self.as_dict()
        for part in key.split("."):
            if not isinstance(value, dict) or part not in value:
                raise KeyError(key)
            value = value[part]
        return value


def analyze(poly: Poly, kind: str, name: str = "", *, s_max: int | None = None,
            budget: int | None = None, oracle: bool = False) -> CurveReport:
    X, C = curve_pair(poly, kind)
    r = mdr_g(X) if X is not None else mdr_f(C)
    breakdown = tjurina_projective(C)
    tau_x = None
    if X is not None:
        tau_x = tjurina_affine(X)
        if tau_x != breakdown.z:
            raise InconsistencyError(f"tau(X) = {tau_x} but the z-chart gives {breakdown.z}")
    gens = minimal_generators_f(C, s_max)
    verdict = freeness_verdict(C, mdr=r, tau=breakdown.total, generators=gens)
    aff = generators_g(X, budget=budget, generators_f=gens) if X is not None else None
    checks = bound_check_suite(X, C, mdr=r, breakdown=breakdown, tau_affine=tau_x,
                               verdict=verdict, generators=gens, affine_generators=aff)
    tau_oracle = None
    if oracle:
        tau_oracle = tjurina_projective_oracle(C)
        checks.append(BoundCheck("tau(C) Groebner = Milnor algebra oracle", breakdown.total,
                                 tau_oracle, breakdown.total == tau_oracle))
    return CurveReport(
        name=name,
        kind=kind,
        degree=C.d,
        f=str(C.f),
        g=str(X.g) if X is not None else None,
        mdr=r,
        tau_affine=tau_x,
        tau_projective=breakdown.total,
        tau_charts={"z": breakdown.z, "inf_y": breakdown.inf_y, "inf_x": breakdown.inf_x},
        sing_at_infinity=breakdown.at_infinity > 0,
        verdict=verdict,
        tau_min=verdict.tau_min,
        tau_max=verdict.tau_max,
        checks=checks,
        generators=list(gens.generators),
        generator_degrees=gens.degrees,
        generators_complete=gens.complete,
        basis_certified=bool(aff and aff.certified),
        saito_lambda=aff.saito.lam if aff and aff.saito else None,
        basis=list(aff.basis) if aff and aff.basis else [],
        a_g_unit=a_ideal(X).is_unit() if X is not None else None,
        tau_oracle=tau_oracle,
    )
