"""Validated affine and projective plane curves with cached Jacobian data."""

from __future__ import annotations

from functools import cached_property

from .groebner import GroebnerBasis, groebner
from .polyring import (
    ArityError,
    NotHomogeneousError,
    Poly,
    dehomogenize,
    euler_check,
    homogenize,
    squarefree_check,
)


class CurveError(ValueError):
    """Input does not define a curve the analysis applies to."""


class NotReducedError(CurveError):
    pass


class ComponentAtInfinityError(CurveError):
    """The line z = 0 is a component, so there is no affine/projective pair."""


class AffineCurve:
    """Reduced affine plane curve ``g = 0`` in Q^2.

    Cached attributes are computed on first access and never change.
    """

    def __init__(self, g: Poly, *, check: bool = True):
        if g.nvars != 2:
            raise ArityError("an affine curve needs a polynomial in x, y")
        if g.degree < 1:
            raise CurveError("degree 0 polynomial does not define a curve")
        if check and not squarefree_check(g):
            raise NotReducedError("not squarefree")
        self.g = g
        self.d = g.degree

    @cached_property
    def gx(self) -> Poly:
        return self.g.partial(0)

    @cached_property
    def gy(self) -> Poly:
        return self.g.partial(1)

    @property
    def jacobian(self) -> tuple[Poly, Poly]:
        return self.gx, self.gy

    @cached_property
    def jacobian_ideal(self) -> GroebnerBasis:
        return groebner([self.gx, self.gy])

    @cached_property
    def tjurina_ideal(self) -> GroebnerBasis:
        return groebner([self.gx, self.gy, self.g])

    @cached_property
    def projective_closure(self) -> ProjectiveCurve:
        return ProjectiveCurve(homogenize(self.g, self.d), check=False)

    def __repr__(self) -> str:
        return f"AffineCurve({str(self.g)!r})"


class ProjectiveCurve:
    """Reduced projective plane curve ``f = 0`` with ``f`` homogeneous."""

    def __init__(self, f: Poly, *, check: bool = True):
        if f.nvars != 3:
            raise ArityError("a projective curve needs a polynomial in x, y, z")
        if f.degree < 1:
            raise CurveError("degree 0 polynomial does not define a curve")
        if not f.is_homogeneous():
            raise NotHomogeneousError("not homogeneous")
        if check and not squarefree_check(f):
            raise NotReducedError("not squarefree")
        self.f = f
        self.d = f.degree
        if check:
            ok, _ = euler_check(f)
            assert ok

    @cached_property
    def partials(self) -> tuple[Poly, Poly, Poly]:
        return self.f.partial(0), self.f.partial(1), self.f.partial(2)

    @property
    def fx(self) -> Poly:
        return self.partials[0]

    @property
    def fy(self) -> Poly:
        return self.partials[1]

    @property
    def fz(self) -> Poly:
        return self.partials[2]

    @cached_property
    def jacobian_ideal(self) -> GroebnerBasis:
        return groebner(list(self.partials))

    def has_line_at_infinity(self) -> bool:
        z = Poly.variable(2, 3)
        return z.divides(self.f)

    @cached_property
    def affine_part(self) -> AffineCurve:
        if self.has_line_at_infinity():
            raise ComponentAtInfinityError("z divides f: the line at infinity is a component")
        return AffineCurve(dehomogenize(self.f), check=False)

    def __repr__(self) -> str:
        return f"ProjectiveCurve({str(self.f)!r})"
