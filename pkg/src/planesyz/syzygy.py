"""Jacobian syzygies of a curve pair (X: g = 0, C: f = 0) with f = z^d g(x/z, y/z).

Graded pieces AR(f)_s and filtered pieces AR(g)_{<=s} are finite-dimensional
and are computed as exact kernels of coefficient matrices. The map ``phi``
sends a projective syzygy (a, b, c) to the affine syzygy
(a(x,y,1) - x c(x,y,1), b(x,y,1) - y c(x,y,1), d c(x,y,1)), and ``lift``
inverts it on each filtered piece.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .curves import AffineCurve, ProjectiveCurve
from .exactla import (
    EchelonBasis,
    ModularEchelon,
    MonomialIndex,
    QMatrix,
    _integer_row_sparse,
    encode_tuple,
    independent_subset,
    solve,
    sparse_kernel,
    sparse_solve,
)
from .groebner import colon_ideal, filtered_ideal_dim, graded_ideal_dim, groebner, standard_monomials
from .polyring import Poly, dehomogenize, gcd, eta, monomials_of_degree, monomials_up_to_degree


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class NotASyzygyError(ValueError):
    pass


def _x2() -> tuple[Poly, Poly]:
    return Poly.gens(2)  # type: ignore[return-value]


@dataclass(frozen=True)
class ProjSyzygy:
    """Homogeneous triple (a, b, c) with a f_x + b f_y + c f_z = 0."""

    a: Poly
    b: Poly
    c: Poly

    @property
    def components(self) -> tuple[Poly, Poly, Poly]:
        return self.a, self.b, self.c

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.components)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def satisfies(self, C: ProjectiveCurve) -> bool:
        fx, fy, fz = C.partials
        s = self.degree
        homogeneous = all(p.is_zero() or (p.is_homogeneous() and p.degree == s)
                          for p in self.components)
        return homogeneous and (self.a * fx + self.b * fy + self.c * fz).is_zero()

    def __add__(self, other: ProjSyzygy) -> ProjSyzygy:
        return ProjSyzygy(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: ProjSyzygy) -> ProjSyzygy:
        return ProjSyzygy(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> ProjSyzygy:
        return ProjSyzygy(-self.a, -self.b, -self.c)

    def times(self, u) -> ProjSyzygy:
        return ProjSyzygy(self.a * u, self.b * u, self.c * u)


@dataclass(frozen=True)
class AffSyzygy:
    """Triple (alpha, beta, gamma) with alpha g_x + beta g_y + gamma g = 0 for deg g = d."""

    alpha: Poly
    beta: Poly
    gamma: Poly
    d: int

    @property
    def components(self) -> tuple[Poly, Poly, Poly]:
        return self.alpha, self.beta, self.gamma

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    @cached_property
    def sdeg(self) -> int:
        return sdeg(self, self.d)

    def satisfies(self, X: AffineCurve) -> bool:
        return X.d == self.d and (self.alpha * X.gx + self.beta * X.gy + self.gamma * X.g).is_zero()

    def __add__(self, other: AffSyzygy) -> AffSyzygy:
        return AffSyzygy(self.alpha + other.alpha, self.beta + other.beta,
                         self.gamma + other.gamma, self.d)

    def __sub__(self, other: AffSyzygy) -> AffSyzygy:
        return AffSyzygy(self.alpha - other.alpha, self.beta - other.beta,
                         self.gamma - other.gamma, self.d)

    def __neg__(self) -> AffSyzygy:
        return AffSyzygy(-self.alpha, -self.beta, -self.gamma, self.d)

    def times(self, u) -> AffSyzygy:
        return AffSyzygy(self.alpha * u, self.beta * u, self.gamma * u, self.d)

    def same_triple(self, other: AffSyzygy) -> bool:
        return self.components == other.components


Syzygy = Union[ProjSyzygy, AffSyzygy]


@dataclass
class GradedPieceBasis:
    piece: str  # "AR(f)", "KR(f)", "AR(g)", "KR(g)"
    degree: int
    basis: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


@dataclass
class GeneratorSet:
    generators: list
    minimal: bool
    complete: bool = True  # False when the search bound still produced generators
    s_max: int | None = None

    @property
    def degrees(self) -> list[int]:
        return [g.sdeg if isinstance(g, AffSyzygy) else g.degree for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)


# -- projective pieces -------------------------------------------------------------

def _ar_f_columns(C: ProjectiveCurve, s: int):
    src = MonomialIndex(3, s)
    tgt = MonomialIndex(3, s + C.d - 1)
    cols = [tgt.encode_sparse(p.mul_monomial(m)) for p in C.partials for m in src.monomials]
    return src, tgt, cols


def ar_f_piece(C: ProjectiveCurve, s: int) -> GradedPieceBasis:
    """Basis of AR(f)_s, the kernel of (a, b, c) -> a f_x + b f_y + c f_z on (S_s)^3."""
    if s < 0:
        return GradedPieceBasis("AR(f)", s)
    cache = C.__dict__.setdefault("_ar_f_pieces", {})
    if s in cache:
        return cache[s]
    src, tgt, cols = _ar_f_columns(C, s)
    cden = 1
    for col in cols:
        for c in col.values():
            cden = cden * c.denominator // math.gcd(cden, c.denominator)
    int_cols = [{i: int(c * cden) for i, c in col.items()} for col in cols]
    basis = []
    for vec in sparse_kernel(cols, len(tgt)):
        if not _annihilates(vec, int_cols):
            raise InconsistencyError("kernel vector is not a syzygy")
        a, b, c = (src.decode(part) for part in _split(vec, 3))
        basis.append(ProjSyzygy(a, b, c))
    cache[s] = GradedPieceBasis("AR(f)", s, basis)
    return cache[s]


def _annihilates(vec: Sequence[Fraction], cols: Sequence[dict[int, int]]) -> bool:
    """Exact check that sum vec_j cols_j = 0 for integer columns."""
    den = 1
    for v in vec:
        if v:
            den = den * v.denominator // math.gcd(den, v.denominator)
    acc: dict[int, int] = {}
    for v, col in zip(vec, cols):
        if v:
            k = int(v * den)
            for i, c in col.items():
                acc[i] = acc.get(i, 0) + k * c
    return not any(acc.values())


def dim_ar_f(C: ProjectiveCurve, s: int) -> int:
    """dim AR(f)_s = 3 dim S_s - dim (J_f)_{s+d-1}, read from a Groebner basis of J_f."""
    if s < 0:
        return 0
    n = (s + 1) * (s + 2) // 2
    return 3 * n - graded_ideal_dim(C.jacobian_ideal, s + C.d - 1)


def _split(vec: Sequence, k: int) -> list[Sequence]:
    n = len(vec) // k
    return [vec[i * n:(i + 1) * n] for i in range(k)]


def mdr_f(C: ProjectiveCurve) -> int:
    """Minimal degree of a nonzero Jacobian syzygy; at most d - 1 (Koszul syzygies)."""
    for s in range(C.d):
        if ar_f_piece(C, s).dimension:
            return s
    raise InconsistencyError("no syzygy found up to degree d - 1")


# -- affine pieces -------------------------------------------------------------------

def sdeg(rho: AffSyzygy, d: int) -> int:
    """max(deg(x gamma + d alpha), deg(y gamma + d beta), deg gamma)."""
    if rho.is_zero():
        raise ValueError("the zero syzygy has no syzygy-degree")
    x, y = _x2()
    return max((x * rho.gamma + rho.alpha.scale(d)).degree,
               (y * rho.gamma + rho.beta.scale(d)).degree,
               rho.gamma.degree)


def phi(rho: ProjSyzygy, X: AffineCurve) -> AffSyzygy:
    C = X.projective_closure
    if not rho.satisfies(C):
        raise NotASyzygyError("triple is not a syzygy of the projective closure")
    return _phi_unchecked(rho, X)


def _phi_unchecked(rho: ProjSyzygy, X: AffineCurve) -> AffSyzygy:
    a, b, c = (dehomogenize(p) for p in rho.components)
    x, y = _x2()
    return AffSyzygy(a - x * c, b - y * c, c.scale(X.d), X.d)


def lift(rho: AffSyzygy, X: AffineCurve) -> ProjSyzygy:
    """The unique syzygy of degree sdeg(rho) whose image under phi is rho."""
    if not rho.satisfies(X):
        raise NotASyzygyError("triple is not a syzygy of the affine curve")
    d = X.d
    s = rho.sdeg
    x, y = _x2()
    inv = Fraction(1, d)
    a = eta((x * rho.gamma).scale(inv) + rho.alpha, s)
    b = eta((y * rho.gamma).scale(inv) + rho.beta, s)
    c = eta(rho.gamma.scale(inv), s)
    return ProjSyzygy(a, b, c)


def ar_g_filtered(X: AffineCurve, s: int) -> GradedPieceBasis:
    """Basis of AR(g)_{<=s} as the phi-image of a basis of AR(f)_s."""
    cache = X.__dict__.setdefault("_ar_g_pieces", {})
    if s not in cache:
        # ar_f_piece has already verified every basis vector
        piece = ar_f_piece(X.projective_closure, s)
        cache[s] = GradedPieceBasis("AR(g)", s, [_phi_unchecked(rho, X) for rho in piece.basis])
    return cache[s]


def ar_g_direct(X: AffineCurve, s: int) -> GradedPieceBasis:
    """Basis of AR(g)_{<=s} computed in R without passing through f.

    Writing A = x gamma + d alpha and B = y gamma + d beta, the condition
    sdeg <= s says A, B, gamma all have degree <= s, and the syzygy relation
    becomes (A - x gamma) g_x + (B - y gamma) g_y + d gamma g = 0.
    """
    if s < 0:
        return GradedPieceBasis("AR(g)", s)
    d = X.d
    x, y = _x2()
    src = MonomialIndex(2, s, "filtered")
    tgt = MonomialIndex(2, s + d, "filtered")
    cols = []
    for m in src.monomials:
        cols.append(tgt.encode_sparse(X.gx.mul_monomial(m)))
    for m in src.monomials:
        cols.append(tgt.encode_sparse(X.gy.mul_monomial(m)))
    for m in src.monomials:
        u = Poly.monomial(m)
        cols.append(tgt.encode_sparse(X.g.scale(d) * u - (x * X.gx + y * X.gy) * u))
    basis = []
    for vec in sparse_kernel(cols, len(tgt)):
        A, B, gamma = (src.decode(part) for part in _split(vec, 3))
        rho = AffSyzygy((A - x * gamma).scale(Fraction(1, d)),
                        (B - y * gamma).scale(Fraction(1, d)), gamma, d)
        if not rho.satisfies(X):
            raise InconsistencyError("kernel vector is not an affine syzygy")
        basis.append(rho)
    return GradedPieceBasis("AR(g)", s, basis)


def mdr_g(X: AffineCurve) -> int:
    """mdr(g), taken from the projective closure and checked against direct pieces."""
    r = mdr_f(X.projective_closure)
    for s in range(r + 1):
        dim = ar_g_direct(X, s).dimension
        if (dim > 0) != (s == r):
            raise InconsistencyError(f"direct AR(g)_<={s} has dimension {dim}, mdr(f) = {r}")
    return r


# -- Koszul syzygies and the quotients ER, E ----------------------------------------------

def koszul_proj(C: ProjectiveCurve) -> tuple[ProjSyzygy, ProjSyzygy, ProjSyzygy]:
    fx, fy, fz = C.partials
    zero = Poly.zero(3)
    kx = ProjSyzygy(zero, fz, -fy)
    ky = ProjSyzygy(-fz, zero, fx)
    kz = ProjSyzygy(fy, -fx, zero)
    # f_x kx + f_y ky + f_z kz = 0
    combo = kx.times(fx) + ky.times(fy) + kz.times(fz)
    if not combo.is_zero():
        raise InconsistencyError("Koszul relation failed")
    return kx, ky, kz


def koszul_aff(X: AffineCurve) -> tuple[AffSyzygy, AffSyzygy, AffSyzygy]:
    images = tuple(phi(k, X) for k in koszul_proj(X.projective_closure))
    d, g, gx, gy = X.d, X.g, X.gx, X.gy
    x, y = _x2()
    expected = (
        (x * gy, g.scale(d) - x * gx, gy.scale(-d)),
        (g.scale(-d) + y * gy, -(y * gx), gx.scale(d)),
        (gy, -gx, Poly.zero(2)),
    )
    for img, exp in zip(images, expected):
        if img.components != exp:
            raise InconsistencyError("phi of a Koszul syzygy differs from its closed form")
    return images  # type: ignore[return-value]


def kr_f_piece(C: ProjectiveCurve, s: int) -> GradedPieceBasis:
    """KR(f)_s = span of m * kappa for monomials m of degree s - d + 1."""
    e = s - C.d + 1
    if e < 0:
        return GradedPieceBasis("KR(f)", s)
    idx = MonomialIndex(3, s)
    candidates = [k.times(Poly.monomial(m))
                  for k in koszul_proj(C) for m in monomials_of_degree(e, 3)]
    vecs = [encode_tuple(idx, r.components) for r in candidates]
    keep = independent_subset(vecs, 3 * len(idx))
    return GradedPieceBasis("KR(f)", s, [candidates[i] for i in keep])


def er_f_dim(C: ProjectiveCurve, s: int) -> int:
    return ar_f_piece(C, s).dimension - kr_f_piece(C, s).dimension


def _aff_index(s: int) -> MonomialIndex:
    # sdeg <= s forces deg alpha, deg beta <= s + 1
    return MonomialIndex(2, s + 1, "filtered")


def kr_g_filtered(X: AffineCurve, s: int) -> GradedPieceBasis:
    """span{u kappa'_i : deg u <= s - sdeg(kappa'_i)}."""
    idx = _aff_index(s)
    candidates = []
    for k in koszul_aff(X):
        if k.is_zero():
            continue
        for m in monomials_up_to_degree(s - k.sdeg, 2):
            candidates.append(k.times(Poly.monomial(m)))
    vecs = [encode_tuple(idx, r.components) for r in candidates]
    keep = independent_subset(vecs, 3 * len(idx))
    return GradedPieceBasis("KR(g)", s, [candidates[i] for i in keep])


def kr_g_intersection_dim(X: AffineCurve, s: int) -> int:
    """dim (KR(g) ∩ AR(g)_{<=s}), using KR(g) = {rho in AR(g) : gamma in J_g}.

    That description of KR(g) needs the kernel of the third projection to be
    R kappa'_z, which holds exactly when gcd(g_x, g_y) = 1.
    """
    if not _partials_coprime(X):
        raise ValueError("g_x and g_y share a factor; KR(g) is not cut out by J_g")
    piece = ar_g_filtered(X, s)
    return piece.dimension - _gamma_rank_mod_jacobian(X, piece)


def _partials_coprime(X: AffineCurve) -> bool:
    if X.gx.is_zero() or X.gy.is_zero():
        return False
    return gcd(X.gx, X.gy).is_constant()


def _gamma_rank_mod_jacobian(X: AffineCurve, piece: GradedPieceBasis) -> int:
    J = X.jacobian_ideal
    idx = MonomialIndex(2, max(piece.degree, 0), "filtered")
    eb = EchelonBasis(len(idx))
    for rho in piece.basis:
        eb.add(idx.encode(J.normal_form(rho.gamma)))
    return eb.rank


def er_g_dim_filtered(X: AffineCurve, s: int) -> int:
    return ar_g_filtered(X, s).dimension - kr_g_filtered(X, s).dimension


def er_g_dim_exact(X: AffineCurve, s: int) -> int:
    """dim ER(g)_{<=s} = dim AR(g)_{<=s} / (KR(g) ∩ AR(g)_{<=s}); needs gcd(g_x, g_y) = 1."""
    if not _partials_coprime(X):
        raise ValueError("g_x and g_y share a factor; KR(g) is not cut out by J_g")
    return _gamma_rank_mod_jacobian(X, ar_g_filtered(X, s))


def e_g_dim_filtered(X: AffineCurve, s: int) -> int:
    """dim E(g)_{<=s} = dim A(g)_{<=s} - dim (J_g)_{<=s}."""
    return filtered_ideal_dim(a_ideal(X), s) - filtered_ideal_dim(X.jacobian_ideal, s)


def a_ideal(X: AffineCurve):
    """A(g) = J_g : (g), cached on the curve."""
    cached = X.__dict__.get("_a_ideal")
    if cached is None:
        cached = colon_ideal(X.jacobian_ideal, X.g)
        X.__dict__["_a_ideal"] = cached
    return cached


def ker_pi_piece(X: AffineCurve, s: int) -> list[AffSyzygy]:
    """Basis of the elements of AR(g)_{<=s} with vanishing third component."""
    piece = ar_g_filtered(X, s)
    if not piece.basis:
        return []
    idx = MonomialIndex(2, s, "filtered")
    cols = [idx.encode_sparse(rho.gamma) for rho in piece.basis]
    out = []
    for coeffs in sparse_kernel(cols, len(idx)):
        acc = None
        for c, rho in zip(coeffs, piece.basis):
            if c:
                term = rho.times(c)
                acc = term if acc is None else acc + term
        if acc is not None:
            out.append(acc)
    return out


# -- generators ----------------------------------------------------------------------

def _encode_sparse_tuple(idx: MonomialIndex, polys: Sequence[Poly]) -> dict[int, int]:
    n = len(idx)
    out = {}
    for i, p in enumerate(polys):
        out.update(idx.encode_sparse(p, offset=i * n))
    return _integer_row_sparse(out)


def minimal_generators_f(C: ProjectiveCurve, s_max: int | None = None) -> GeneratorSet:
    """Minimal homogeneous generators of AR(f) in degrees <= s_max (default 3(d-1)).

    At each degree the generators found so far span a subspace W of AR(f)_s;
    a basis of AR(f)_s is then swept and every vector outside the current
    span becomes a new generator.
    """
    if s_max is None:
        s_max = 3 * (C.d - 1)
    if s_max < C.d - 1:
        raise ValueError("s_max must be at least d - 1")
    gens: list[ProjSyzygy] = []
    complete = True
    for s in range(s_max + 1):
        target = dim_ar_f(C, s)
        if target == 0:
            continue
        idx = MonomialIndex(3, s)

        def multiples():
            for rho in gens:
                for m in monomials_of_degree(s - rho.degree, 3):
                    yield _encode_sparse_tuple(idx, rho.times(Poly.monomial(m)).components)

        # W sits inside AR(f)_s, so reaching the target rank mod p is already exact
        Wp = ModularEchelon(3 * len(idx))
        for row in multiples():
            if Wp.add_sparse(row) and Wp.rank == target:
                break
        if Wp.rank == target:
            continue
        W = EchelonBasis(3 * len(idx))
        for row in multiples():
            if W.add_sparse(row) and W.rank == target:
                break
        if W.rank == target:
            continue
        piece = ar_f_piece(C, s)
        if piece.dimension != target:
            raise InconsistencyError(
                f"AR(f)_{s}: kernel dimension {piece.dimension}, Groebner count {target}")
        for rho in piece.basis:
            if W.add_sparse(_encode_sparse_tuple(idx, rho.components)):
                gens.append(rho)
        if s == s_max:
            complete = False
    return GeneratorSet(gens, minimal=True, complete=complete, s_max=s_max)


# -- Saito criterion and bases of AR(g) ----------------------------------------------------

@dataclass(frozen=True)
class SaitoResult:
    certified: bool
    determinant: Poly
    lam: Fraction | None = None
    witness: Poly | None = None  # remainder mod g, or non-constant cofactor


def saito_check(delta1: AffSyzygy, delta2: AffSyzygy, X: AffineCurve) -> SaitoResult:
    """Certify a basis of AR(g): det [[a1, b1], [a2, b2]] must be a nonzero constant times g."""
    for delta in (delta1, delta2):
        if not delta.satisfies(X):
            raise NotASyzygyError("argument is not a syzygy of the curve")
    det = delta1.alpha * delta2.beta - delta2.alpha * delta1.beta
    q, r = det.divmod_single(X.g)
    if not r.is_zero():
        return SaitoResult(False, det, None, r)
    if q.is_constant() and not q.is_zero():
        return SaitoResult(True, det, q.constant_value(), None)
    return SaitoResult(False, det, None, q)


def express_in_basis(rho: AffSyzygy, basis: tuple[AffSyzygy, AffSyzygy],
                     X: AffineCurve) -> tuple[Poly, Poly]:
    """Coefficients (u, v) with rho = u basis[0] + v basis[1], by Cramer's rule."""
    d1, d2 = basis
    det = d1.alpha * d2.beta - d2.alpha * d1.beta
    u = (rho.alpha * d2.beta - d2.alpha * rho.beta).exquo(det)
    v = (d1.alpha * rho.beta - rho.alpha * d1.beta).exquo(det)
    if not (d1.times(u) + d2.times(v)).same_triple(rho):
        raise InconsistencyError("Cramer solution does not reproduce the syzygy")
    return u, v


@dataclass
class AffineGenerators:
    generating_set: GeneratorSet
    basis: tuple[AffSyzygy, AffSyzygy] | None = None
    saito: SaitoResult | None = None

    @property
    def certified(self) -> bool:
        return self.basis is not None


def _complete_to_basis(rho1: AffSyzygy, X: AffineCurve, piece: GradedPieceBasis) -> AffSyzygy | None:
    """Look for rho2 in ``piece`` with det(rho1, rho2) = g.

    det(rho1, .) / g is linear in rho2, so this is one linear system.
    """
    if not piece.basis:
        return None
    cofactors = []
    for v in piece.basis:
        det = rho1.alpha * v.beta - v.alpha * rho1.beta
        cofactors.append(det.exquo(X.g))
    monos = sorted({m for h in cofactors for m in h.monomials()} | {(0, 0)})
    rows = [[h.coefficient(m) for h in cofactors] for m in monos]
    rhs = [Fraction(int(not any(m))) for m in monos]
    sol = solve(QMatrix.from_rows(rows, len(cofactors)), rhs)
    if sol is None:
        return None
    return _combine(sol, piece.basis)


def _combine(coeffs: Sequence, basis: Sequence[AffSyzygy]) -> AffSyzygy | None:
    acc = None
    for c, v in zip(coeffs, basis):
        if c:
            acc = v.times(c) if acc is None else acc + v.times(c)
    return acc


def ideal_cofactors(target: Poly, gens: Sequence[Poly], max_degree: int) -> list[Poly] | None:
    """Polynomials u_i of degree <= D with sum u_i gens_i = target, smallest D <= max_degree."""
    top = max(g.degree for g in gens)
    for D in range(max(0, target.degree - top), max_degree + 1):
        src = MonomialIndex(2, D, "filtered")
        tgt = MonomialIndex(2, max(D + top, target.degree), "filtered")
        cols = [tgt.encode_sparse(g.mul_monomial(m)) for g in gens for m in src.monomials]
        sol = sparse_solve(cols, len(tgt), tgt.encode_sparse(target))
        if sol is not None:
            n = len(src)
            return [src.decode(sol[i * n:(i + 1) * n]) for i in range(len(gens))]
    return None


def bezout_cofactors(a: Poly, b: Poly, max_degree: int) -> tuple[Poly, Poly] | None:
    """(u, v) with u a + v b = 1, or None within the degree bound."""
    found = ideal_cofactors(Poly.constant(1, 2), [a, b], max_degree)
    return None if found is None else (found[0], found[1])


def _lift_gamma(gamma: Poly, X: AffineCurve, budget: int) -> AffSyzygy | None:
    """A syzygy with third entry exactly ``gamma``, of smallest syzygy-degree."""
    for s in range(max(0, gamma.degree), budget + 1):
        piece = ar_g_filtered(X, s)
        if not piece.basis:
            continue
        monos = sorted({m for v in piece.basis for m in v.gamma.monomials()} | set(gamma.monomials()))
        rows = [[v.gamma.coefficient(m) for v in piece.basis] for m in monos]
        sol = solve(QMatrix.from_rows(rows, len(piece.basis)), [gamma.coefficient(m) for m in monos])
        if sol is not None:
            return _combine(sol, piece.basis)
    return None


def _basis_from_colon(X: AffineCurve, budget: int) -> tuple[AffSyzygy, AffSyzygy] | None:
    """Lift two generators of A(g) and correct the pair by multiples of kappa'_z.

    For lifts rho_i of gamma_i with det = h g, adding p kappa'_z to rho1 and
    q kappa'_z to rho2 changes h into h + q gamma1 - p gamma2. When h is
    congruent to a nonzero constant modulo (gamma1, gamma2), a linear solve
    finds p, q making the determinant a constant multiple of g.
    """
    A = a_ideal(X)
    kz = koszul_aff(X)[2]
    if A.is_unit():
        rho0 = _lift_gamma(Poly.constant(1, 2), X, budget)
        return None if rho0 is None else (kz, rho0)
    gens = sorted(A.generators, key=lambda p: (p.degree, str(p)))
    for g1, g2 in itertools.combinations(gens, 2):
        if not groebner([g1, g2]).generators == A.generators:
            continue
        rho1 = _lift_gamma(g1, X, budget)
        rho2 = _lift_gamma(g2, X, budget) if rho1 is not None else None
        if rho2 is None:
            continue
        h = (rho1.alpha * rho2.beta - rho2.alpha * rho1.beta).exquo(X.g)
        lam = A.normal_form(h)
        if not lam.is_constant() or lam.is_zero():
            continue
        found = ideal_cofactors(lam - h, [g1, -g2], budget)
        if found is None:
            continue
        q, p = found
        return rho1 + kz.times(p), rho2 + kz.times(q)
    return None


def _univariate_relation(vals: Sequence[Poly], target: Poly, std) -> list[Fraction] | None:
    """Coefficients c with sum c_i vals_i = target, all given as normal forms."""
    rows = [[v.coefficient(m) for v in vals] for m in std]
    return solve(QMatrix.from_rows(rows, len(vals)), [target.coefficient(m) for m in std])


def _poly_in(coeffs: Sequence, ell: Poly) -> Poly:
    acc = Poly.zero(2)
    for c in reversed(coeffs):
        acc = acc * ell + c
    return acc


def _basis_from_shape(X: AffineCurve, budget: int) -> tuple[AffSyzygy, AffSyzygy] | None:
    """Basis search when A(g) is in shape position for a linear form ell.

    Then A(g) = (m(ell), y - P(ell)) and R/A(g) = Q[ell]/(m). Lifting both
    generators gives det = h g with h a unit mod A(g); rescaling the second
    lift by W(ell) = h^{-1} mod m keeps the pair generating A(g) (W is a
    nonzero constant on each line ell = root), and the remaining error lies
    in the ideal, which kappa'_z multiples absorb.
    """
    A = a_ideal(X)
    if A.is_unit():
        return None
    std = standard_monomials(A)
    if std is None:
        return None
    n = len(std)
    x, y = _x2()
    one = Poly.constant(1, 2)
    kz = koszul_aff(X)[2]
    for c in (0, 1, -1, 2, -2, 3):
        ell = x + y.scale(c) if c else x
        powers = [A.normal_form(one)]
        for _ in range(n):
            powers.append(A.normal_form(powers[-1] * ell))
        rel = _univariate_relation(powers[:n], powers[n], std)
        ynf = A.normal_form(y)
        py = _univariate_relation(powers[:n], ynf, std)
        if rel is None or py is None:
            continue
        g1 = _poly_in([-r for r in rel] + [1], ell)
        g2 = y - _poly_in(py, ell)
        if groebner([g1, g2]).generators != A.generators:
            continue
        bound = budget + n
        rho1 = _lift_gamma(g1, X, bound)
        rho2 = _lift_gamma(g2, X, bound) if rho1 is not None else None
        if rho2 is None:
            continue
        h = (rho1.alpha * rho2.beta - rho2.alpha * rho1.beta).exquo(X.g)
        hc = _univariate_relation(powers[:n], A.normal_form(h), std)
        if hc is None:
            continue
        inv = bezout_cofactors(_poly_in(hc, ell), g1, bound)
        if inv is None:
            continue
        w = inv[0]
        rho2 = rho2.times(w)
        found = ideal_cofactors(one - w * h, [g1, -(w * g2)], bound)
        if found is None:
            continue
        q, p = found
        return rho1 + kz.times(p), rho2 + kz.times(q)
    return None


def _repair_pair(rho1: AffSyzygy, rho2: AffSyzygy, X: AffineCurve,
                 budget: int) -> tuple[AffSyzygy, AffSyzygy] | None:
    """Turn det(rho1, rho2) = h g into a constant multiple of g when (h, gamma2) = (1).

    With w h - p gamma2 = 1, the pair (w rho1 + p kappa'_z, rho2) has
    determinant (w h - p gamma2) g = g.
    """
    det = rho1.alpha * rho2.beta - rho2.alpha * rho1.beta
    if det.is_zero():
        return None
    h = det.exquo(X.g)
    if rho2.gamma.is_zero() or not groebner([h, rho2.gamma]).is_unit():
        return None
    found = bezout_cofactors(h, -rho2.gamma, budget)
    if found is None:
        return None
    w, p = found
    kz = koszul_aff(X)[2]
    return rho1.times(w) + kz.times(p), rho2


def generators_g(X: AffineCurve, s_max: int | None = None, budget: int | None = None,
                 generators_f: GeneratorSet | None = None) -> AffineGenerators:
    """phi-images of minimal generators of AR(f), plus a Saito-certified basis if found.

    The basis search runs three passes, each exact and checked by
    :func:`saito_check`: pairs of phi-images; Bezout repair of pairs of
    candidates (phi-images, Koszul images, a basis of AR(g)_{<=mdr}); and a
    linear solve for a partner of each candidate in AR(g)_{<=s}, s <= budget.
    ``budget`` (default 2d) also bounds the Bezout cofactor degree.
    """
    if generators_f is None:
        generators_f = minimal_generators_f(X.projective_closure, s_max)
    images = [phi(rho, X) for rho in generators_f.generators]
    gset = GeneratorSet(images, minimal=False, complete=generators_f.complete,
                        s_max=generators_f.s_max)
    order = sorted(range(len(images)), key=lambda i: (images[i].sdeg, i))
    for i, j in itertools.combinations(order, 2):
        res = saito_check(images[i], images[j], X)
        if res.certified:
            return AffineGenerators(gset, (images[i], images[j]), res)
    if budget is None:
        budget = 2 * X.d
    r = min((g.sdeg for g in images), default=X.d - 1)
    candidates = [images[i] for i in order]
    candidates += [k for k in koszul_aff(X) if not k.is_zero()]
    candidates += ar_g_filtered(X, r).basis
    candidates.sort(key=lambda c: c.sdeg)
    pair = _basis_from_colon(X, budget)
    if pair is not None:
        res = saito_check(*pair, X)
        if res.certified:
            return AffineGenerators(gset, pair, res)
    pair = _basis_from_shape(X, budget)
    if pair is not None:
        res = saito_check(*pair, X)
        if res.certified:
            return AffineGenerators(gset, pair, res)
    for rho1, rho2 in itertools.permutations(candidates, 2):
        pair = _repair_pair(rho1, rho2, X, budget)
        if pair is not None:
            res = saito_check(*pair, X)
            if res.certified:
                return AffineGenerators(gset, pair, res)
    for s in range(r, budget + 1):
        piece = ar_g_filtered(X, s)
        for rho1 in candidates:
            if rho1.sdeg > s:
                continue
            rho2 = _complete_to_basis(rho1, X, piece)
            if rho2 is not None:
                res = saito_check(rho1, rho2, X)
                if res.certified:
                    return AffineGenerators(gset, (rho1, rho2), res)
    return AffineGenerators(gset, None, None)
