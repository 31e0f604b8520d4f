from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SYMBOLS, to_sympy
from planesyz.curves import AffineCurve, ProjectiveCurve
from planesyz.exactla import EchelonBasis, MonomialIndex, encode_tuple
from planesyz.polyring import Poly, monomials_of_degree
from planesyz.syzygy import (
    AffSyzygy,
    NotASyzygyError,
    ProjSyzygy,
    ar_f_piece,
    ar_g_direct,
    ar_g_filtered,
    bezout_cofactors,
    dim_ar_f,
    express_in_basis,
    generators_g,
    ideal_cofactors,
    ker_pi_piece,
    koszul_aff,
    koszul_proj,
    kr_g_filtered,
    kr_g_intersection_dim,
    lift,
    mdr_f,
    mdr_g,
    minimal_generators_f,
    phi,
    saito_check,
    sdeg,
)
from planesyz.textio import parse_polynomial

x, y = Poly.gens(2)


def aff(text: str) -> AffineCurve:
    return AffineCurve(parse_polynomial(text, 2))


def proj(text: str) -> ProjectiveCurve:
    return ProjectiveCurve(parse_polynomial(text, 3))


AFFINE = ["x^2 + y^3", "x*y", "y^2 - x^3 - x^2", "x^3 + y^2 - 1", "y + x^3",
          "x^4 + y^4 + 1", "x*y*(x - y - 1)", "x^2*y^2 + x^2 + y^2 - 1"]
PROJECTIVE = ["x*y*z", "y*z^2 + x^3", "x^4 + y^4 + z^4", "x*y*z^2 + x^4 + y^4",
              "x*y*(x - y)*(x + y - z)", "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x + y + z)"]


def sympy_dim_ar_f(C: ProjectiveCurve, s: int) -> int:
    """3 dim S_s - rank of (a, b, c) -> a f_x + b f_y + c f_z, built entirely in sympy."""
    f = to_sympy(C.f)
    parts = [sympy.diff(f, v) for v in SYMBOLS]
    src = [m for m in itertools.product(range(s + 1), repeat=3) if sum(m) == s]
    tgt = [m for m in itertools.product(range(s + C.d), repeat=3) if sum(m) == s + C.d - 1]
    pos = {m: i for i, m in enumerate(tgt)}
    M = sympy.zeros(len(tgt), 3 * len(src))
    for k, p in enumerate(parts):
        for j, m in enumerate(src):
            mono = SYMBOLS[0] ** m[0] * SYMBOLS[1] ** m[1] * SYMBOLS[2] ** m[2]
            img = sympy.Poly(sympy.expand(p * mono), *SYMBOLS)
            for e, c in img.terms():
                M[pos[e], k * len(src) + j] = c
    return 3 * len(src) - M.rank()


@pytest.mark.parametrize("text", PROJECTIVE)
def test_ar_f_dimension_matches_sympy(text):
    C = proj(text)
    for s in range(C.d + 1):
        piece = ar_f_piece(C, s)
        assert piece.dimension == dim_ar_f(C, s) == sympy_dim_ar_f(C, s)
        assert all(rho.satisfies(C) for rho in piece.basis)


@pytest.mark.parametrize("text", AFFINE)
def test_filtered_pieces_agree(text):
    X = aff(text)
    C = X.projective_closure
    for s in range(2 * X.d + 1):
        assert ar_g_direct(X, s).dimension == ar_g_filtered(X, s).dimension == dim_ar_f(C, s)


@pytest.mark.parametrize("text", AFFINE)
def test_phi_lift_inverse(text):
    X = aff(text)
    C = X.projective_closure
    for s in range(X.d + 1):
        for rho in ar_g_direct(X, s).basis:
            assert rho.sdeg <= s
            up = lift(rho, X)
            assert up.satisfies(C) and up.degree == rho.sdeg
            assert phi(up, X) == rho
        for rho in ar_f_piece(C, s).basis:
            image = phi(rho, X)
            assert image.satisfies(X) and image.sdeg <= s


def test_phi_rejects_non_syzygy():
    X = aff("x^2 + y^3")
    Xp, Yp, Zp = Poly.gens(3)
    with pytest.raises(NotASyzygyError):
        phi(ProjSyzygy(Xp, Yp, Zp), X)
    with pytest.raises(NotASyzygyError):
        lift(AffSyzygy(x, y, Poly.zero(2), 3), X)


def test_sdeg_definition():
    # sdeg = max(deg(x gamma + d alpha), deg(y gamma + d beta), deg gamma)
    rho = AffSyzygy(-x, -3 * y, Poly.constant(3, 2), 3)
    assert sdeg(rho, 3) == 1
    # cancellation in x gamma + d alpha lowers sdeg below the naive bound
    rho2 = AffSyzygy(-x * y, y, 3 * y, 3)
    assert sdeg(rho2, 3) == 2
    with pytest.raises(ValueError):
        sdeg(AffSyzygy(Poly.zero(2), Poly.zero(2), Poly.zero(2), 3), 3)


@pytest.mark.parametrize("text", AFFINE)
def test_mdr_agrees(text):
    X = aff(text)
    assert mdr_g(X) == mdr_f(X.projective_closure)


@pytest.mark.parametrize("text", AFFINE + ["x^2 - 1"])
def test_koszul_syzygies(text):
    X = aff(text)
    for k in koszul_aff(X):
        assert k.satisfies(X)
    for k in koszul_proj(X.projective_closure):
        assert k.satisfies(X.projective_closure)


def _generated_dim(gens, s):
    idx = MonomialIndex(3, s)
    eb = EchelonBasis(3 * len(idx))
    for g in gens:
        if g.degree <= s:
            for m in monomials_of_degree(s - g.degree, 3):
                eb.add(encode_tuple(idx, g.times(Poly.monomial(m)).components))
    return eb.rank


# free curves have two generators of degrees (r, d-1-r); a nearly free curve
# (tau = tau_max - 1) has three, of degrees (r, d-r, d-r)
@pytest.mark.parametrize("text, degrees", [
    ("x*y*z", [1, 1]),
    ("y*z^2 + x^3", [1, 2, 2]),
    ("x^4 + y^4 + z^4", [3, 3, 3]),
    ("x*y*(x - y)*(x + y - z)", [1, 2]),
])
def test_minimal_generators(text, degrees):
    C = proj(text)
    gset = minimal_generators_f(C)
    assert sorted(gset.degrees) == degrees and gset.complete
    for s in range(3 * (C.d - 1) + 1):
        assert _generated_dim(gset.generators, s) == dim_ar_f(C, s)
    # no generator lies in the module generated by the others
    for i, g in enumerate(gset.generators):
        others = gset.generators[:i] + gset.generators[i + 1:]
        assert _generated_dim(others, g.degree) < dim_ar_f(C, g.degree)


def test_generator_search_bound_marks_incomplete():
    C = proj("x^4 + y^4 + z^4")
    gset = minimal_generators_f(C, s_max=3)
    assert not gset.complete and gset.degrees == [3, 3, 3]


@pytest.mark.parametrize("text", AFFINE)
def test_certified_basis(text):
    X = aff(text)
    found = generators_g(X)
    assert found.certified
    d1, d2 = found.basis
    res = saito_check(d1, d2, X)
    assert res.certified and res.lam != 0
    assert res.determinant == X.g.scale(res.lam)
    # every phi-image of a generator of AR(f) has polynomial coordinates in the basis
    for rho in found.generating_set.generators:
        u, v = express_in_basis(rho, found.basis, X)
        assert (d1.times(u) + d2.times(v)).same_triple(rho)


def test_saito_rejects_non_basis():
    X = aff("x^2 + y^3")
    kz = koszul_aff(X)[2]
    res = saito_check(kz, kz.times(x), X)
    assert not res.certified
    # det(rho, kappa'_z) = gamma(rho) g, so the cofactor is the third entry
    kx = koszul_aff(X)[0]
    res = saito_check(kx, kz, X)
    assert not res.certified and res.witness == kx.gamma == -9 * y ** 2


def test_cofactor_solvers():
    u, v = bezout_cofactors(x ** 2, 1 - x * y, 3)
    assert u * x ** 2 + v * (1 - x * y) == Poly.constant(1, 2)
    # both vanish at (0, -1)
    assert bezout_cofactors(x, 1 - x + y, 4) is None
    target = x ** 2 * y + y ** 3
    cof = ideal_cofactors(target, [x ** 2, y], 3)
    assert cof[0] * x ** 2 + cof[1] * y == target


def test_parallel_lines_kernel_of_projection():
    # g_y = 0 here, so (0, 1, 0) is a syzygy with vanishing third entry that is no multiple of kappa'_z
    X = aff("x^2 - 1")
    kz = koszul_aff(X)[2]
    rho = AffSyzygy(Poly.zero(2), Poly.constant(1, 2), Poly.zero(2), 2)
    assert rho.satisfies(X)
    assert kz.components == (Poly.zero(2), -2 * x, Poly.zero(2))
    kernel = ker_pi_piece(X, 0)
    assert len(kernel) == 1 and kernel[0].alpha.is_zero() and kernel[0].gamma.is_zero()
    with pytest.raises(ValueError):
        kr_g_intersection_dim(X, 1)


@pytest.mark.parametrize("text", ["x^2 + y^3", "y^2 - x^3 - x^2", "x^3 + y^2 - 1", "x*y*(x - y - 1)"])
def test_koszul_span_equals_intersection(text):
    X = aff(text)
    for s in range(2 * X.d + 1):
        assert kr_g_filtered(X, s).dimension == kr_g_intersection_dim(X, s)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(AFFINE[:5]), st.integers(0, 3), st.randoms(use_true_random=False))
def test_ker_pi_elements_are_hamiltonian(text, s, rnd):
    X = aff(text)
    kernel = ker_pi_piece(X, s)
    if not kernel:
        return
    coeffs = [Fraction(rnd.randint(-3, 3)) for _ in kernel]
    rho = None
    for c, k in zip(coeffs, kernel):
        rho = k.times(c) if rho is None else rho + k.times(c)
    h, r = rho.alpha.divmod_single(X.gy)
    assert r.is_zero() and rho.beta == -(h * X.gx) and rho.gamma.is_zero()
