"""Sparse multivariate polynomials over Q and the homogenization calculus.

Polynomials live either in the affine ring Q[x, y] (arity 2) or in the graded
ring Q[x, y, z] (arity 3). Terms are kept in a dict whose insertion order is
descending graded reverse lexicographic order (x > y > z), so iterating a
polynomial always yields its leading term first.

Internally a few algorithms (colon ideals via a tag variable) need one extra
variable; the class itself accepts any arity >= 1.
"""

from __future__ import annotations

import math

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]

VARIABLE_NAMES = ("x", "y", "z", "t")


class ArityError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class DegreeError(ValueError):
    """A degree argument is too small for the polynomial it applies to."""


class NotHomogeneousError(ValueError):
    pass


def grevlex_key(m: Monomial) -> tuple:
    """Sort key realising graded reverse lexicographic order (larger = bigger)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def as_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(i <= j for i, j in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def monomials_of_degree(s: int, nvars: int) -> list[Monomial]:
    """All monomials of total degree exactly ``s``, in descending grevlex order."""
    if s < 0:
        return []
    if nvars == 1:
        return [(s,)]
    out = []
    for first in range(s, -1, -1):
        for rest in monomials_of_degree(s - first, nvars - 1):
            out.append((first,) + rest)
    out.sort(key=grevlex_key, reverse=True)
    return out


def monomials_up_to_degree(s: int, nvars: int) -> list[Monomial]:
    """All monomials of degree <= ``s``, in descending grevlex order."""
    out = []
    for k in range(s, -1, -1):
        out.extend(monomials_of_degree(k, nvars))
    return out


class Poly:
    """Immutable polynomial with exact rational coefficients.

    >>> x, y = Poly.gens(2)
    >>> (x + 1) * (x - 1)
    Poly('x^2 - 1', nvars=2)
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int = 2):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != nvars:
                raise ArityError(f"monomial {m} does not have {nvars} exponents")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = as_scalar(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        self.nvars = nvars
        self._terms = _sorted_terms(clean)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction], nvars: int) -> Poly:
        # Trusted constructor: zero coefficients dropped, then sorted.
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = _sorted_terms({m: c for m, c in terms.items() if c})
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> Poly:
        return cls._raw({(0,) * nvars: as_scalar(c)}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> Poly:
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for arity {nvars}")
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw({m: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> Poly:
        return cls._raw({tuple(m): as_scalar(c)}, len(m))

    @classmethod
    def gens(cls, nvars: int) -> tuple[Poly, ...]:
        return tuple(cls.variable(i, nvars) for i in range(nvars))

    # -- basic queries ----------------------------------------------------
    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Iterate ``(monomial, coefficient)`` pairs, leading term first."""
        return iter(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return list(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        return sum(next(iter(self._terms)))

    def degree_in(self, var: int) -> int:
        if not self._terms:
            return -1
        return max(m[var] for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_component(self, k: int) -> Poly:
        return Poly._raw({m: c for m, c in self._terms.items() if sum(m) == k}, self.nvars)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return next(iter(self._terms))

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return next(iter(self._terms.values()))

    def uses_variable(self, var: int) -> bool:
        return any(m[var] for m in self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other) -> Poly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> Poly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) - c
        return Poly._raw(out, self.nvars)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(out, self.nvars)

    def __rmul__(self, other) -> Poly:
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        c = as_scalar(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw({m: v * c for m, v in self._terms.items()}, self.nvars)

    def mul_monomial(self, m: Monomial, c=1) -> Poly:
        c = as_scalar(c)
        return Poly._raw(
            {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self._terms.items()},
            self.nvars,
        )

    def monic(self) -> Poly:
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == Poly.constant(other, self.nvars)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        from .textio import print_polynomial

        return print_polynomial(self)

    # -- calculus and substitution -----------------------------------------
    def partial(self, var: int) -> Poly:
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range for arity {self.nvars}")
        out = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                n = list(m)
                n[var] = e - 1
                out[tuple(n)] = c * e
        return Poly._raw(out, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for val, e in zip(point, m):
                if e:
                    v *= as_scalar(val) ** e
            total += v
        return total

    def compose(self, images: Sequence[Poly]) -> Poly:
        """Substitute ``images[i]`` for variable ``i``; images share one arity."""
        if len(images) != self.nvars:
            raise ArityError("need one image per variable")
        target = images[0].nvars
        result = Poly.zero(target)
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        for m, c in self._terms.items():
            term = Poly.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def divmod_single(self, divisor: Poly) -> tuple[Poly, Poly]:
        """Multivariate division by one polynomial under grevlex."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading_monomial, divisor.leading_coefficient
        rest = dict(self._terms)
        quotient: dict[Monomial, Fraction] = {}
        remainder: dict[Monomial, Fraction] = {}
        while rest:
            m = max(rest, key=grevlex_key)
            c = rest.pop(m)
            if monomial_divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                qc = c / lc
                quotient[q] = quotient.get(q, 0) + qc
                for dm, dc in divisor._terms.items():
                    if dm == lm:
                        continue
                    k = tuple(a + b for a, b in zip(dm, q))
                    v = rest.get(k, 0) - qc * dc
                    if v:
                        rest[k] = v
                    else:
                        rest.pop(k, None)
            else:
                remainder[m] = c
        return Poly._raw(quotient, self.nvars), Poly._raw(remainder, self.nvars)

    def exquo(self, divisor: Poly) -> Poly:
        """Exact quotient; raises ``ValueError`` if ``divisor`` does not divide."""
        q, r = self.divmod_single(divisor)
        if r:
            raise ValueError("division is not exact")
        return q

    def divides(self, other: Poly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod_single(self)[1].is_zero()


def _sorted_terms(terms: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    return {m: terms[m] for m in sorted(terms, key=grevlex_key, reverse=True)}


def affine_gens() -> tuple[Poly, Poly]:
    return Poly.gens(2)  # type: ignore[return-value]


def projective_gens() -> tuple[Poly, Poly, Poly]:
    return Poly.gens(3)  # type: ignore[return-value]


# -- module-level operations --------------------------------------------------

def partial(p: Poly, var: int) -> Poly:
    return p.partial(var)


def homogenize(g: Poly, d: int) -> Poly:
    """``z^d g(x/z, y/z)`` for an arity-2 ``g`` of degree at most ``d``."""
    if g.nvars != 2:
        raise ArityError("homogenize expects a polynomial in x, y")
    if d < g.degree:
        raise DegreeError(f"degree {d} is smaller than deg g = {g.degree}")
    if d < 0:
        raise DegreeError("degree must be non-negative")
    return Poly._raw({(a, b, d - a - b): c for (a, b), c in g.terms()}, 3)


def eta(v: Poly, e: int) -> Poly:
    """The linear map R_{<=e} -> S_e, ``v -> z^e v(x/z, y/z)``."""
    if v.nvars != 2:
        raise ArityError("eta expects a polynomial in x, y")
    if v.degree > e:
        raise DegreeError(f"deg v = {v.degree} exceeds e = {e}")
    return homogenize(v, e)


def dehomogenize(f: Poly) -> Poly:
    """Set z = 1."""
    if f.nvars != 3:
        raise ArityError("dehomogenize expects a polynomial in x, y, z")
    out: dict[Monomial, Fraction] = {}
    for (a, b, _), c in f.terms():
        out[(a, b)] = out.get((a, b), 0) + c
    return Poly._raw(out, 2)


def euler_check(f: Poly) -> tuple[bool, Poly]:
    """Check ``x f_x + y f_y + z f_z = d f``; returns the verdict and the residual."""
    if f.nvars != 3:
        raise ArityError("euler_check expects a polynomial in x, y, z")
    if not f.is_homogeneous():
        raise NotHomogeneousError("Euler identity needs a homogeneous polynomial")
    x, y, z = projective_gens()
    residual = x * f.partial(0) + y * f.partial(1) + z * f.partial(2) - f.scale(max(f.degree, 0))
    return residual.is_zero(), residual


# -- gcd ---------------------------------------------------------------------

def _main_variable(*polys: Poly) -> int | None:
    for var in range(polys[0].nvars - 1, -1, -1):
        if any(p.uses_variable(var) for p in polys):
            return var
    return None


def _coefficients_in(p: Poly, var: int) -> dict[int, Poly]:
    """Split ``p`` as a polynomial in ``var`` with coefficients free of ``var``."""
    buckets: dict[int, dict[Monomial, Fraction]] = {}
    for m, c in p.terms():
        k = m[var]
        n = list(m)
        n[var] = 0
        buckets.setdefault(k, {})[tuple(n)] = c
    return {k: Poly._raw(t, p.nvars) for k, t in buckets.items()}


def _content(p: Poly, var: int) -> Poly:
    g = Poly.zero(p.nvars)
    for c in _coefficients_in(p, var).values():
        g = gcd(g, c)
        if g.is_constant():
            break
    return g


def _integer_primitive(p: Poly) -> Poly:
    """Rescale to coprime integer coefficients; keeps remainder sequences from swelling."""
    if p.is_zero():
        return p
    den = 1
    for _, c in p.terms():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for _, c in p.terms():
        num = math.gcd(num, int(c * den))
    return p.scale(Fraction(den, num))


def _prem(a: Poly, b: Poly, var: int) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in ``var``."""
    db = b.degree_in(var)
    lcb = _coefficients_in(b, var)[db]
    x = Poly.variable(var, a.nvars)
    r = a
    while not r.is_zero() and r.degree_in(var) >= db:
        dr = r.degree_in(var)
        lcr = _coefficients_in(r, var)[dr]
        r = lcb * r - lcr * (x ** (dr - db)) * b
    return r


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q via recursive primitive polynomial remainder sequences."""
    if p.nvars != q.nvars:
        raise ArityError("gcd of polynomials in different rings")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    var = _main_variable(p, q)
    if var is None:
        return Poly.constant(1, p.nvars)
    if not p.uses_variable(var) or not q.uses_variable(var):
        # one side is free of ``var``: it can only meet the content of the other
        free, other = (p, q) if not p.uses_variable(var) else (q, p)
        return gcd(free, _content(other, var))
    cp, cq = _content(p, var), _content(q, var)
    a, b = _integer_primitive(p.exquo(cp)), _integer_primitive(q.exquo(cq))
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while not b.is_zero() and b.uses_variable(var):
        r = _prem(a, b, var)
        if r.is_zero():
            break
        a, b = b, _integer_primitive(r.exquo(_content(r, var)))
    if not b.is_zero() and not b.uses_variable(var):
        # remainder sequence ended in a unit with respect to ``var``
        b = Poly.constant(1, p.nvars)
    return (gcd(cp, cq) * b).monic()


def squarefree_check(g: Poly) -> bool:
    """True iff ``g`` has no repeated factor, i.e. gcd(g, all partials) is constant."""
    if g.is_constant():
        raise ValueError("squarefree_check needs a nonconstant polynomial")
    h = g
    for var in range(g.nvars):
        h = gcd(h, g.partial(var))
        if h.is_constant():
            return True
    return h.is_constant()


def linear_combination(coeffs: Iterable[Poly], polys: Iterable[Poly]) -> Poly:
    terms = [c * p for c, p in zip(coeffs, polys)]
    if not terms:
        raise ValueError("empty combination")
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out
