from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from planesyz.polyring import Poly
from planesyz.textio import load_curve

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

TESTS = Path(__file__).parent
CORPUS = TESTS / "corpus"
FIXTURES = TESTS / "fixtures"

SX, SY, SZ = sympy.symbols("x y z")
SYMBOLS = (SX, SY, SZ)


def to_sympy(p: Poly):
    expr = sympy.Integer(0)
    for m, c in p.terms():
        term = sympy.Rational(c.numerator, c.denominator)
        for sym, e in zip(SYMBOLS, m):
            term *= sym ** e
        expr += term
    return expr


def from_sympy(expr, nvars: int) -> Poly:
    sp = sympy.Poly(sympy.expand(expr), *SYMBOLS[:nvars])
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in sp.terms()}, nvars)


def corpus_paths() -> list[Path]:
    return sorted(CORPUS.glob("*.curve"))


def load(name: str):
    return load_curve(CORPUS / f"{name}.curve")


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polys(nvars: int, max_degree: int = 3, max_terms: int = 5):
    monomial = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda m: sum(m) <= max_degree)
    return st.dictionaries(monomial, coefficients, max_size=max_terms).map(lambda t: Poly(t, nvars))


def homogeneous_polys(degree: int, max_terms: int = 6):
    def mono(ab):
        a, b = ab
        return (a, b, degree - a - b)
    pairs = st.tuples(st.integers(0, degree), st.integers(0, degree)).filter(lambda ab: sum(ab) <= degree)
    return st.dictionaries(pairs.map(mono), coefficients, max_size=max_terms).map(lambda t: Poly(t, 3))


# -- one summary line per acceptance criterion --------------------------------------------

_ACCEPTANCE: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::", 1)[1].split("[", 1)[0]
        _ACCEPTANCE.setdefault(name, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcomes = _ACCEPTANCE[name]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS
