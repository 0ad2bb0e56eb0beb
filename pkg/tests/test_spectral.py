"""Certified root enclosures, full root sets, Mahler measure, circle census."""

import math
from fractions import Fraction

import pytest
from mpmath import mp

from pabraid.families import r_poly
from pabraid.poly import IntPolynomial, SalemBoydSpec, Sign, salem_boyd, squarefree_part
from pabraid.spectral import (
    NoRealRootError,
    all_roots,
    count_outside_unit,
    count_roots_between,
    largest_real_root,
    mahler_measure,
    sturm_chain,
)

R1 = IntPolynomial([-2, -1, 1])
T11 = IntPolynomial([1, -1, -4, -1, 1])
ZHIROV = IntPolynomial([1, -1, -1, -1, 1])  # x^4 - x^3 - x^2 - x + 1


def bisect_root(f, lo, hi, steps=80):
    """Independent plain-float bisection oracle for a bracketed simple root."""
    flo = f(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def test_largest_real_root_quartic_equals_closed_form():
    enc = largest_real_root(T11, Fraction(1), 1e-9)
    golden_sq = (3 + math.sqrt(5)) / 2
    assert abs(float(enc.witness) - golden_sq) <= 1e-9
    assert enc.certified
    assert T11.sign_at(enc.lower) * T11.sign_at(enc.upper) < 0
    assert float(enc.width) <= 1e-9


def test_largest_real_root_hits_exact_rational_root():
    enc = largest_real_root(R1, Fraction(1), 1e-9)
    assert enc.lower < 2 < enc.upper
    assert enc.certified


def test_largest_real_root_zhirov_anchor():
    oracle = bisect_root(lambda x: x**4 - x**3 - x**2 - x + 1, 1.5, 2.0)
    enc = largest_real_root(ZHIROV, Fraction(1), 1e-9)
    assert abs(float(enc.witness) - 1.72208) <= 1e-5
    assert abs(float(enc.witness) - oracle) <= 1e-9


def test_largest_real_root_reports_absence():
    with pytest.raises(NoRealRootError):
        largest_real_root(IntPolynomial([1, 0, 1]), Fraction(0), 1e-9)  # t^2 + 1
    with pytest.raises(NoRealRootError):
        largest_real_root(R1, Fraction(2), 1e-9)  # nothing strictly above 2


def test_largest_real_root_floor_none_finds_greatest_overall():
    f = IntPolynomial([1, 1]) * IntPolynomial([3, 1])  # roots -1, -3
    enc = largest_real_root(f, None, 1e-9)
    assert enc.lower < -1 < enc.upper


def test_largest_real_root_input_validation():
    with pytest.raises(ValueError):
        largest_real_root(IntPolynomial(), Fraction(0), 1e-9)
    with pytest.raises(ValueError):
        largest_real_root(T11, Fraction(1), -1.0)


def test_all_roots_simple_cases():
    roots = all_roots(IntPolynomial([-1, 0, 1]))  # t^2 - 1
    values = sorted(float(mp.re(r.value)) for r in roots)
    assert values == pytest.approx([-1.0, 1.0], abs=1e-20)
    roots = all_roots(R1)
    values = sorted(float(mp.re(r.value)) for r in roots)
    assert values == pytest.approx([-1.0, 2.0], abs=1e-20)


def test_all_roots_reports_multiplicity_and_residuals():
    roots = all_roots(T11)
    assert len(roots) == 4
    mults = sorted(r.multiplicity for r in roots)
    assert mults == [1, 1, 2, 2]
    golden_sq = (3 + math.sqrt(5)) / 2
    golden_inv = (3 - math.sqrt(5)) / 2
    reals = sorted(float(mp.re(r.value)) for r in roots)
    assert reals == pytest.approx([-1.0, -1.0, golden_inv, golden_sq], abs=1e-12)
    assert all(float(r.residual) < 1e-20 for r in roots)


def test_all_roots_validation():
    with pytest.raises(ValueError):
        all_roots(IntPolynomial())
    with pytest.raises(ValueError):
        all_roots(IntPolynomial([3]))


@pytest.mark.parametrize("m", range(1, 9))
def test_mahler_measure_of_core_polys_is_two(m):
    assert abs(float(mahler_measure(r_poly(m), 1e-9)) - 2.0) <= 1e-8


def test_mahler_measure_simple_values():
    assert float(mahler_measure(IntPolynomial([-1, 1]))) == pytest.approx(1.0, abs=1e-12)
    assert float(mahler_measure(T11)) == pytest.approx(2.618034, abs=1e-6)


def test_census_examples():
    census = count_outside_unit(T11)
    assert (census.outside, census.on_circle, census.inside) == (1, 2, 1)
    census = count_outside_unit(IntPolynomial([1, 1, 1]))  # t^2 + t + 1
    assert (census.outside, census.on_circle, census.inside) == (0, 2, 0)
    census = count_outside_unit(R1)
    assert (census.outside, census.on_circle, census.inside) == (1, 1, 0)
    assert census.total == R1.degree


def test_census_counts_outside_complex_roots():
    # the m=2 core polynomial has a complex pair strictly outside the circle
    census = count_outside_unit(r_poly(2))
    assert (census.outside, census.on_circle, census.inside) == (3, 0, 0)


def test_sturm_chain_counts_distinct_roots():
    f = IntPolynomial([-1, 1]) * IntPolynomial([-2, 1]) * IntPolynomial([-3, 1])
    chain = sturm_chain(f)
    assert count_roots_between(chain, Fraction(0), Fraction(4)) == 3
    assert count_roots_between(chain, Fraction(3, 2), Fraction(4)) == 2
    assert count_roots_between(chain, Fraction(7, 2), Fraction(4)) == 0


def test_root_count_law_small_sweep():
    for m in (1, 2, 3):
        base = r_poly(m)
        allowed = count_outside_unit(base).outside
        for n in range(0, 13):
            for sign in (Sign.PLUS, Sign.MINUS):
                q = salem_boyd(SalemBoydSpec(base, n, sign))
                assert count_outside_unit(q).outside <= allowed


def test_core_root_sequence_strictly_decreasing():
    prev = None
    for m in range(1, 14):
        enc = largest_real_root(r_poly(m), Fraction(1), 1e-10)
        assert enc.certified
        if prev is not None:
            assert enc.upper < prev.lower  # disjoint certified enclosures
        prev = enc


def test_enclosure_certificate_is_checkable():
    enc = largest_real_root(S := salem_boyd(SalemBoydSpec(r_poly(2), 6, Sign.MINUS)), Fraction(1), 1e-9)
    assert enc.certified
    assert S.sign_at(enc.lower) * S.sign_at(enc.upper) < 0
    sf = squarefree_part(S)
    assert sf.sign_at(enc.lower) * sf.sign_at(enc.upper) < 0
