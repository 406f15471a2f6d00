import cmath
import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from branchcover.laurent import (
    InexactDivisionError,
    LaurentPoly,
    PolyParseError,
    UnitClass,
    bareiss_det,
    cyclotomic_column,
    divide_exact,
    eval_int,
    normalize,
    parse_poly,
    poly_det,
    resultant,
)

from .conftest import laurent_polys, ordinary_polys

P = parse_poly
ROW1 = P("-t-t^2+t^3+t^4")


def naive_convolution(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def root_product(f, k):
    return abs(math.prod(complex(sum(c * cmath.exp(2j * math.pi * r * e / k) for e, c in f.coeffs.items()))
                         for r in range(1, k)))


# parsing -------------------------------------------------------------------

@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("-1+2t+t^2-4t^3+t^4+2t^5-t^6", {0: -1, 1: 2, 2: 1, 3: -4, 4: 1, 5: 2, 6: -1}),
        ("2t^3+t^2+t^4", {2: 1, 3: 2, 4: 1}),
        ("t^-1 + 1", {-1: 1, 0: 1}),
        ("3*t^2 - t", {1: -1, 2: 3}),
        ("0", {}),
        ("t-t", {}),
        ("-t", {1: -1}),
    ],
)
def test_parse(text, coeffs):
    assert P(text).coeffs == coeffs


@pytest.mark.parametrize("bad", ["", "+t", "t^", "1--t", "2**t", "t2", "x", "1+"])
def test_parse_rejects(bad):
    with pytest.raises(PolyParseError):
        P(bad)


@given(laurent_polys())
def test_format_round_trip(f):
    assert P(str(f)) == f


# arithmetic ---------------------------------------------------------------

def test_add_examples():
    assert P("t") + P("-t") == 0
    assert P("1-t+t^2") + LaurentPoly() == P("1-t+t^2")
    assert ROW1 + P("t+t^2") == P("t^3+t^4")


def test_mul_examples():
    assert P("t-1") * P("1+t+t^2") == P("t^3-1")
    expected = naive_convolution([1, -1, 1], [1, -1, 1])
    assert expected == [1, -2, 3, -2, 1]
    assert P("1-t+t^2") * P("1-t+t^2") == LaurentPoly.from_dense(expected)
    assert P("t-1") * ROW1 == P("t-2t^3+t^5")
    assert ROW1 * 0 == 0


def test_eval_int():
    assert eval_int(P("1-t+t^2"), -1) == 3
    assert eval_int(ROW1, -1) == 0
    assert eval_int(P("t^-1+1"), 2) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        eval_int(P("t"), 0)


def test_normalize_examples():
    assert normalize(ROW1).canonical == P("-1-t+t^2+t^3")
    assert normalize(-P("t^2-t+1")).canonical == P("1-t+t^2")
    assert normalize(LaurentPoly()).canonical == LaurentPoly()
    with pytest.raises(ValueError):
        UnitClass(P("-1+t-t^2"))


def test_cyclotomic_column():
    assert cyclotomic_column(2) == P("1+t")
    assert cyclotomic_column(3) == P("1+t+t^2")
    assert eval_int(cyclotomic_column(3), 1) == 3
    with pytest.raises(ValueError):
        cyclotomic_column(1)


def test_divide_exact():
    assert divide_exact(P("t^3+1"), P("t+1")) == P("t^2-t+1")
    assert divide_exact(P("t-1") * ROW1, P("t-1")) == ROW1
    assert divide_exact(P("t^-3+t^-1"), P("t^2+1")) == P("t^-3")
    with pytest.raises(InexactDivisionError) as info:
        divide_exact(P("t^2+1"), P("t+1"))
    assert info.value.remainder == 2
    with pytest.raises(InexactDivisionError):
        divide_exact(P("1"), P("2"))


@given(laurent_polys(), laurent_polys(nonzero=True))
def test_divide_exact_inverts_mul(f, g):
    assert divide_exact(f * g, g) == f


def test_pow_and_units():
    assert P("1-t+t^2") ** 0 == 1
    assert P("-t") ** -2 == P("t^-2")
    with pytest.raises(ValueError):
        P("1+t") ** -1


# determinants and resultants ----------------------------------------------

@settings(max_examples=60)
@given(st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(m):
    assert bareiss_det(m) == leibniz_det(m)


def test_poly_det_small():
    t = P("t")
    m = [[t, P("1")], [P("-1"), t]]
    assert poly_det(m) == P("t^2+1")
    assert poly_det([]) == 1


def test_resultant_examples():
    nu3 = cyclotomic_column(3)
    assert abs(resultant(nu3, P("t-1"))) == 3
    assert abs(resultant(nu3, P("1-t+t^2"))) == 4
    f = P("-1-2t^3-t^6")
    # zeta^3 = 1 makes f(zeta) = -4 at both primitive cube roots
    assert round(root_product(f, 3)) == 16
    assert abs(resultant(nu3, f)) == 16
    assert resultant(P("t^3-7"), P("7")) == 343
    with pytest.raises(ValueError):
        resultant(LaurentPoly(), nu3)
    with pytest.raises(ValueError):
        resultant(P("t^-1+1"), nu3)


@given(ordinary_polys(), ordinary_polys(), st.integers(2, 6))
def test_resultant_multiplicative(f, g, k):
    nu = cyclotomic_column(k)
    assert abs(resultant(nu, f * g)) == abs(resultant(nu, f)) * abs(resultant(nu, g))


@given(ordinary_polys(max_deg=10), st.integers(2, 6))
def test_resultant_float_oracle(f, k):
    exact = abs(resultant(cyclotomic_column(k), f))
    approx = root_product(f, k)
    if exact == 0:
        assert approx <= 1e-9 * sum(abs(c) for c in f.coeffs.values()) ** (k - 1)
    else:
        assert abs(approx - exact) <= 1e-6 * exact


@given(ordinary_polys())
def test_resultant_degree_two_is_value_at_minus_one(f):
    assert abs(resultant(cyclotomic_column(2), f)) == abs(eval_int(f, -1))


def test_big_coefficients_stay_exact():
    f = P("9+9t+9t^2+9t^3") ** 5
    r = resultant(f, P("1-3t+t^2") ** 6)
    assert abs(r) > 2 ** 64
    assert isinstance(r, int)


# algebraic invariants -----------------------------------------------------

@given(laurent_polys())
def test_normalize_idempotent(f):
    c = normalize(f)
    assert normalize(c.canonical) == c


@given(laurent_polys(), st.integers(-10, 10), st.sampled_from([1, -1]))
def test_normalize_unit_invariant(f, k, s):
    assert normalize(f.shift(k) * s) == normalize(f)


@given(laurent_polys(), laurent_polys(), st.integers(-5, 5).filter(bool))
def test_eval_is_ring_homomorphism(f, g, x):
    assert eval_int(f * g, x) == eval_int(f, x) * eval_int(g, x)
    assert eval_int(f + g, x) == eval_int(f, x) + eval_int(g, x)


def test_polys_are_hashable_values():
    assert len({P("1+t"), P("t+1"), P("1+t^2")}) == 2
    with pytest.raises(TypeError):
        P("t").coeffs[0] = 1
