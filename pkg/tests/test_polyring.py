import random

import pytest

from cohomcert import (
    ANY_DEGREE,
    GF,
    GrevLex,
    BlockElimination,
    Lex,
    Multigrading,
    NonDivisibleError,
    ParseError,
    Polynomial,
    PolyRing,
    QQ,
    RingMismatchError,
    ZZ,
    divide_exact_by_integer,
    multidegree,
    reduce_mod_p,
    restrict_to_variables,
)

RQ = PolyRing(("x", "y"), QQ)
RZ = PolyRing(("x", "y"), ZZ)
R3 = PolyRing(("x", "y"), GF(3))


def test_add_mul_examples():
    x, y = RQ.gens()
    assert (x + y) + (x - y) == 2 * x
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    x3, y3 = R3.gens()
    assert (x3 + y3) ** 3 == x3 ** 3 + y3 ** 3


def test_pow_edge_cases():
    x, y = RQ.gens()
    assert x ** 0 == RQ.one()
    assert RQ.zero() ** 0 == RQ.one()
    assert (x + y) ** 1 == x + y
    with pytest.raises(ValueError):
        x ** -1


def test_ring_mismatch_rejected():
    x, _ = RQ.gens()
    xz, _ = RZ.gens()
    with pytest.raises(RingMismatchError):
        x + xz
    with pytest.raises(RingMismatchError):
        x * xz


def test_zero_coefficients_never_stored():
    x, y = RQ.gens()
    f = (x + y) - x - y
    assert f.is_zero and f.terms == {}
    g = Polynomial(RQ, {(1, 0): 0, (0, 1): 2})
    assert list(g.terms.values()) == [2]


def test_ring_axioms_random():
    rng = random.Random(101)
    for ring in (RQ, R3, RZ):
        for _ in range(60):
            f, g, h = (
                _random(rng, ring), _random(rng, ring), _random(rng, ring)
            )
            assert (f + g) + h == f + (g + h)
            assert f + g == g + f
            assert f * g == g * f
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert f + ring.zero() == f
            assert f * ring.one() == f


def _random(rng, ring):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 3) for _ in range(ring.nvars))
        terms[e] = terms.get(e, 0) + rng.randint(-4, 4)
    return Polynomial(ring, terms)


# -- multigradings ----------------------------------------------------------

SECTION2_TABLE = {
    "x": (1, 0, 0, 0), "y": (0, 1, 0, 0), "z": (0, 0, 1, 0),
    "u": (-1, 0, 0, 1), "v": (0, -1, 0, 1), "w": (0, 0, -1, 1),
}
R6 = PolyRing(("u", "v", "w", "x", "y", "z"), ZZ)
GRADING = Multigrading.from_dict(R6, SECTION2_TABLE)


def test_multidegree_weight_table():
    u, v, w, x, y, z = R6.gens()
    assert multidegree(x, GRADING) == (1, 0, 0, 0)
    lam2 = -(u * x * v * y + u * x * w * z + v * y * w * z)
    assert multidegree(lam2, GRADING) == (0, 0, 0, 2)
    assert multidegree(x + u, GRADING) is None
    assert multidegree(R6.zero(), GRADING) is ANY_DEGREE


def test_multidegree_additive_on_products():
    rng = random.Random(7)
    u, v, w, x, y, z = R6.gens()
    gens = [u, v, w, x, y, z]
    for _ in range(40):
        f = rng.choice(gens) * rng.choice(gens)
        g = rng.choice(gens) * rng.choice(gens) * rng.choice(gens)
        a, b = multidegree(f, GRADING), multidegree(g, GRADING)
        assert multidegree(f * g, GRADING) == tuple(i + j for i, j in zip(a, b))


def test_multidegree_additive_on_homogeneous_polynomials():
    # multi-term homogeneous inputs under the total-degree grading
    rng = random.Random(9)
    ring = PolyRing(("x", "y", "z"), QQ)
    grading = Multigrading.from_dict(ring, {"x": (1,), "y": (1,), "z": (1,)})
    from helpers import random_homogeneous
    for _ in range(30):
        da, db = rng.randint(1, 3), rng.randint(1, 3)
        f = random_homogeneous(rng, ring, da)
        g = random_homogeneous(rng, ring, db)
        if f.is_zero or g.is_zero or (f * g).is_zero:
            continue
        assert multidegree(f, grading) == (da,)
        assert multidegree(g, grading) == (db,)
        assert multidegree(f * g, grading) == (da + db,)


def test_multidegree_rank_mismatch():
    bad = Multigrading(((1,), (1,)))
    with pytest.raises(ValueError):
        multidegree(R6.one(), bad)


# -- exact integer division and mod-p reduction -----------------------------

def test_divide_exact_examples():
    x, y = RZ.gens()
    assert divide_exact_by_integer((x ** 2 + y ** 2) - (x + y) ** 2, 2) == -(x * y)
    assert divide_exact_by_integer(RZ.zero(), 7).is_zero
    with pytest.raises(NonDivisibleError) as info:
        divide_exact_by_integer(x, 2)
    assert info.value.monomial == (1, 0)


def test_divide_exact_needs_integer_ring():
    x, _ = RQ.gens()
    with pytest.raises(ValueError):
        divide_exact_by_integer(x, 2)


def test_reduce_mod_p_examples():
    x, y = RZ.gens()
    r2 = reduce_mod_p(2 * x + 3 * y, 2)
    assert str(r2) == "y"
    assert str(reduce_mod_p(-(x * y), 2)) == "x*y"
    f = divide_exact_by_integer(x ** 3 + y ** 3 - (x + y) ** 3, 3)
    assert str(reduce_mod_p(f, 3)) == "2*x^2*y + 2*x*y^2"


def test_reduce_mod_p_is_a_ring_map():
    rng = random.Random(13)
    for _ in range(40):
        f, g = _random(rng, RZ), _random(rng, RZ)
        p = rng.choice((2, 3, 5))
        assert reduce_mod_p(f + g, p) == reduce_mod_p(f, p) + reduce_mod_p(g, p)
        assert reduce_mod_p(f * g, p) == reduce_mod_p(f, p) * reduce_mod_p(g, p)
        assert reduce_mod_p(divide_exact_by_integer(p * f, p), p) == reduce_mod_p(f, p)


def test_frobenius_identity():
    rng = random.Random(17)
    for p in (2, 3, 5):
        ring = PolyRing(("x", "y"), GF(p))
        for _ in range(25):
            f, g = _random(rng, ring), _random(rng, ring)
            assert (f + g) ** p == f ** p + g ** p


# -- substitution ------------------------------------------------------------

def test_substitute_examples():
    u, v, w, x, y, z = R6.gens()
    f = u * x + v * y + w * z
    assert f.substitute({"u": 1, "v": 1, "w": 1}) == x + y + z
    assert f.substitute({}) == f
    st = PolyRing(("s", "t"), QQ)
    s, t = st.gens()
    q2 = t ** 2 - s ** 2
    assert q2.substitute({"s": 1}) == t ** 2 - 1
    with pytest.raises(KeyError):
        f.substitute({"nope": 1})


def test_restrict_to_variables():
    u, v, w, x, y, z = R6.gens()
    f = x ** 2 + 3 * y
    g = restrict_to_variables(f, ("x", "y"))
    assert g.ring.variables == ("x", "y") and str(g) == "x^2 + 3*y"
    with pytest.raises(ValueError):
        restrict_to_variables(u + x, ("x",))


# -- text form ----------------------------------------------------------------

def test_parse_spec_string_roundtrip():
    ring = PolyRing(("s", "t", "u", "v", "w", "x", "y", "z"), QQ)
    text = "s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + t*w^2*z^2"
    f = ring.parse(text)
    assert ring.parse(str(f)) == f
    assert len(f.terms) == 4


def test_parse_fractions_and_signs():
    f = RQ.parse("-1/2*x^2 + x*y - 3")
    assert str(f) == "-1/2*x^2 + x*y - 3"
    assert RQ.parse("(x + y)^2") == (RQ.gen("x") + RQ.gen("y")) ** 2
    assert RQ.parse("0").is_zero


def test_parse_roundtrip_random():
    rng = random.Random(23)
    for ring in (RQ, RZ, R3):
        for _ in range(40):
            f = _random(rng, ring)
            assert ring.parse(str(f)) == f


def test_parse_errors():
    with pytest.raises(ParseError):
        RQ.parse("x +")
    with pytest.raises(ParseError):
        RQ.parse("x $ y")
    with pytest.raises(ParseError):
        RQ.parse("(x + y")
    with pytest.raises(KeyError):
        RQ.parse("q + 1")


# -- monomial orders ----------------------------------------------------------

def _order_holds(key, nvars, rng, samples=200):
    def rand_exp():
        return tuple(rng.randint(0, 4) for _ in range(nvars))

    one = (0,) * nvars
    for _ in range(samples):
        a, b, c = rand_exp(), rand_exp(), rand_exp()
        ka, kb = key(a), key(b)
        # total: equal keys iff equal exponents
        assert (ka == kb) == (a == b)
        # multiplicative: a < b implies a + c < b + c
        if ka < kb:
            assert key(tuple(i + k for i, k in zip(a, c))) < \
                key(tuple(j + k for j, k in zip(b, c)))
        # 1 is minimal
        if a != one:
            assert key(one) < key(a)


def test_monomial_orders_are_orders():
    rng = random.Random(31)
    ring = PolyRing(("x", "y", "z"), QQ)
    _order_holds(Lex().key(ring), 3, rng)
    _order_holds(GrevLex().key(ring), 3, rng)
    _order_holds(BlockElimination(front=("y",)).key(ring), 3, rng)


def test_block_order_eliminates():
    ring = PolyRing(("x", "y", "z"), QQ)
    key = BlockElimination(front=("y",)).key(ring)
    # any monomial containing y beats any y-free monomial
    assert key((0, 1, 0)) > key((5, 0, 5))


def test_grevlex_standard_example():
    ring = PolyRing(("x", "y", "z"), QQ)
    key = GrevLex().key(ring)
    # x^5 y z > x^4 y z^2 in grevlex
    assert key((5, 1, 1)) > key((4, 1, 2))


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(1)
