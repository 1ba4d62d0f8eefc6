import itertools

import pytest

from convka import models
from convka.catoid import MoebiusViolation
from convka.convolution import (
    check_conway,
    check_kat,
    conv_add,
    convolve,
    delta,
    from_pairs,
    function_leq,
    functions_equal,
    id0,
    indicator,
    is_in_bracket,
    is_test,
    powerset_star,
    random_function,
    set_compose,
    star_dual,
    star_path,
    star_recursive,
    star_unfolded,
    zero_function,
)
from convka.convolution import test_complement as complement_of
from convka.values import CapabilityError, make_boolean, make_min_plus


def brute_convolution(C, K, f, g, x):
    """Oracle: scan all element pairs instead of using decompose2."""
    acc = K.zero
    for y, z in itertools.product(C.elements(), repeat=2):
        if x in C.compose(y, z):
            acc = K.add(acc, K.mul(f(y), g(z)))
    return acc


def test_conv_add(words3, boolean, minplus, rng):
    f = random_function(words3, minplus, rng)
    z = zero_function(words3, minplus)
    assert functions_equal(conv_add(f, z), f)
    g = random_function(words3, minplus, rng)
    for x in words3.elements():
        assert conv_add(f, g)(x) == minplus.add(f(x), g(x))

    A = frozenset(["a", "ab"])
    B = frozenset(["b", "ab", "ba"])
    lhs = conv_add(indicator(words3, boolean, A), indicator(words3, boolean, B))
    assert functions_equal(lhs, indicator(words3, boolean, A | B))


def test_convolve_single_letter_square(natinf):
    C = models.free_monoid("a", 2)
    f = from_pairs(C, natinf, {"": 0, "a": 3, "aa": 0})
    prod = convolve(f, f)
    # brute force over the splits (eps,aa), (a,a), (aa,eps)
    assert prod("aa") == brute_convolution(C, natinf, f, f, "aa") == 9


def test_convolution_unit_law(words3, minplus, rng):
    f = random_function(words3, minplus, rng)
    unit = id0(words3, minplus)
    assert functions_equal(convolve(unit, f), f)
    assert functions_equal(convolve(f, unit), f)


def test_convolve_matches_brute_force(words3, minplus, rng):
    for _ in range(5):
        f = random_function(words3, minplus, rng)
        g = random_function(words3, minplus, rng)
        prod = convolve(f, g)
        for x in words3.elements():
            assert prod(x) == brute_convolution(words3, minplus, f, g, x)


def test_indicator_convolution_is_set_composition(words3, boolean, rng):
    for _ in range(5):
        y = rng.choice(words3.elements())
        z = rng.choice(words3.elements())
        prod = convolve(delta(words3, boolean, y), delta(words3, boolean, z))
        for x in words3.elements():
            assert prod(x) == (1 if x in words3.compose(y, z) else 0)


def test_algebra_mismatch_rejected(words3, boolean, minplus):
    with pytest.raises(CapabilityError, match="mismatch"):
        conv_add(zero_function(words3, boolean), zero_function(words3, minplus))


def test_semiring_laws_pointwise(words3, minplus, rng):
    fs = [random_function(words3, minplus, rng) for _ in range(3)]
    f, g, h = fs
    assert functions_equal(convolve(convolve(f, g), h), convolve(f, convolve(g, h)))
    assert functions_equal(convolve(f, conv_add(g, h)),
                           conv_add(convolve(f, g), convolve(f, h)))
    assert functions_equal(convolve(conv_add(f, g), h),
                           conv_add(convolve(f, h), convolve(g, h)))
    z = zero_function(words3, minplus)
    assert functions_equal(convolve(f, z), z)
    assert functions_equal(convolve(z, f), z)


# ---------------------------------------------------------------------------
# stars


def test_star_on_identities(words3, minplus, rng):
    f = random_function(words3, minplus, rng)
    assert star_recursive(f)("") == minplus.star(f(""))
    assert star_dual(f)("") == minplus.star(f(""))
    assert star_unfolded(f)("") == minplus.star(f(""))


def test_star_two_edge_path(minplus):
    C = models.path_catoid(models.two_edge_path_graph(), 4)
    table = {e: 0 for e in C.identities()}
    table[("a", ("x",))] = 2
    table[("b", ("y",))] = 3
    f = from_pairs(C, minplus, table)
    for star in (star_recursive, star_dual, star_unfolded, star_path):
        assert star(f)(("a", ("x", "y"))) == 5


def test_star_zero_is_id0(words3, minplus):
    z = zero_function(words3, minplus)
    assert functions_equal(star_recursive(z), id0(words3, minplus))
    assert functions_equal(star_dual(z), id0(words3, minplus))
    assert functions_equal(star_path(z), id0(words3, minplus))


def test_star_length_one_element(words3, minplus, rng):
    f = random_function(words3, minplus, rng)
    fs = star_unfolded(f)
    e = minplus.star(f(""))
    assert fs("a") == minplus.mul(minplus.mul(e, f("a")), e)


def test_triple_star_agreement(rng):
    K = make_min_plus()
    for C in (models.free_monoid("ab", 4), models.shuffle_catoid("ab", 3),
              models.interval_catoid(models.example_poset()),
              models.guarded_string_catoid(["t0", "t1"], ["p"], 3)):
        for _ in range(10):
            f = random_function(C, K, rng)
            a = star_recursive(f)
            assert functions_equal(a, star_dual(f)), C.name
            assert functions_equal(a, star_unfolded(f)), C.name


def test_star_unfold_law(words4, minplus, rng):
    unit = id0(words4, minplus)
    for _ in range(10):
        f = random_function(words4, minplus, rng)
        fs = star_recursive(f)
        assert functions_equal(conv_add(unit, convolve(f, fs)), fs)
        assert functions_equal(conv_add(unit, convolve(fs, f)), fs)


def test_star_induction_simplified(words4, minplus, rng):
    for _ in range(10):
        f = random_function(words4, minplus, rng)
        h = random_function(words4, minplus, rng)
        fs = star_recursive(f)
        g = convolve(fs, h)
        assert function_leq(convolve(f, g), g)      # antecedent by construction
        assert function_leq(convolve(fs, g), g)
        g2 = convolve(h, fs)
        assert function_leq(convolve(g2, f), g2)
        assert function_leq(convolve(g2, fs), g2)


def test_indicator_star_is_powerset_star(words4, boolean, rng):
    for _ in range(10):
        A = frozenset(x for x in words4.elements() if rng.random() < 0.3)
        st = star_recursive(indicator(words4, boolean, A))
        assert functions_equal(st, indicator(words4, boolean, powerset_star(words4, A)))


def test_powerset_isomorphism(words3, boolean, rng):
    # support() carries +, *, star, id0, zero to union, set composition,
    # set star, the identity set and the empty set
    for _ in range(5):
        A = frozenset(x for x in words3.elements() if rng.random() < 0.4)
        B = frozenset(x for x in words3.elements() if rng.random() < 0.4)
        fa, fb = indicator(words3, boolean, A), indicator(words3, boolean, B)
        assert set(conv_add(fa, fb).support()) == A | B
        assert set(convolve(fa, fb).support()) == set(set_compose(words3, A, B))
        assert set(star_recursive(fa).support()) == set(powerset_star(words3, A))
    assert set(id0(words3, boolean).support()) == set(words3.identities())
    assert zero_function(words3, boolean).support() == []


def test_star_requires_moebius(boolean, rng):
    pg = models.pair_groupoid(["a", "b"])
    f = random_function(pg, boolean, rng)
    with pytest.raises(MoebiusViolation, match=r"condition \(2\)"):
        star_recursive(f)


def test_star_requires_star_capability(words3):
    K = make_boolean()
    object.__setattr__(K, "star", None)
    f = zero_function(words3, K)
    with pytest.raises(CapabilityError, match="star"):
        star_recursive(f)


# ---------------------------------------------------------------------------
# K[C] and tests


def test_is_in_bracket(words3, boolean):
    assert is_in_bracket(id0(words3, boolean))
    assert is_in_bracket(zero_function(words3, boolean))
    assert not is_in_bracket(delta(words3, boolean, "a"))


def test_bracket_closure(words3, minplus, rng):
    for _ in range(5):
        f = random_function(words3, minplus, rng, bracket=True)
        g = random_function(words3, minplus, rng, bracket=True)
        assert is_in_bracket(conv_add(f, g))
        assert is_in_bracket(convolve(f, g))
        assert is_in_bracket(star_recursive(f))


def test_star_path_agrees_on_bracket(words4, minplus, rng):
    for _ in range(10):
        f = random_function(words4, minplus, rng, bracket=True)
        assert functions_equal(star_path(f), star_recursive(f))


def test_star_path_rejects_non_bracket(words3, minplus):
    with pytest.raises(CapabilityError, match="K\\[C\\]"):
        star_path(delta(words3, minplus, "a"))


def test_test_complement(words3, boolean):
    unit = id0(words3, boolean)
    assert functions_equal(complement_of(unit), zero_function(words3, boolean))
    assert functions_equal(complement_of(zero_function(words3, boolean)), unit)

    gs = models.guarded_string_catoid(["t0", "t1", "t2"], ["p"], 2)
    p = indicator(gs, boolean, [("t1",)])
    q = complement_of(p)
    assert set(q.support()) == {("t0",), ("t2",)}  # set difference on identities
    with pytest.raises(CapabilityError, match="test"):
        complement_of(delta(gs, boolean, ("t0", "p", "t1")))


def test_test_idempotence(boolean):
    gs = models.guarded_string_catoid(["t0", "t1"], ["p"], 2)
    for r in range(3):
        for P in itertools.combinations(gs.identities(), r):
            p = indicator(gs, boolean, P)
            assert functions_equal(convolve(p, p), p)
            assert is_test(p)


def test_check_kat_guarded(boolean, rng):
    gs = models.guarded_string_catoid(["t0", "t1"], ["p", "q"], 2)
    rep = check_kat(gs, boolean, rng, samples=10)
    assert rep.clean, rep.failed_laws()
    assert "2^2=4" in rep.law("kat.test-count").note
    assert rep.law("kat.bracket-tests-trivial").status == "pass"


# ---------------------------------------------------------------------------
# Conway


def test_check_conway_natinf(words4, natinf, rng):
    rep = check_conway(words4, natinf, rng, samples=15)
    assert rep.clean, rep.failed_laws()


def test_conway_zero_case(words3, natinf):
    z = zero_function(words3, natinf)
    g = from_pairs(words3, natinf, {"a": 2, "": 1})
    lhs = star_recursive(conv_add(z, g))
    rhs = convolve(star_recursive(convolve(star_recursive(z), g)), star_recursive(z))
    assert functions_equal(lhs, rhs)


def test_check_conway_boolean_is_also_clean(words3, boolean, rng):
    rep = check_conway(words3, boolean, rng, samples=10)
    assert rep.clean, rep.failed_laws()
