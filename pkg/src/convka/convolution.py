"""Convolution algebras on weight functions C -> K.

The star comes in four equivalent computations:

  star_recursive   f*(e) = f(e)*;  f*(x) = f(s(x))* . sum f(y).f*(z)
                   over the 2-decompositions of x with y != s(x)
  star_dual        the mirrored recursion ending in f(t(x))*
  star_unfolded    the direct sum over all n-fold non-identity decompositions,
                   interleaving stars of the boundary identities (this is the
                   trusted oracle: exponential, no recursion on the result)
  star_path        the specialisation to functions mapping identities to 1

Recursions terminate because the summed-over factors are strictly shorter;
a cycle in the decomposition structure (non-Moebius model) raises
MoebiusViolation instead of looping.

Weight functions memoise their values; the caches are idempotent tables for
pure rules, safe to share between readers.
"""

from __future__ import annotations

import itertools

from .catoid import Catoid, MoebiusViolation
from .report import FAIL, PASS, SKIP, Report
from .values import CapabilityError, ValueAlgebra


class WeightFunction:
    """A total, memoised map from catoid elements to weights."""

    __slots__ = ("catoid", "algebra", "name", "_rule", "_memo")

    def __init__(self, catoid: Catoid, algebra: ValueAlgebra, rule, name="f"):
        self.catoid = catoid
        self.algebra = algebra
        self.name = name
        self._rule = rule
        self._memo = {}

    def __call__(self, x):
        memo = self._memo
        if x in memo:
            return memo[x]
        v = self._rule(x)
        memo[x] = v
        return v

    def table(self) -> dict:
        return {x: self(x) for x in self.catoid.elements()}

    def support(self) -> list:
        return [x for x in self.catoid.elements() if self(x) != self.algebra.zero]

    def __repr__(self):
        return f"<WeightFunction {self.name}>"


def zero_function(C, K) -> WeightFunction:
    return WeightFunction(C, K, lambda x: K.zero, name="0")


def id0(C, K) -> WeightFunction:
    """Unit of convolution: the indicator of the identity set."""
    return WeightFunction(C, K, lambda x: K.one if C.is_identity(x) else K.zero, name="id0")


def delta(C, K, y) -> WeightFunction:
    return WeightFunction(C, K, lambda x: K.one if x == y else K.zero,
                          name=f"delta({C.format_element(y)})")


def indicator(C, K, members) -> WeightFunction:
    s = frozenset(members)
    return WeightFunction(C, K, lambda x: K.one if x in s else K.zero, name="chi")


def from_pairs(C, K, pairs, default=None, name="f") -> WeightFunction:
    table = dict(pairs)
    dflt = K.zero if default is None else default
    return WeightFunction(C, K, lambda x: table.get(x, dflt), name=name)


def from_rule(C, K, fn, name="f") -> WeightFunction:
    return WeightFunction(C, K, fn, name=name)


def _check_same(f, g):
    if f.catoid is not g.catoid:
        raise CapabilityError("weight functions live over different catoids")
    if f.algebra is not g.algebra:
        raise CapabilityError(
            f"algebra mismatch: {f.algebra.name} vs {g.algebra.name}")


def conv_add(f, g, catoid=None, algebra=None) -> WeightFunction:
    """Pointwise sum."""
    if catoid is None:
        _check_same(f, g)
    C = catoid or f.catoid
    K = algebra or f.algebra
    return WeightFunction(C, K, lambda x: K.add(f(x), g(x)), name=f"({f.name}+{g.name})")


def convolve(f, g, catoid=None, algebra=None) -> WeightFunction:
    """(f*g)(x) = sum of f(y).g(z) over the 2-decompositions of x."""
    if catoid is None:
        _check_same(f, g)
    C = catoid or f.catoid
    K = algebra or f.algebra

    def rule(x):
        acc = K.zero
        for y, z in C.decompose2(x):
            acc = K.add(acc, K.mul(f(y), g(z)))
        return acc

    return WeightFunction(C, K, rule, name=f"({f.name}*{g.name})")


def _star_rule(C, K, f, dual: bool):
    if not K.has_star:
        raise CapabilityError(f"{K.name}: no star operation")
    C.require_moebius()
    star_wf = [None]  # set after construction, for memoised recursion
    in_progress = set()

    def rule(x):
        me = star_wf[0]
        s = C.source(x)
        if x == s:
            return K.star(f(x))
        if x in in_progress:
            raise MoebiusViolation(
                f"{C.name}: star recursion cycles at {C.format_element(x)}")
        in_progress.add(x)
        try:
            acc = K.zero
            if not dual:
                for y, z in C.decompose2(x):
                    if y == s:
                        continue
                    acc = K.add(acc, K.mul(f(y), me(z)))
                return K.mul(K.star(f(s)), acc)
            t = C.target(x)
            for y, z in C.decompose2(x):
                if z == t:
                    continue
                acc = K.add(acc, K.mul(me(y), f(z)))
            return K.mul(acc, K.star(f(t)))
        finally:
            in_progress.discard(x)

    return rule, star_wf


def star_recursive(f) -> WeightFunction:
    """The recursive star (left form)."""
    rule, hole = _star_rule(f.catoid, f.algebra, f, dual=False)
    wf = WeightFunction(f.catoid, f.algebra, rule, name=f"star({f.name})")
    hole[0] = wf
    return wf


def star_dual(f) -> WeightFunction:
    """The recursive star written with the dual (right-ending) sum."""
    rule, hole = _star_rule(f.catoid, f.algebra, f, dual=True)
    wf = WeightFunction(f.catoid, f.algebra, rule, name=f"star'({f.name})")
    hole[0] = wf
    return wf


def star_unfolded(f) -> WeightFunction:
    """Oracle star: sum over every i-fold non-identity decomposition.

    Each decomposition x in x1...xi contributes
    f(s(x1))* . f(x1) . f(t(x1))* . f(x2) . ... . f(xi) . f(t(xi))*,
    using that consecutive factors chain targets to sources.
    """
    C, K = f.catoid, f.algebra
    if not K.has_star:
        raise CapabilityError(f"{K.name}: no star operation")
    C.require_moebius()

    def rule(x):
        if C.is_identity(x):
            return K.star(f(x))
        acc = K.zero
        for i in range(1, C.length(x) + 1):
            for parts in C.decompose_n(x, i):
                term = K.star(f(C.source(parts[0])))
                for p in parts:
                    term = K.mul(term, f(p))
                    term = K.mul(term, K.star(f(C.target(p))))
                acc = K.add(acc, term)
        return acc

    return WeightFunction(C, K, rule, name=f"star~({f.name})")


def is_in_bracket(f) -> bool:
    """Membership in K[C]: the zero map, or every identity mapped to 1."""
    ids = f.catoid.identities()
    if all(f(e) == f.algebra.one for e in ids):
        return True
    return all(f(x) == f.algebra.zero for x in f.catoid.elements())


def star_path(f) -> WeightFunction:
    """Star specialised to K[C]: identities go to 1, no boundary star factors."""
    C, K = f.catoid, f.algebra
    if not is_in_bracket(f):
        raise CapabilityError("star_path needs a weight function in K[C]")
    C.require_moebius()
    in_progress = set()

    def rule(x):
        if C.is_identity(x):
            return K.one
        if x in in_progress:
            raise MoebiusViolation(
                f"{C.name}: star recursion cycles at {C.format_element(x)}")
        in_progress.add(x)
        try:
            s = C.source(x)
            acc = K.zero
            for y, z in C.decompose2(x):
                if y == s:
                    continue
                acc = K.add(acc, K.mul(f(y), wf(z)))
            return acc
        finally:
            in_progress.discard(x)

    wf = WeightFunction(C, K, rule, name=f"star#({f.name})")
    return wf


def functions_equal(f, g, universe=None) -> bool:
    U = universe if universe is not None else f.catoid.elements()
    return all(f(x) == g(x) for x in U)

def function_leq(f, g, universe=None) -> bool:
    U = universe if universe is not None else f.catoid.elements()
    K = f.algebra
    return all(K.leq(f(x), g(x)) for x in U)


def first_difference(f, g, universe=None):
    U = universe if universe is not None else f.catoid.elements()
    for x in U:
        if f(x) != g(x):
            return (x, f(x), g(x))
    return None


# ---------------------------------------------------------------------------
# tests (subidentity indicators) and the KAT structure


def is_test(p) -> bool:
    """p is chi_P for some subset P of the identities."""
    C, K = p.catoid, p.algebra
    for x in C.elements():
        v = p(x)
        if C.is_identity(x):
            if v not in (K.zero, K.one):
                return False
        elif v != K.zero:
            return False
    return True


def test_complement(p) -> WeightFunction:
    """Boolean complement within the test algebra: chi_P -> chi_(C0 - P)."""
    C, K = p.catoid, p.algebra
    if not is_test(p):
        raise CapabilityError("not a test: expected a 0/1 subidentity function")
    members = frozenset(e for e in C.identities() if p(e) == K.zero)
    return indicator(C, K, members)


def powerset_star(C: Catoid, members) -> frozenset:
    """Set star in the powerset algebra: identities plus all products of members.

    Independent of the convolution star; computed by closure iteration.
    """
    A = frozenset(members) & frozenset(C.elements())
    out = set(C.identities()) | set(A)
    while True:
        grow = set()
        for a, b in itertools.product(A, out):
            for w in C.compose(a, b):
                if w not in out:
                    grow.add(w)
        if not grow:
            return frozenset(out)
        out |= grow


def set_compose(C: Catoid, A, B) -> frozenset:
    out = set()
    for a, b in itertools.product(A, B):
        out |= C.compose(a, b)
    return frozenset(out)


def check_kat(C: Catoid, K: ValueAlgebra, rng=None, samples=25) -> Report:
    """Kleene-algebra-with-tests structure of the subidentity indicators.

    Exhaustive over the 2^|C0| tests: boolean-algebra laws, closure of the
    test set under +, * and complement, the embedding of meet/join as
    convolution/sum, star of a test collapsing to id0, and closure of general
    indicator functions under the star (against the powerset oracle).
    """
    rep = Report(model=C.name, algebra=K.name)
    ids = C.identities()
    subsets = [frozenset(c) for r in range(len(ids) + 1)
               for c in itertools.combinations(ids, r)]
    tests = {P: indicator(C, K, P) for P in subsets}
    one = id0(C, K)
    zero = zero_function(C, K)
    rep.add("kat.test-count", PASS, checked=len(subsets),
            note=f"2^{len(ids)}={len(subsets)} tests")

    bad = []
    for P, p in tests.items():
        if not is_test(p):
            bad.append((sorted(P),))
    rep.add("kat.tests-are-tests", FAIL if bad else PASS, bad, checked=len(subsets))

    bad = []
    for P, Q in itertools.product(subsets, repeat=2):
        if not functions_equal(conv_add(tests[P], tests[Q]), tests[P | Q]):
            bad.append((sorted(P), sorted(Q), "join"))
        if not functions_equal(convolve(tests[P], tests[Q]), tests[P & Q]):
            bad.append((sorted(P), sorted(Q), "meet"))
    rep.add("kat.embed-join-meet", FAIL if bad else PASS, bad, checked=2 * len(subsets) ** 2)

    bad = []
    for P, p in tests.items():
        q = test_complement(p)
        if not functions_equal(conv_add(p, q), one) or not functions_equal(convolve(p, q), zero):
            bad.append((sorted(P),))
        if not is_test(q):
            bad.append((sorted(P), "complement-not-test"))
    rep.add("kat.complementation", FAIL if bad else PASS, bad, checked=len(subsets))

    # tests vanish off the identities and are closed under the operations
    # (checked above), so the lattice laws are decided on the identity set
    bad = []
    for P, Q in itertools.product(subsets, repeat=2):
        p, q = tests[P], tests[Q]
        if not functions_equal(conv_add(p, q), conv_add(q, p), ids):
            bad.append((sorted(P), sorted(Q), "add-comm"))
        if not functions_equal(convolve(p, q), convolve(q, p), ids):
            bad.append((sorted(P), sorted(Q), "mul-comm"))
        if not functions_equal(conv_add(p, convolve(p, q)), p, ids):
            bad.append((sorted(P), sorted(Q), "absorb-join"))
        if not functions_equal(convolve(p, conv_add(p, q)), p, ids):
            bad.append((sorted(P), sorted(Q), "absorb-meet"))
        if not functions_equal(conv_add(p, zero), p, ids) or \
           not functions_equal(convolve(p, one), p, ids) or \
           not functions_equal(conv_add(p, one), one, ids) or \
           not functions_equal(convolve(p, zero), zero, ids):
            bad.append((sorted(P), "bounds"))
    rep.add("kat.lattice-laws", FAIL if bad else PASS, bad, checked=5 * len(subsets) ** 2)

    bad = []
    for P, Q, R in itertools.product(subsets, repeat=3):
        lhs = convolve(tests[P], conv_add(tests[Q], tests[R]))
        rhs = conv_add(convolve(tests[P], tests[Q]), convolve(tests[P], tests[R]))
        if not functions_equal(lhs, rhs, ids):
            bad.append((sorted(P), sorted(Q), sorted(R), "meet-over-join"))
        lhs = conv_add(tests[P], convolve(tests[Q], tests[R]))
        rhs = convolve(conv_add(tests[P], tests[Q]), conv_add(tests[P], tests[R]))
        if not functions_equal(lhs, rhs, ids):
            bad.append((sorted(P), sorted(Q), sorted(R), "join-over-meet"))
    rep.add("kat.distributivity", FAIL if bad else PASS, bad, checked=2 * len(subsets) ** 3)

    bad = []
    for P, p in tests.items():
        st = star_recursive(p)
        if not functions_equal(st, one):
            bad.append((sorted(P),))
    rep.add("kat.test-star-is-one", FAIL if bad else PASS, bad, checked=len(subsets))

    bad = []
    count = 0
    elements = C.elements()
    if rng is not None:
        for _ in range(samples):
            A = frozenset(x for x in elements if rng.random() < 0.3)
            count += 1
            st = star_recursive(indicator(C, K, A))
            target = indicator(C, K, powerset_star(C, A))
            if not functions_equal(st, target):
                bad.append((sorted(C.format_element(a) for a in A),))
    status = SKIP if count == 0 else (FAIL if bad else PASS)
    rep.add("kat.indicator-star-closure", status, bad, checked=count)

    in_bracket = [P for P in subsets if is_in_bracket(tests[P])]
    expected = [frozenset(), frozenset(ids)]
    ok = sorted(in_bracket, key=sorted) == sorted(expected, key=sorted)
    rep.add("kat.bracket-tests-trivial", PASS if ok else FAIL,
            [] if ok else [tuple(sorted(map(str, P)) for P in in_bracket)],
            checked=len(subsets), note="K[C] tests = {0, id0}")
    return rep


def check_conway(C: Catoid, S: ValueAlgebra, rng, samples=100) -> Report:
    """The four Conway identities, pointwise over sampled function pairs."""
    rep = Report(model=C.name, algebra=S.name)
    unit = id0(C, S)
    pool = S.pool()
    elements = C.elements()

    def sample():
        return from_pairs(C, S, {x: rng.choice(pool) for x in elements})

    bad_ul, bad_ur, bad_ss, bad_ps = [], [], [], []
    for k in range(samples):
        f, g = sample(), sample()
        fs = star_recursive(f)
        d = first_difference(conv_add(unit, convolve(f, fs)), fs)
        if d:
            bad_ul.append((k, C.format_element(d[0])))
        d = first_difference(conv_add(unit, convolve(fs, f)), fs)
        if d:
            bad_ur.append((k, C.format_element(d[0])))
        lhs = star_recursive(conv_add(f, g))
        rhs = convolve(star_recursive(convolve(fs, g)), fs)
        d = first_difference(lhs, rhs)
        if d:
            bad_ss.append((k, C.format_element(d[0]), d[1], d[2]))
        lhs = convolve(f, star_recursive(convolve(g, f)))
        rhs = convolve(star_recursive(convolve(f, g)), f)
        d = first_difference(lhs, rhs)
        if d:
            bad_ps.append((k, C.format_element(d[0]), d[1], d[2]))
    n = samples * len(elements)
    rep.add("conway.unfold-left", FAIL if bad_ul else PASS, bad_ul, checked=n)
    rep.add("conway.unfold-right", FAIL if bad_ur else PASS, bad_ur, checked=n)
    rep.add("conway.sum-star", FAIL if bad_ss else PASS, bad_ss, checked=n)
    rep.add("conway.prod-star-swap", FAIL if bad_ps else PASS, bad_ps, checked=n)
    return rep


def random_function(C, K, rng, bracket=False, name="f") -> WeightFunction:
    """Seeded random weight function; identities are forced to 1 in bracket mode."""
    pool = K.pool()
    table = {}
    for x in C.elements():
        if bracket and C.is_identity(x):
            table[x] = K.one
        else:
            table[x] = rng.choice(pool)
    return from_pairs(C, K, table, name=name)
