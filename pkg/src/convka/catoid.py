"""Catoids: set-valued composition with source/target maps, plus law checkers.

A model exposes a finite element universe.  Infinite catoids (words, paths on
cyclic graphs, guarded strings) are realised as bounded universes: ``compose``
only returns results inside the bound, and ``decompose2`` of an in-bound
element is exact because every factor of an in-bound element is in-bound.
Such models set ``is_complete = False``; models whose universe is the whole
catoid set it to True.

Models are immutable after construction.  The decomposition and length caches
are memo tables for pure functions, so concurrent readers are safe.
"""

from __future__ import annotations

import itertools

from .report import FAIL, PASS, Report, fmt_value


class MoebiusViolation(Exception):
    """Raised when decomposition structure is circular or unbounded."""


class Catoid:
    """Base contract: compose, source, target, element enumeration.

    Subclasses must implement ``compose``, ``source``, ``target``,
    ``_build_elements`` and ``sort_key``; they may override ``decompose2``
    with a closed form (equivalence with the generic inversion is a test).
    """

    name = "catoid"
    is_complete = False

    def __init__(self):
        self._elements = None
        self._element_set = None
        self._d2_cache = None
        self._dn_cache = {}
        self._len_cache = {}
        self._moebius_report = None

    # -- model surface ------------------------------------------------------

    def compose(self, y, z) -> frozenset:
        raise NotImplementedError

    def source(self, x):
        raise NotImplementedError

    def target(self, x):
        raise NotImplementedError

    def _build_elements(self) -> list:
        raise NotImplementedError

    def sort_key(self, x):
        raise NotImplementedError

    def format_element(self, x) -> str:
        return fmt_value(x)

    # -- derived structure --------------------------------------------------

    def elements(self) -> list:
        if self._elements is None:
            self._elements = sorted(self._build_elements(), key=self.sort_key)
            self._element_set = frozenset(self._elements)
        return self._elements

    def __contains__(self, x):
        self.elements()
        return x in self._element_set

    def is_identity(self, x) -> bool:
        return self.source(x) == x

    def identities(self) -> list:
        return [e for e in self.elements() if self.is_identity(e)]

    def nonidentities(self) -> list:
        return [e for e in self.elements() if not self.is_identity(e)]

    def decompose2(self, x) -> list:
        """All ordered pairs (y, z) with x in y . z, in deterministic order."""
        if self._d2_cache is None:
            table = {e: [] for e in self.elements()}
            for y, z in itertools.product(self.elements(), repeat=2):
                for w in self.compose(y, z):
                    if w in table:
                        table[w].append((y, z))
            pair_key = lambda p: (self.sort_key(p[0]), self.sort_key(p[1]))
            self._d2_cache = {e: sorted(ps, key=pair_key) for e, ps in table.items()}
        return self._d2_cache[x]

    def decompose_n(self, x, n: int) -> list:
        """All n-tuples of non-identity elements composing to x."""
        key = (x, n)
        if key in self._dn_cache:
            return self._dn_cache[key]
        if n == 0:
            out = [()] if self.is_identity(x) else []
        elif n == 1:
            out = [] if self.is_identity(x) else [(x,)]
        else:
            found = set()
            for y, z in self.decompose2(x):
                if self.is_identity(y):
                    continue
                for rest in self.decompose_n(z, n - 1):
                    found.add((y,) + rest)
            out = sorted(found, key=lambda t: tuple(self.sort_key(p) for p in t))
        self._dn_cache[key] = out
        return out

    def length(self, x) -> int:
        """Maximal degree of decomposition into non-identity factors.

        Dynamic programming over decompose2 with cycle detection: revisiting
        an element mid-computation means some element decomposes through
        itself, which is impossible in a Moebius catoid.
        """
        return self._length(x, set())

    def _length(self, x, in_progress) -> int:
        if x in self._len_cache:
            return self._len_cache[x]
        if x in in_progress:
            raise MoebiusViolation(
                f"{self.name}: cyclic decomposition at {self.format_element(x)}"
            )
        if len(in_progress) > len(self.elements()):
            raise MoebiusViolation(f"{self.name}: decomposition depth exceeds universe size")
        if self.is_identity(x):
            self._len_cache[x] = 0
            return 0
        in_progress.add(x)
        try:
            best = 1
            for y, z in self.decompose2(x):
                if self.is_identity(y) or self.is_identity(z):
                    continue
                best = max(best, self._length(y, in_progress) + self._length(z, in_progress))
        finally:
            in_progress.discard(x)
        self._len_cache[x] = best
        return best

    def max_length(self) -> int:
        return max((self.length(x) for x in self.elements()), default=0)

    def moebius_report(self) -> Report:
        if self._moebius_report is None:
            self._moebius_report = check_moebius(self)
        return self._moebius_report

    def require_moebius(self):
        """Raise with the failing condition named unless the model checks out."""
        rep = self.moebius_report()
        if rep.clean:
            return
        failed = rep.failed_laws()
        if "moebius.identities-indecomposable" in failed:
            raise MoebiusViolation(
                f"{self.name}: model fails Moebius condition (2): identity decomposable")
        if "moebius.no-self-absorption" in failed:
            raise MoebiusViolation(
                f"{self.name}: model fails Moebius condition (3): x in x.y with y != t(x)")
        raise MoebiusViolation(
            f"{self.name}: model fails Moebius condition (1): not finitely 2-decomposable")

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {len(self.elements())} elements>"


class TableCatoid(Catoid):
    """Catoid given by explicit tables; used for fixtures and negative controls."""

    def __init__(self, name, elements, compose_table, source_map, target_map,
                 complete=True, add_units=True):
        super().__init__()
        self.name = name
        self._given = list(elements)
        self._src = dict(source_map)
        self._tgt = dict(target_map)
        self._table = {k: frozenset(v) for k, v in compose_table.items()}
        self.is_complete = complete
        if add_units:
            for x in self._given:
                self._table.setdefault((self._src[x], x), frozenset([x]))
                self._table.setdefault((x, self._tgt[x]), frozenset([x]))

    def compose(self, y, z):
        return self._table.get((y, z), frozenset())

    def source(self, x):
        return self._src[x]

    def target(self, x):
        return self._tgt[x]

    def _build_elements(self):
        return list(self._given)

    def sort_key(self, x):
        return (isinstance(x, tuple), x)


# ---------------------------------------------------------------------------
# law checkers


def check_catoid_axioms(C: Catoid, universe=None) -> Report:
    """Associativity, composability, unit laws and the basic source/target facts."""
    U = list(universe) if universe is not None else C.elements()
    rep = Report(model=C.name)

    bad = []
    for x, y, z in itertools.product(U, repeat=3):
        left = set()
        for v in C.compose(y, z):
            left |= C.compose(x, v)
        right = set()
        for u in C.compose(x, y):
            right |= C.compose(u, z)
        if left != right:
            bad.append((x, y, z, frozenset(left), frozenset(right)))
    rep.add("catoid.assoc", FAIL if bad else PASS, bad, checked=len(U) ** 3)

    bad = []
    for x, y in itertools.product(U, repeat=2):
        if C.compose(x, y) and C.target(x) != C.source(y):
            bad.append((x, y))
    rep.add("catoid.composability-st", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    bad = [x for x in U if C.compose(C.source(x), x) != frozenset([x])]
    rep.add("catoid.unit-left", FAIL if bad else PASS, bad, checked=len(U))
    bad = [x for x in U if C.compose(x, C.target(x)) != frozenset([x])]
    rep.add("catoid.unit-right", FAIL if bad else PASS, bad, checked=len(U))

    s, t = C.source, C.target
    bad = [x for x in U if s(s(x)) != s(x) or t(t(x)) != t(x)
           or s(t(x)) != t(x) or t(s(x)) != s(x)]
    rep.add("props.st-idem", FAIL if bad else PASS, bad, checked=len(U))

    bad = [x for x in U if (s(x) == x) != (t(x) == x)]
    rep.add("props.fix-agree", FAIL if bad else PASS, bad, checked=len(U))

    bad = [x for x in U
           if C.compose(s(x), s(x)) != frozenset([s(x)])
           or C.compose(t(x), t(x)) != frozenset([t(x)])]
    rep.add("props.id-idem", FAIL if bad else PASS, bad, checked=len(U))

    bad = []
    for x, y in itertools.product(U, repeat=2):
        if C.compose(s(x), t(y)) != C.compose(t(y), s(x)):
            bad.append((x, y))
    rep.add("props.id-commute", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    bad = []
    for x, y in itertools.product(U, repeat=2):
        lhs = frozenset(s(w) for w in C.compose(s(x), y))
        if lhs != C.compose(s(x), s(y)):
            bad.append((x, y, lhs))
        lhs = frozenset(t(w) for w in C.compose(x, t(y)))
        if lhs != C.compose(t(x), t(y)):
            bad.append((x, y, lhs))
    rep.add("props.id-absorb", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    bad = []
    for x, y in itertools.product(U, repeat=2):
        if not {s(w) for w in C.compose(x, y)} <= {s(w) for w in C.compose(x, s(y))}:
            bad.append((x, y))
        if not {t(w) for w in C.compose(x, y)} <= {t(w) for w in C.compose(t(x), y)}:
            bad.append((x, y))
    rep.add("props.st-sub", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    bad = []
    for x, y in itertools.product(U, repeat=2):
        prod = C.compose(x, y)
        if prod and ({s(w) for w in prod} != {s(x)} or {t(w) for w in prod} != {t(y)}):
            bad.append((x, y, frozenset(prod)))
    rep.add("props.st-of-product", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    bad = []
    for y, z in itertools.product(U, repeat=2):
        for x in C.compose(y, z):
            if s(x) != s(y) or t(x) != t(z):
                bad.append((x, y, z))
    rep.add("props.member-st", FAIL if bad else PASS, bad, checked=len(U) ** 2)

    ids = [e for e in U if C.is_identity(e)]
    bad = []
    for e, f in itertools.product(ids, repeat=2):
        expect = frozenset([e]) if e == f else frozenset()
        if C.compose(e, f) != expect:
            bad.append((e, f, frozenset(C.compose(e, f))))
    rep.add("catoid.orth-idem", FAIL if bad else PASS, bad, checked=len(ids) ** 2)
    return rep


def check_moebius(C: Catoid, universe=None) -> Report:
    """The three Moebius conditions: finite 2-decomposability, indecomposable
    identities, and x in x.y forcing y = t(x)."""
    U = list(universe) if universe is not None else C.elements()
    rep = Report(model=C.name)

    widths = [len(C.decompose2(x)) for x in U]
    rep.add("moebius.finite-2-decomposable", PASS, checked=len(U),
            note=f"max-decompositions={max(widths, default=0)}")

    bad = []
    for e in U:
        if not C.is_identity(e):
            continue
        for y, z in C.decompose2(e):
            if not C.is_identity(y) and not C.is_identity(z):
                bad.append((e, y, z))
    rep.add("moebius.identities-indecomposable", FAIL if bad else PASS, bad, checked=len(U))

    bad = []
    for x, y in itertools.product(U, repeat=2):
        if x in C.compose(x, y) and y != C.target(x):
            bad.append((x, y))
    rep.add("moebius.no-self-absorption", FAIL if bad else PASS, bad, checked=len(U) ** 2)
    return rep


def is_local(C: Catoid, universe=None) -> Report:
    U = list(universe) if universe is not None else C.elements()
    rep = Report(model=C.name)
    bad = [(x, y) for x, y in itertools.product(U, repeat=2)
           if C.target(x) == C.source(y) and not C.compose(x, y)]
    rep.add("catoid.local", FAIL if bad else PASS, bad, checked=len(U) ** 2)
    return rep


def is_functional(C: Catoid, universe=None) -> Report:
    U = list(universe) if universe is not None else C.elements()
    rep = Report(model=C.name)
    bad = [(y, z, frozenset(C.compose(y, z)))
           for y, z in itertools.product(U, repeat=2) if len(C.compose(y, z)) > 1]
    rep.add("catoid.functional", FAIL if bad else PASS, bad, checked=len(U) ** 2)
    return rep


def check_saturated_chain(C: Catoid, universe=None) -> Report:
    """l(z) = l(x) + l(y) for every z in x . y over the universe."""
    U = list(universe) if universe is not None else C.elements()
    rep = Report(model=C.name)
    bad = []
    count = 0
    for x, y in itertools.product(U, repeat=2):
        for z in C.compose(x, y):
            count += 1
            if C.length(z) != C.length(x) + C.length(y):
                bad.append((x, y, z, C.length(x) + C.length(y), C.length(z)))
    rep.add("moebius.saturated-chain", FAIL if bad else PASS, bad, checked=count)
    return rep


def check_decompose2_consistency(C: Catoid) -> Report:
    """A model's closed-form decompose2 must equal generic inversion of compose."""
    rep = Report(model=C.name)
    generic = {e: [] for e in C.elements()}
    for y, z in itertools.product(C.elements(), repeat=2):
        for w in C.compose(y, z):
            if w in generic:
                generic[w].append((y, z))
    bad = []
    for e in C.elements():
        pair_key = lambda p: (C.sort_key(p[0]), C.sort_key(p[1]))
        if sorted(generic[e], key=pair_key) != list(C.decompose2(e)):
            bad.append((e,))
    rep.add("catoid.decompose2-closed-form", FAIL if bad else PASS, bad,
            checked=len(C.elements()))
    return rep
