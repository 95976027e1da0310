import itertools
import math
from functools import reduce

import pytest

from cyclesplit.etale import EtaleAlgebraModel, FibreModel
from cyclesplit.loaders import load_corpus, load_fibre
from cyclesplit.perm import Permutation, coset_action, generate_group


def P(text, n):
    return Permutation.parse(text, n)


# -- brute-force oracles, deliberately independent of the library paths ----

def naive_compose(p, q):
    """Apply p then q, on raw image tuples."""
    return tuple(q[i] for i in p)


def naive_closure(gens, n):
    """Close a generating set under composition by repeated all-pairs products."""
    elems = {tuple(range(n))} | {tuple(g) for g in gens}
    while True:
        new = {naive_compose(a, b) for a in elems for b in elems} - elems
        if not new:
            return elems
        elems |= new


def naive_inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def naive_classes(elems):
    seen, classes = set(), []
    for g in sorted(elems):
        if g in seen:
            continue
        cls = {naive_compose(naive_compose(naive_inverse(t), g), t) for t in elems}
        seen |= cls
        classes.append(cls)
    return classes


def naive_coset_orbits(elems, H, g):
    """Orbit sizes of <g> on right cosets H*t, computed with frozensets."""
    cosets = {frozenset(naive_compose(h, t) for h in H) for t in elems}
    sizes = []
    remaining = set(cosets)
    while remaining:
        c = remaining.pop()
        size, cur = 1, frozenset(naive_compose(x, g) for x in c)
        while cur != c:
            remaining.discard(cur)
            size += 1
            cur = frozenset(naive_compose(x, g) for x in cur)
        sizes.append(size)
    return sorted(sizes)


def naive_certified_index(elems, H, g):
    """gcd over t of min{k : g^k in t^-1 H t}, straight from the definition."""
    out = 0
    for t in elems:
        conj = {naive_compose(naive_compose(naive_inverse(t), h), t) for h in H}
        x, k = g, 1
        while x not in conj:
            x, k = naive_compose(x, g), k + 1
        out = math.gcd(out, k)
    return out


def brute_min_maxdeg(degrees, r):
    """Smallest max over all nonempty sub-multisets whose gcd divides r."""
    best = None
    for k in range(1, len(degrees) + 1):
        for sub in itertools.combinations(degrees, k):
            if r % reduce(math.gcd, sub) == 0:
                m = max(sub)
                best = m if best is None else min(best, m)
    return best


# -- shared models ----------------------------------------------------------

@pytest.fixture(scope="session")
def a4():
    return generate_group([P("(0 1 2)", 4), P("(0 1)(2 3)", 4)])


@pytest.fixture(scope="session")
def a4_c2(a4):
    return a4.subgroup([P("(0 1)(2 3)", 4)])


@pytest.fixture(scope="session")
def a4_fibre(a4, a4_c2):
    return FibreModel.single(EtaleAlgebraModel(a4, (coset_action(a4, a4_c2),)))


@pytest.fixture(scope="session")
def everywhere_split_fibre():
    return load_fibre("everywhere_split")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return load_corpus(max_order=60)
