"""Finite permutation groups by full enumeration.

Permutations act on the right: ``(p * q)(i) == q(p(i))``, i.e. apply ``p``
first.  With this convention a coset ``H*t`` is sent to ``H*t*g`` by ``g``
and the orbit of ``H*t`` under ``<g>`` has size ``min{j : g**j in t^-1 H t}``.

Groups are enumerated breadth-first from the identity (generators tried in
input order), so element indices, conjugacy classes and coset labels are
reproducible across runs.  This is meant for desk-scale groups; the default
enumeration cap is 100 000 elements.
"""

from __future__ import annotations

import math
import re
from collections import deque
from typing import Iterable, Sequence, Union

from .errors import CapExceeded, DegreeMismatch, InputError, NotASubgroup

DEFAULT_CAP = 100_000
# Cayley table is cached for groups up to this order (order**2 ints).
TABLE_LIMIT = 2048


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            for a in cycle:
                if not 0 <= a < degree:
                    raise InputError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise InputError(f"point {a} appears twice in cycle notation")
                seen.add(a)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, obj: Union[str, Sequence[int], Permutation], degree: int | None = None) -> Permutation:
        """Accept an image array, a cycle-notation string, or a Permutation."""
        if isinstance(obj, Permutation):
            p = obj
        elif isinstance(obj, str):
            if degree is None:
                raise InputError("cycle notation needs an explicit degree")
            p = cls.from_cycles(_parse_cycle_string(obj), degree)
        else:
            p = cls(obj)
        if degree is not None and p.degree != degree:
            raise DegreeMismatch(f"permutation {p} has degree {p.degree}, expected {degree}")
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        q = other.images
        return Permutation._trusted(tuple(q[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.images[i]
            out.append(tuple(cycle))
        return out

    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    @property
    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.images else 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_string(text: str) -> list[list[int]]:
    text = text.strip()
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)*", text):
        raise InputError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        parts = [s for s in re.split(r"[\s,]+", body.strip()) if s]
        try:
            cycles.append([int(s) for s in parts])
        except ValueError:
            raise InputError(f"bad cycle notation: {text!r}") from None
    return cycles


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def element_order(p: Permutation) -> int:
    return p.order


class PermutationGroup:
    """An enumerated permutation group with its conjugacy classes.

    Elements are referred to by their enumeration index; ``elements[0]`` is
    always the identity.  Instances should be treated as immutable.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 cap: int = DEFAULT_CAP):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise InputError("degree is required when there are no generators")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = tuple(generators)

        identity = Permutation.identity(degree)
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in generators:
                y = x * g
                if y not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        self.elements = tuple(elements)
        self._index = index
        self.generator_indices = tuple(index[g] for g in generators)
        self._table = None
        self._inverses = [index[e.inverse()] for e in elements]
        self._orders = [e.order for e in elements]
        self._compute_classes()

    # -- element access --------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def index_of(self, p: Union[Permutation, int]) -> int:
        if isinstance(p, int):
            if not 0 <= p < len(self.elements):
                raise InputError(f"element index {p} out of range")
            return p
        try:
            return self._index[p]
        except KeyError:
            raise InputError(f"{p} is not an element of the group") from None

    def mul(self, i: int, j: int) -> int:
        """Index of ``elements[i] * elements[j]``."""
        if self._table is None and len(self.elements) <= TABLE_LIMIT:
            self._build_table()
        if self._table is not None:
            return self._table[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    def _build_table(self) -> None:
        idx = self._index
        els = self.elements
        self._table = [[idx[a * b] for b in els] for a in els]

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self._inverses[i], -k
        result = 0
        base = i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, i: int, t: int) -> int:
        """Index of ``t^-1 * x * t`` for ``x = elements[i]``."""
        return self.mul(self.mul(self._inverses[t], i), t)

    def element_order(self, i: int) -> int:
        return self._orders[i]

    # -- conjugacy classes -------------------------------------------------

    def _compute_classes(self) -> None:
        n = len(self.elements)
        class_of = [-1] * n
        classes = []
        gens = self.generator_indices
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(classes)
            class_of[start] = cid
            members = [start]
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for g in gens:
                    y = self.conjugate(x, g)
                    if class_of[y] < 0:
                        class_of[y] = cid
                        members.append(y)
                        queue.append(y)
            classes.append(tuple(sorted(members)))
        self.classes = tuple(classes)
        self.class_of = tuple(class_of)

    def class_representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    # -- subgroups ---------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(dict.fromkeys(gens))
        members = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    queue.append(y)
        return frozenset(members)

    def subgroup(self, generators: Iterable[Union[Permutation, int]]) -> SubgroupHandle:
        """The subgroup generated by the given elements (indices or permutations)."""
        idx = []
        for g in generators:
            if isinstance(g, Permutation) and g not in self._index:
                raise NotASubgroup(f"{g} is not an element of the group")
            idx.append(self.index_of(g))
        return SubgroupHandle(self, tuple(idx), self.closure(idx))

    def subgroup_from_members(self, members: Iterable[Union[Permutation, int]]) -> SubgroupHandle:
        idx = set()
        for m in members:
            if isinstance(m, Permutation) and m not in self._index:
                raise NotASubgroup(f"{m} is not an element of the group")
            idx.add(self.index_of(m))
        if 0 not in idx:
            raise NotASubgroup("member set does not contain the identity")
        for a in idx:
            if self._inverses[a] not in idx:
                raise NotASubgroup("member set not closed under inverses")
            for b in idx:
                if self.mul(a, b) not in idx:
                    raise NotASubgroup("member set not closed under composition")
        return SubgroupHandle(self, tuple(sorted(idx)), frozenset(idx))

    def whole(self) -> SubgroupHandle:
        return SubgroupHandle(self, self.generator_indices, frozenset(range(self.order)))

    def trivial(self) -> SubgroupHandle:
        return SubgroupHandle(self, (), frozenset({0}))

    def is_normal(self, H: SubgroupHandle) -> bool:
        return all(self.conjugate(h, g) in H.members
                   for g in self.generator_indices for h in H.members)

    def conjugate_subgroup_members(self, H: SubgroupHandle, t: int) -> frozenset[int]:
        return frozenset(self.conjugate(h, t) for h in H.members)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermutationGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"


def generate_group(generators: Sequence[Permutation], cap: int = DEFAULT_CAP,
                   degree: int | None = None) -> PermutationGroup:
    return PermutationGroup(generators, degree=degree, cap=cap)


class SubgroupHandle:
    __slots__ = ("group", "generators", "members")

    def __init__(self, group: PermutationGroup, generators: tuple[int, ...], members: frozenset[int]):
        self.group = group
        self.generators = generators
        self.members = members

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def is_proper(self) -> bool:
        return len(self.members) < self.group.order

    def __repr__(self) -> str:
        gens = ", ".join(str(self.group.elements[i]) for i in self.generators)
        return f"SubgroupHandle(order={self.order}, generators=[{gens}])"


class FiniteAction:
    """A homomorphism from a group to the symmetric group on ``points`` points.

    ``table[i]`` is the image tuple of group element ``i``.
    """

    def __init__(self, group: PermutationGroup, points: int, table: Sequence[tuple[int, ...]],
                 cosets: Sequence[tuple[int, ...]] | None = None):
        self.group = group
        self.points = points
        self.table = tuple(table)
        self.cosets = tuple(cosets) if cosets is not None else None

    @classmethod
    def from_generator_images(cls, group: PermutationGroup, images: Sequence[Permutation],
                              cosets=None, points: int | None = None) -> FiniteAction:
        """Extend generator images to a homomorphism, checking it is well defined."""
        if len(images) != len(group.generators):
            raise InputError(f"expected {len(group.generators)} generator images, got {len(images)}")
        if points is None:
            if images:
                points = images[0].degree
            elif cosets is not None:
                points = len(cosets)
            else:
                raise InputError("point count is needed when the group has no generators")
        for im in images:
            if im.degree != points:
                raise DegreeMismatch("generator images act on different point counts")
        table: list = [None] * group.order
        table[0] = tuple(range(points))
        queue = deque([0])
        gens = group.generator_indices
        while queue:
            x = queue.popleft()
            tx = table[x]
            for gi, g in enumerate(gens):
                y = group.mul(x, g)
                q = images[gi].images
                ty = tuple(q[a] for a in tx)
                if table[y] is None:
                    table[y] = ty
                    queue.append(y)
                elif table[y] != ty:
                    raise InputError("generator images do not define a group action")
        return cls(group, points, table, cosets)

    def image(self, g: Union[int, Permutation]) -> Permutation:
        return Permutation._trusted(self.table[self.group.index_of(g)])

    def is_transitive(self) -> bool:
        if self.points == 0:
            return False
        reached = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for g in self.group.generator_indices:
                b = self.table[g][a]
                if b not in reached:
                    reached.add(b)
                    queue.append(b)
        return len(reached) == self.points

    def __repr__(self) -> str:
        return f"FiniteAction(points={self.points}, group_order={self.group.order})"


def coset_action(G: PermutationGroup, H: SubgroupHandle) -> FiniteAction:
    """Right-multiplication action of ``G`` on the right cosets ``H*t``.

    Cosets are labelled in order of their least element index.
    """
    if H.group is not G:
        # a handle from an equal but distinct group object is re-validated
        H = G.subgroup_from_members(G.index_of(H.group.elements[i]) for i in H.members)
    members = H.members
    if G.closure(H.generators) != members:
        raise NotASubgroup("member set is not the subgroup generated by its generators")
    coset_of = [-1] * G.order
    cosets = []
    for t in range(G.order):
        if coset_of[t] >= 0:
            continue
        label = len(cosets)
        coset = sorted(G.mul(h, t) for h in members)
        for x in coset:
            if coset_of[x] >= 0:
                raise NotASubgroup("cosets overlap; member set is not a subgroup")
            coset_of[x] = label
        cosets.append(tuple(coset))
    images = []
    for g in G.generator_indices:
        images.append(Permutation._trusted(tuple(coset_of[G.mul(c[0], g)] for c in cosets)))
    return FiniteAction.from_generator_images(G, images, cosets, len(cosets))


def cycle_type(A: FiniteAction, g: Union[int, Permutation]) -> tuple[int, ...]:
    """Sorted orbit sizes of ``<g>`` on the points of ``A``."""
    images = A.table[A.group.index_of(g)]
    seen = [False] * len(images)
    sizes = []
    for start in range(len(images)):
        if seen[start]:
            continue
        n = 0
        i = start
        while not seen[i]:
            seen[i] = True
            n += 1
            i = images[i]
        sizes.append(n)
    return tuple(sorted(sizes))
