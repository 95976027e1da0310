"""Group-theoretic fibre data and the combinatorial index.

An étale algebra ``A = K_1 + ... + K_n`` is modelled by its Galois group
``G`` together with the transitive actions of ``G`` on the cosets
``G/H_i``.  A fibre with components of several geometric multiplicities is
a map ``m -> algebra`` over one common group.

For ``g`` in ``G`` the index is ``gcd_m(m * gcd of the orbit sizes of g on
every factor of the multiplicity-m algebra)``; the fibre is combinatorially
r-cycle-split when that index divides ``r`` for every ``g``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import EmptyAlgebra, EmptyFibre, InputError, NotNormal
from .perm import FiniteAction, Permutation, PermutationGroup, SubgroupHandle, cycle_type

Element = Union[int, Permutation]


@dataclass(frozen=True)
class EtaleAlgebraModel:
    group: PermutationGroup
    factors: tuple[FiniteAction, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for a in self.factors:
            if a.group is not self.group:
                raise InputError("factor action is over a different group")
            if not a.is_transitive():
                raise InputError("factor action is not transitive")

    @property
    def degrees(self) -> tuple[int, ...]:
        """``[K_i : K]`` for each factor."""
        return tuple(a.points for a in self.factors)


@dataclass(frozen=True)
class FibreModel:
    group: PermutationGroup
    components: Mapping[int, EtaleAlgebraModel]

    def __post_init__(self):
        comps = {}
        for m in sorted(self.components):
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise InputError(f"multiplicity must be a positive integer, got {m!r}")
            alg = self.components[m]
            if alg.group is not self.group:
                raise InputError("all components must share the ambient group")
            if not alg.factors:
                raise InputError(f"component of multiplicity {m} has no factors")
            comps[m] = alg
        object.__setattr__(self, "components", comps)

    @classmethod
    def single(cls, algebra: EtaleAlgebraModel, multiplicity: int = 1) -> FibreModel:
        return cls(algebra.group, {multiplicity: algebra})

    @property
    def multiplicity_gcd(self) -> int:
        return math.gcd(*self.components)


def _check_nonempty(F: FibreModel) -> None:
    if not F.components:
        raise EmptyFibre("fibre has no components; its index is undefined")


def combinatorial_index(F: FibreModel, g: Element) -> int:
    _check_nonempty(F)
    gi = F.group.index_of(g)
    index = 0
    for m, alg in F.components.items():
        inner = 0
        for action in alg.factors:
            inner = math.gcd(inner, *cycle_type(action, gi))
        index = math.gcd(index, m * inner)
    return index


def global_degree_gcd(A: EtaleAlgebraModel) -> int:
    """gcd of the factor degrees; a global degree-r zero-cycle exists iff this divides r."""
    if not A.factors:
        raise EmptyAlgebra("algebra has no factors")
    return math.gcd(*A.degrees)


@dataclass(frozen=True)
class ClassIndexRow:
    class_id: int
    representative: Permutation
    size: int
    index: int
    divides_r: bool

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "representative": str(self.representative),
            "size": self.size,
            "index": self.index,
            "divides_r": self.divides_r,
        }


@dataclass(frozen=True)
class IndexReport:
    r: int
    group_order: int
    rows: tuple[ClassIndexRow, ...]
    verdict: bool
    witness: ClassIndexRow | None = None

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "group_order": self.group_order,
            "verdict": "split" if self.verdict else "not split",
            "split": self.verdict,
            "classes": [row.to_dict() for row in self.rows],
            "witness_class": self.witness.to_dict() if self.witness else None,
        }


def _check_r(r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise InputError(f"r must be a positive integer, got {r!r}")


def is_combinatorially_cycle_split(F: FibreModel, r: int) -> IndexReport:
    _check_nonempty(F)
    _check_r(r)
    G = F.group
    rows = []
    for cid, members in enumerate(G.classes):
        value = combinatorial_index(F, members[0])
        for x in members[1:]:
            if combinatorial_index(F, x) != value:
                raise RuntimeError(f"index is not constant on conjugacy class {cid}")
        rows.append(ClassIndexRow(cid, G.elements[members[0]], len(members), value, r % value == 0))
    witness = next((row for row in rows if not row.divides_r), None)
    return IndexReport(r, G.order, tuple(rows), witness is None, witness)


def cycle_split_density(F: FibreModel, r: int) -> Fraction:
    """Cebotarev density of the classes whose index divides ``r``."""
    _check_nonempty(F)
    _check_r(r)
    G = F.group
    good = sum(len(c) for c in G.classes if r % combinatorial_index(F, c[0]) == 0)
    return Fraction(good, G.order)


def s0_term(F: FibreModel, N: SubgroupHandle, coset_rep: Element, r: int) -> Fraction:
    """``#{g in coset_rep*N : index(g) | r} / #N`` for a normal subgroup ``N``.

    This is the inner term for one place of the residue field of the base;
    deciding whether the place ramifies (the value is then 1 by convention)
    and averaging over places of equal norm is left to the caller.
    """
    _check_nonempty(F)
    _check_r(r)
    G = F.group
    if N.group is not G:
        raise InputError("normal subgroup belongs to a different group")
    if not G.is_normal(N):
        raise NotNormal("N is not normal in G")
    t = G.index_of(coset_rep)
    count = sum(1 for n in N.members if r % combinatorial_index(F, G.mul(n, t)) == 0)
    return Fraction(count, N.order)


@dataclass(frozen=True)
class ClassPattern:
    class_id: int
    representative: Permutation
    size: int
    # ((m, (cycle type of factor 1, cycle type of factor 2, ...)), ...)
    patterns: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]
    index: int

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "representative": str(self.representative),
            "size": self.size,
            "pattern": format_pattern_tuple(self.patterns),
            "index": self.index,
        }


def class_pattern_table(F: FibreModel) -> list[ClassPattern]:
    _check_nonempty(F)
    G = F.group
    table = []
    for cid, members in enumerate(G.classes):
        g = members[0]
        patterns = tuple(
            (m, tuple(cycle_type(a, g) for a in alg.factors))
            for m, alg in F.components.items()
        )
        table.append(ClassPattern(cid, G.elements[g], len(members), patterns,
                                  combinatorial_index(F, g)))
    return table


def format_pattern(pattern: Sequence[int]) -> str:
    """``(1, 1, 2, 2)`` -> ``"1^2 2^2"``."""
    counts = Counter(pattern)
    return " ".join(f"{d}^{c}" if c > 1 else f"{d}" for d, c in sorted(counts.items()))


def format_pattern_tuple(patterns) -> str:
    multi = len(patterns) > 1 or any(m != 1 for m, _ in patterns)
    parts = []
    for m, factors in patterns:
        body = " | ".join(format_pattern(p) for p in factors)
        parts.append(f"m={m}: {body}" if multi else body)
    return " ; ".join(parts)
