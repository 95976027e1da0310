"""Certificates that a field extension is not locally cycle-split.

For a proper subgroup ``H`` of ``G`` there is an element ``g`` of prime-power
order ``p**k`` lying in no conjugate of ``H`` (Fein, Kantor and Schacher).
Every ``min{j : g**j in t^-1 H t}`` is then a positive power of ``p``, so
their gcd is divisible by ``p`` and the degree-1 local zero-cycle fails at
every place whose Frobenius is conjugate to ``g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InputError, InternalExhaustion, NotProper
from .perm import Permutation, PermutationGroup, SubgroupHandle


def prime_power_base(n: int) -> int | None:
    """The prime ``p`` if ``n == p**k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def certified_index(G: PermutationGroup, H: SubgroupHandle, g: Union[int, Permutation]) -> int:
    """``gcd over t in G of min{k >= 1 : g**k in t^-1 H t}``."""
    gi = G.index_of(g)
    n = G.element_order(gi)
    powers = [G.power(gi, k) for k in range(1, n + 1)]
    result = 0
    for t in range(G.order):
        t_inv = G.inv(t)
        # g^k in t^-1 H t  <=>  t g^k t^-1 in H
        k = next(k for k, x in enumerate(powers, 1) if G.mul(G.mul(t, x), t_inv) in H.members)
        result = math.gcd(result, k)
        if result == 1:
            break
    return result


@dataclass(frozen=True)
class HasseCertificate:
    group: PermutationGroup
    subgroup: SubgroupHandle
    witness: Permutation
    prime: int
    certified_index: int

    def to_dict(self, group_name: str | None = None, subgroup_name: str | None = None) -> dict:
        return {
            "group": group_name if group_name is not None else
                     {"degree": self.group.degree, "order": self.group.order,
                      "generators": [str(g) for g in self.group.generators]},
            "subgroup": subgroup_name if subgroup_name is not None else
                        {"order": self.subgroup.order,
                         "generators": [str(self.group.elements[i]) for i in self.subgroup.generators]},
            "witness": str(self.witness),
            "witness_order": self.witness.order,
            "prime": self.prime,
            "certified_index": self.certified_index,
        }


def conjugates_union(G: PermutationGroup, H: SubgroupHandle) -> frozenset[int]:
    out = set()
    for t in range(G.order):
        out |= G.conjugate_subgroup_members(H, t)
        if len(out) == G.order:
            break
    return frozenset(out)


def fks_witness(G: PermutationGroup, H: SubgroupHandle) -> HasseCertificate:
    """First prime-power-order element avoiding every conjugate of ``H``.

    Candidates are tried in order of (prime, element order, element index).
    """
    if H.group is not G:
        raise InputError("subgroup belongs to a different group")
    if not H.is_proper():
        raise NotProper("H must be a proper subgroup")
    covered = conjugates_union(G, H)
    candidates = []
    for i in range(G.order):
        p = prime_power_base(G.element_order(i))
        if p is not None and i not in covered:
            candidates.append((p, G.element_order(i), i))
    if not candidates:
        raise InternalExhaustion("no prime-power-order element avoids the conjugates of H")
    p, _, gi = min(candidates)
    index = certified_index(G, H, gi)
    if index <= 1 or index % p:
        raise InternalExhaustion(f"witness {G.elements[gi]} has certified index {index}")
    return HasseCertificate(G, H, G.elements[gi], p, index)


def subgroup_family(G: PermutationGroup) -> list[SubgroupHandle]:
    """Every subgroup of ``G``, each with a shortest generating set.

    Found breadth-first: join each known subgroup with each cyclic subgroup
    until nothing new appears.  Any subgroup is reached by adding its elements
    one at a time, so the lattice is complete.  Sorted by (order, sorted
    member indices).
    """
    cyclic: dict[frozenset, int] = {}
    for a in range(G.order):
        cyclic.setdefault(G.closure([a]), a)
    found: dict[frozenset, tuple[int, ...]] = {frozenset({0}): ()}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for S in frontier:
            gens = found[S]
            for a in cyclic.values():
                if a in S:
                    continue
                T = G.closure(gens + (a,))
                if T not in found:
                    found[T] = gens + (a,)
                    nxt.append(T)
        frontier = nxt
    family = [SubgroupHandle(G, gens, members) for members, gens in found.items()]
    family.sort(key=lambda H: (H.order, sorted(H.members)))
    return family
