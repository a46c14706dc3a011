"""The dual category of finite DP-algebras: multisets of finite chains.

An object is a finite multiset of nonempty finite chains, stored
canonically as (length, multiplicity) pairs with strictly increasing
lengths.  A morphism assigns to each source chain a target chain and a
monotone surjection onto it whose top fiber is the singleton source
maximum (no constraint when the target chain has one element).  Products
in this category compute coproducts of algebras, which is what makes
free-algebra duals a simple power computation.

Multiplicities are exact Python integers throughout; nothing here is
floating point and all values are immutable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Mapping

from .algebra import CapExceeded, ProductAlgebra

POWER_INSTANCE_CAP = 10**6

ENUM_INSTANCE_CAP = 8

ENUM_LENGTH_CAP = 8

FREE_CARDINALITY_CAP = 12


@dataclass(frozen=True)
class MultisetObj:
    """A finite multiset of finite chains, keyed by chain length."""

    chains: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for length, mult in self.chains:
            if length < 1:
                raise ValueError(f"chain length must be >= 1, got {length}")
            if mult < 0:
                raise ValueError(f"multiplicity must be >= 0, got {mult}")
            if mult:
                merged[length] = merged.get(length, 0) + mult
        object.__setattr__(self, "chains",
                           tuple(sorted(merged.items())))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "MultisetObj":
        return cls(tuple((l, 1) for l in lengths))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "MultisetObj":
        return cls(tuple(counts.items()))

    def lengths(self) -> list[int]:
        """All chain instances, expanded in increasing order of length."""
        return [l for l, m in self.chains for _ in range(m)]

    def instance_count(self) -> int:
        return sum(m for _, m in self.chains)

    def multiplicity(self, length: int) -> int:
        return dict(self.chains).get(length, 0)

    def __bool__(self) -> bool:
        return bool(self.chains)

    def __str__(self) -> str:
        if not self.chains:
            return "{}"
        if self.instance_count() <= 12:
            return "{" + ",".join(str(l) for l in self.lengths()) + "}"
        return "{" + ",".join(f"{l}:{m}" for l, m in self.chains) + "}"


EMPTY = MultisetObj()

TERMINAL = MultisetObj.from_lengths([1])

# dual of the free one-generated algebra: two Booleans, a 3-chain, a 4-chain
FREE_ONE_DUAL = MultisetObj.from_lengths([1, 1, 2, 3])


def coproduct(c: MultisetObj, d: MultisetObj) -> MultisetObj:
    """Disjoint union; dually, the direct product of the algebras."""
    return MultisetObj(c.chains + d.chains)


def top_lift(c: MultisetObj) -> MultisetObj:
    """Add a fresh maximum to every chain: each length grows by one."""
    return MultisetObj(tuple((l + 1, m) for l, m in c.chains))


@cache
def _singleton_product(a: int, b: int) -> tuple[tuple[int, int], ...]:
    # product of two single chains; commutative, so normalize the order
    if a > b:
        a, b = b, a
    if a == 1:
        return ((b, 1),)
    if a == 2:
        return ((b, 1),)
    parts = [_singleton_product(a, b - 1),
             _singleton_product(a - 1, b - 1),
             _singleton_product(a - 1, b)]
    merged: dict[int, int] = {}
    for part in parts:
        for l, m in part:
            merged[l + 1] = merged.get(l + 1, 0) + m
    return tuple(sorted(merged.items()))


def product(c: MultisetObj, d: MultisetObj) -> MultisetObj:
    """Categorical product: distribute over the multiset, then recurse.

    Single chains multiply by {a} x {1} = {a}, {a} x {2} = {a} for a >= 2,
    and for a, b >= 3 by lifting the three products of predecessors.  The
    empty object is the empty coproduct, so anything times it is empty.
    """
    merged: dict[int, int] = {}
    for la, ma in c.chains:
        for lb, mb in d.chains:
            for l, m in _singleton_product(la, lb):
                merged[l] = merged.get(l, 0) + ma * mb * m
    return MultisetObj.from_counts(merged)


def power(c: MultisetObj, k: int, cap: int = POWER_INSTANCE_CAP) -> MultisetObj:
    """k-fold product of c with itself; power(c, 0) is the terminal {1}."""
    if k < 0:
        raise ValueError(f"power wants a nonnegative exponent, got {k}")
    out = TERMINAL
    for _ in range(k):
        out = product(out, c)
        if out.instance_count() > cap:
            raise CapExceeded(f"power result exceeds the cap of {cap} chain instances")
    return out


def mc_inverse(c: MultisetObj) -> ProductAlgebra:
    """The algebra dual to c: a product of chains of sizes length + 1."""
    if not c:
        raise ValueError("the empty multiset dualizes the trivial algebra, "
                         "which has no product-of-chains form")
    return ProductAlgebra(l + 1 for l in c.lengths())


def tr(c: MultisetObj) -> list[tuple[int, int]]:
    """Forest representation: each chain becomes a root over its lower part.

    Every instance of length l yields the pair (1, l - 1), the second
    component being the (possibly empty) chain below the removed maximum.
    """
    return [(1, l - 1) for l in c.lengths()]


def height(c: MultisetObj) -> int:
    """Maximum chain length; undefined for the empty multiset."""
    if not c:
        raise ValueError("the empty multiset has no height")
    return max(l for l, _ in c.chains)


def surjection_count(a: int, b: int) -> int:
    """Monotone surjections from an a-chain onto a b-chain with the top
    fiber pinned to the maximum (no pin when b = 1)."""
    if b == 1:
        return 1
    if a < b:
        return 0
    return math.comb(a - 2, b - 2)


def monotone_surjections(a: int, b: int) -> list[tuple[int, ...]]:
    """All maps counted by surjection_count, as rank arrays."""
    if b == 1:
        return [(0,) * a]
    if a < b:
        return []
    out = []
    # block boundaries; the top block is always the bare source maximum
    for inner in itertools.combinations(range(1, a - 1), b - 2):
        cuts = inner + (a - 1,)
        mapping = []
        value = 0
        for rank in range(a):
            if value < len(cuts) and rank == cuts[value]:
                value += 1
            mapping.append(value)
        out.append(tuple(mapping))
    return out


@dataclass(frozen=True)
class MCMorphism:
    """A family of component surjections, one per source chain instance.

    components[i] = (j, map) sends the i-th source instance (in canonical
    expanded order) onto the j-th target instance via the given rank map.
    """

    source: MultisetObj
    target: MultisetObj
    components: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        src = self.source.lengths()
        tgt = self.target.lengths()
        if len(self.components) != len(src):
            raise ValueError("one component per source chain instance required")
        for a, (j, mapping) in zip(src, self.components):
            if not 0 <= j < len(tgt):
                raise ValueError(f"target index {j} out of range")
            b = tgt[j]
            if len(mapping) != a:
                raise ValueError("component map must cover every source rank")
            if any(not 0 <= v < b for v in mapping):
                raise ValueError("component map value out of target range")
            if any(x > y for x, y in zip(mapping, mapping[1:])):
                raise ValueError("component map must be order preserving")
            if set(mapping) != set(range(b)):
                raise ValueError("component map must be surjective")
            if b > 1 and mapping.count(b - 1) != 1:
                raise ValueError("top fiber must be the source maximum alone")


def morphism_count(c: MultisetObj, d: MultisetObj) -> int:
    """|Hom(c, d)|: each source instance independently picks a target
    instance and one of the admissible surjections onto it."""
    total = 1
    for a, m in c.chains:
        choices = sum(mb * surjection_count(a, b) for b, mb in d.chains)
        total *= choices ** m
    return total


def enumerate_morphisms(c: MultisetObj, d: MultisetObj) -> list[MCMorphism]:
    """All morphisms c -> d, literally as indexed families."""
    if c.instance_count() > ENUM_INSTANCE_CAP or d.instance_count() > ENUM_INSTANCE_CAP:
        raise CapExceeded(f"morphism enumeration capped at {ENUM_INSTANCE_CAP} instances")
    lengths = [l for l, _ in c.chains] + [l for l, _ in d.chains]
    if any(l > ENUM_LENGTH_CAP for l in lengths):
        raise CapExceeded(f"morphism enumeration capped at length {ENUM_LENGTH_CAP}")
    tgt = d.lengths()
    per_instance = []
    for a in c.lengths():
        choices = [(j, mapping)
                   for j, b in enumerate(tgt)
                   for mapping in monotone_surjections(a, b)]
        per_instance.append(choices)
    return [MCMorphism(c, d, family)
            for family in itertools.product(*per_instance)]


def free_dual(k: int, cap: int = POWER_INSTANCE_CAP) -> MultisetObj:
    """Dual of the free k-generated algebra: the k-th power of {1,1,2,3}."""
    return power(FREE_ONE_DUAL, k, cap)


def free_coefficient(k: int, h: int) -> int:
    """Multiplicity of the h-chain in the dual of the free k-generated
    algebra, by the closed form; 0 whenever h > k + 2."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if h < 1:
        raise ValueError(f"need h >= 1, got {h}")
    if h == 1:
        return 2 ** k
    if h == 2:
        return 3 ** k - 2 ** k
    if h > k + 2:
        return 0
    return sum((-1) ** i * math.comb(h - 2, i) * (h + 1 - i) ** k
               for i in range(h - 1))


def free_dual_closed_form(k: int) -> MultisetObj:
    """free_dual computed from the closed-form coefficients alone."""
    return MultisetObj.from_counts(
        {h: free_coefficient(k, h) for h in range(1, k + 3)})


def free_dual_recurrence(k: int) -> MultisetObj:
    """free_dual computed by stepping the coefficient recurrence from k=0.

    One power of the base multiset sends a_1 to 2a_1, a_2 to a_1 + 3a_2,
    a_3 to a_1 + a_2 + 4a_3 and a_h to (h-2)a_{h-1} + (h+1)a_h above.
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    coeff = {1: 1}
    for _ in range(k):
        nxt = {1: 2 * coeff.get(1, 0),
               2: coeff.get(1, 0) + 3 * coeff.get(2, 0),
               3: coeff.get(1, 0) + coeff.get(2, 0) + 4 * coeff.get(3, 0)}
        for h in range(4, max(coeff) + 2):
            nxt[h] = (h - 2) * coeff.get(h - 1, 0) + (h + 1) * coeff.get(h, 0)
        coeff = {h: m for h, m in nxt.items() if m}
    return MultisetObj.from_counts(coeff)


def free_cardinality(k: int) -> int:
    """Number of elements of the free k-generated algebra, exactly."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k > FREE_CARDINALITY_CAP:
        raise CapExceeded(f"free cardinality capped at k = {FREE_CARDINALITY_CAP}")
    out = 2 ** (2 ** k) * 3 ** (3 ** k - 2 ** k)
    for h in range(3, k + 3):
        out *= (h + 1) ** free_coefficient(k, h)
    return out


def kx3_identity_check(k: int) -> bool:
    """Does {k} x {3} come out as (k-1) copies of {k+1} plus (k-2) of {k}?"""
    if not 2 <= k <= 20:
        raise ValueError(f"identity check wants 2 <= k <= 20, got {k}")
    lhs = product(MultisetObj.from_lengths([k]), MultisetObj.from_lengths([3]))
    rhs = MultisetObj.from_counts({k + 1: k - 1, k: k - 2})
    return lhs == rhs


def multiset_to_json(c: MultisetObj) -> dict:
    return {"chains": [{"len": l, "mult": m} for l, m in c.chains]}


def multiset_from_json(data: Mapping) -> MultisetObj:
    return MultisetObj(tuple((e["len"], e["mult"]) for e in data["chains"]))


def multiset_from_text(text: str) -> MultisetObj:
    """Parse "{1,3,2,1}" or "{1:4,2:5}" (or "{}" for the empty object)."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return EMPTY
    pairs = []
    for part in body.split(","):
        part = part.strip()
        if ":" in part:
            l, m = part.split(":", 1)
            pairs.append((int(l), int(m)))
        else:
            pairs.append((int(part), 1))
    return MultisetObj(tuple(pairs))


def morphism_to_json(f: MCMorphism) -> dict:
    return {"components": [{"target": j, "map": list(mapping)}
                           for j, mapping in f.components]}
