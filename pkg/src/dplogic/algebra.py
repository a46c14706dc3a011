"""Finite chain and product algebras for drastic-product many-valued logic.

Elements of a chain of size n are the ranks 0..n-1 with 0 the bottom and
n-1 the top, so no floating point is involved anywhere.  A drastic-product
chain multiplies any two non-top elements to 0 and otherwise behaves as
min; its residuum collapses every strict comparison below the top to the
coatom.  General finite MTL-chains are given by an explicit product table
and get their residuum computed.  Finite products of drastic-product
chains act pointwise on rank tuples.

All algebra values are immutable and evaluation sweeps are pure, so
everything here is safe to share between threads.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

from .formula import (
    Bot, Delta, Formula, Iff, Imp, Min, Neg, Or, Power, Strong, Top, Var,
    parse, variables,
)

DEFAULT_CAP = 10**7

SIMPLICITY_SIZE_CAP = 64


class CapExceeded(RuntimeError):
    """A sweep would evaluate more points than the configured cap allows."""


class EvaluationError(ValueError):
    """Unbound variable, or the projection D applied outside a DP algebra."""


@dataclass(frozen=True)
class DPChain:
    """The n-element drastic-product chain (n >= 2)."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"chain needs at least 2 elements, got {self.size}")

    @property
    def bot(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def coatom(self) -> int:
        # for the two-element chain the coatom is the bottom
        return self.size - 2

    supports_delta = True

    def elements(self) -> range:
        return range(self.size)

    def prod(self, x: int, y: int) -> int:
        if x < self.top and y < self.top:
            return 0
        return min(x, y)

    def imp(self, x: int, y: int) -> int:
        if x <= y:
            return self.top
        if x < self.top:
            return self.coatom
        return y

    def meet(self, x: int, y: int) -> int:
        return min(x, y)

    def join(self, x: int, y: int) -> int:
        return max(x, y)

    def neg(self, x: int) -> int:
        return self.imp(x, 0)

    def delta(self, x: int) -> int:
        return self.prod(x, x)


class FiniteMTLChain:
    """A finite MTL-chain given by its monoidal product table.

    The table must be commutative, associative, monotone in each argument
    and have the top element as unit; this is validated at construction.
    The residuum table is derived as x => y = max{z : x*z <= y}.
    """

    supports_delta = False

    def __init__(self, product: Iterable[Iterable[int]]):
        table = tuple(tuple(row) for row in product)
        n = len(table)
        if n < 2:
            raise ValueError("chain needs at least 2 elements")
        top = n - 1
        for row in table:
            if len(row) != n:
                raise ValueError("product table must be square")
            for v in row:
                if not 0 <= v <= top:
                    raise ValueError(f"table entry {v} outside 0..{top}")
        for x in range(n):
            if table[x][top] != x or table[top][x] != x:
                raise ValueError("top element must be the monoidal unit")
            if table[x][0] != 0 or table[0][x] != 0:
                raise ValueError("bottom element must be absorbing")
            for y in range(n):
                if table[x][y] != table[y][x]:
                    raise ValueError(f"table not commutative at ({x},{y})")
                if y + 1 < n and table[x][y] > table[x][y + 1]:
                    raise ValueError(f"table not monotone at ({x},{y})")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if table[table[x][y]][z] != table[x][table[y][z]]:
                        raise ValueError(f"table not associative at ({x},{y},{z})")
        self.size = n
        self.product_table = table
        self.residuum_table = tuple(
            tuple(max(z for z in range(n) if table[x][z] <= y) for y in range(n))
            for x in range(n)
        )

    @property
    def bot(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def coatom(self) -> int:
        return self.size - 2

    def elements(self) -> range:
        return range(self.size)

    def prod(self, x: int, y: int) -> int:
        return self.product_table[x][y]

    def imp(self, x: int, y: int) -> int:
        return self.residuum_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return min(x, y)

    def join(self, x: int, y: int) -> int:
        return max(x, y)

    def neg(self, x: int) -> int:
        return self.residuum_table[x][0]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMTLChain) and self.product_table == other.product_table

    def __hash__(self) -> int:
        return hash(self.product_table)

    def __repr__(self) -> str:
        return f"FiniteMTLChain({[list(r) for r in self.product_table]})"


class ProductAlgebra:
    """A finite DP-algebra in decomposed form: a direct product of chains.

    Elements are tuples of ranks, one per factor; every operation acts
    pointwise.
    """

    supports_delta = True

    def __init__(self, factors: Iterable[DPChain | int]):
        fs = tuple(f if isinstance(f, DPChain) else DPChain(f) for f in factors)
        if not fs:
            raise ValueError("a product algebra needs at least one factor")
        self.factors = fs

    @property
    def size(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.size
        return out

    @property
    def bot(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.factors)

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(f.top for f in self.factors)

    def elements(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*[f.elements() for f in self.factors])

    def prod(self, x, y):
        return tuple(f.prod(a, b) for f, a, b in zip(self.factors, x, y))

    def imp(self, x, y):
        return tuple(f.imp(a, b) for f, a, b in zip(self.factors, x, y))

    def meet(self, x, y):
        return tuple(map(min, x, y))

    def join(self, x, y):
        return tuple(map(max, x, y))

    def neg(self, x):
        return self.imp(x, self.bot)

    def delta(self, x):
        return self.prod(x, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductAlgebra) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"ProductAlgebra({[f.size for f in self.factors]})"


Algebra = DPChain | FiniteMTLChain | ProductAlgebra

# a valuation is a plain mapping from variable names to algebra elements
Valuation = Mapping[str, object]


def evaluate(f: Formula, algebra: Algebra, valuation: Valuation):
    """Value of f in the algebra under the valuation.

    /\\ and \\/ are lattice meet and join, & the monoidal product, -> the
    residuum and 0 the bottom; ~, <-> and powers evaluate through their
    defining abbreviations.  D requires a DP algebra, where it acts as
    squaring.
    """
    if isinstance(f, Var):
        try:
            return valuation[f.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {f.name!r}") from None
    if isinstance(f, Bot):
        return algebra.bot
    if isinstance(f, Top):
        return algebra.top
    if isinstance(f, Strong):
        return algebra.prod(evaluate(f.lhs, algebra, valuation),
                            evaluate(f.rhs, algebra, valuation))
    if isinstance(f, Min):
        return algebra.meet(evaluate(f.lhs, algebra, valuation),
                            evaluate(f.rhs, algebra, valuation))
    if isinstance(f, Imp):
        return algebra.imp(evaluate(f.lhs, algebra, valuation),
                           evaluate(f.rhs, algebra, valuation))
    if isinstance(f, Neg):
        return algebra.imp(evaluate(f.arg, algebra, valuation), algebra.bot)
    if isinstance(f, Or):
        return algebra.join(evaluate(f.lhs, algebra, valuation),
                            evaluate(f.rhs, algebra, valuation))
    if isinstance(f, Iff):
        a = evaluate(f.lhs, algebra, valuation)
        b = evaluate(f.rhs, algebra, valuation)
        return algebra.prod(algebra.imp(a, b), algebra.imp(b, a))
    if isinstance(f, Delta):
        if not algebra.supports_delta:
            raise EvaluationError("D is only defined on DP algebras")
        return algebra.delta(evaluate(f.arg, algebra, valuation))
    if isinstance(f, Power):
        x = evaluate(f.arg, algebra, valuation)
        out = algebra.top
        for _ in range(f.n):
            out = algebra.prod(out, x)
        return out
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validity sweep; carries a countermodel on failure."""

    ok: bool
    algebra: Algebra | None = None
    valuation: dict | None = None
    value: object | None = None

    def __bool__(self) -> bool:
        return self.ok


def holds(f: Formula, algebra: Algebra, cap: int = DEFAULT_CAP) -> Verdict:
    """Sweep all valuations; true iff f evaluates to top on every one."""
    names = variables(f)
    universe = list(algebra.elements())
    points = len(universe) ** len(names)
    if points > cap:
        raise CapExceeded(f"{points} valuations exceed the cap of {cap}")
    for combo in itertools.product(universe, repeat=len(names)):
        v = dict(zip(names, combo))
        value = evaluate(f, algebra, v)
        if value != algebra.top:
            return Verdict(False, algebra, v, value)
    return Verdict(True)


def is_dp_chain(chain: DPChain | FiniteMTLChain) -> bool:
    """True iff every element below the top squares to 0.

    A finite chain always has a coatom, so this is exactly the
    drastic-product condition; when it holds the product and residuum
    tables agree with the DPChain operations entry by entry.
    """
    return all(chain.prod(x, x) == 0 for x in range(chain.top))


_AXIOM_FORMULAS = {
    "dp": "x \\/ ~(x^2)",
    "wnm": "~(x & y) \\/ ((x /\\ y) -> (x & y))",
    "rdp": "(x -> ~x) \\/ ~~x",
}

_SCHEMA_RE = re.compile(r"^(skmtl|ncontract)\((\d+)\)$")


def axiom_instance(name: str) -> Formula | tuple[Formula, Formula]:
    """The named axiom as a formula, or a pair (lhs, rhs) for an equation.

    Accepted names: dp, wnm, rdp, skmtl(k) for k >= 2, ncontract(n) for
    n >= 1.  skmtl(k) is the weakened excluded middle x \\/ ~(x^(k-1));
    ncontract(n) is the equation x^n = x^(n-1).
    """
    if name in _AXIOM_FORMULAS:
        return parse(_AXIOM_FORMULAS[name])
    m = _SCHEMA_RE.match(name.replace(" ", ""))
    if m is None:
        raise ValueError(f"unknown axiom {name!r}")
    k = int(m.group(2))
    if m.group(1) == "skmtl":
        if k < 2:
            raise ValueError("skmtl(k) needs k >= 2")
        return Or(Var("x"), Neg(Power(Var("x"), k - 1)))
    if k < 1:
        raise ValueError("ncontract(n) needs n >= 1")
    return (Power(Var("x"), k), Power(Var("x"), k - 1))


def satisfies_axiom(algebra: Algebra, name: str, cap: int = DEFAULT_CAP) -> bool:
    """Brute-force the named axiom schema over all valuations."""
    inst = axiom_instance(name)
    if isinstance(inst, Formula):
        return holds(inst, algebra, cap).ok
    lhs, rhs = inst
    names = variables(lhs)
    for combo in itertools.product(list(algebra.elements()), repeat=len(names)):
        v = dict(zip(names, combo))
        if evaluate(lhs, algebra, v) != evaluate(rhs, algebra, v):
            return False
    return True


# the five projection axioms; they pin D down as the top-detector
DELTA_AXIOM_TEXTS = (
    "D x \\/ ~D x",
    "D x -> x",
    "D x -> D D x",
    "D(x -> y) -> (D x -> D y)",
    "D(x \\/ y) -> (D x \\/ D y)",
)


def delta_axioms() -> tuple[Formula, ...]:
    return tuple(parse(t) for t in DELTA_AXIOM_TEXTS)


def enumerate_mtl_chains(n: int) -> list[FiniteMTLChain]:
    """All MTL-chain product tables on the n-element chain, 2 <= n <= 5.

    Backtracks over the upper triangle of the table (entries between
    nonextremal elements; rows for 0 and top are forced), pruning by
    monotonicity and by associativity of the decided entries.  Tables are
    produced in lexicographic order of the free entries.
    """
    if not 2 <= n <= 5:
        raise ValueError(f"chain enumeration is capped at size 5, got {n}")
    top = n - 1
    free = [(x, y) for x in range(1, top) for y in range(x, top)]
    table = [[None] * n for x in range(n)]
    for x in range(n):
        table[x][0] = table[0][x] = 0
        table[x][top] = table[top][x] = x

    def assoc_ok() -> bool:
        # check every triple whose five lookups are all decided
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc is None:
                        continue
                    left = table[ab][c]
                    right = table[a][bc]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    out: list[FiniteMTLChain] = []

    def fill(i: int):
        if i == len(free):
            out.append(FiniteMTLChain([row[:] for row in table]))
            return
        x, y = free[i]
        lower = 0
        if y - 1 >= 1:
            prev = table[x][y - 1]
            if prev is not None:
                lower = max(lower, prev)
        if x - 1 >= 1:
            prev = table[x - 1][y]
            if prev is not None:
                lower = max(lower, prev)
        for v in range(lower, min(x, y) + 1):
            table[x][y] = table[y][x] = v
            if assoc_ok():
                fill(i + 1)
        table[x][y] = table[y][x] = None

    fill(0)
    return out


def principal_filter(algebra: Algebra, a) -> frozenset:
    """The smallest filter containing a: the upset of a's stabilized power."""
    p = a
    while True:
        q = algebra.prod(p, a)
        if q == p:
            break
        p = q
    if isinstance(algebra, ProductAlgebra):
        return frozenset(x for x in algebra.elements() if algebra.meet(x, p) == p)
    return frozenset(x for x in algebra.elements() if x >= p)


def is_simple(algebra: Algebra) -> bool:
    """True iff the only filters are {top} and the whole universe.

    Filters correspond to congruences, and every nontrivial filter
    contains a principal one, so it suffices that each element below the
    top generates the improper filter.
    """
    universe = list(algebra.elements())
    if len(universe) > SIMPLICITY_SIZE_CAP:
        raise CapExceeded(f"simplicity check capped at {SIMPLICITY_SIZE_CAP} elements")
    full = len(universe)
    for a in universe:
        if a == algebra.top:
            continue
        if len(principal_filter(algebra, a)) != full:
            return False
    return True


def delta_of(algebra: DPChain | ProductAlgebra, x):
    """The projection D on a DP algebra: the square of x."""
    if not algebra.supports_delta:
        raise EvaluationError("D is only defined on DP algebras")
    return algebra.prod(x, x)


def discriminator(algebra: DPChain, x, y, z):
    """(D(x <-> y) /\\ z) \\/ (~D(x <-> y) /\\ x).

    On a DP-chain this is the ternary discriminator: z when x = y and x
    otherwise.
    """
    eq = algebra.prod(algebra.imp(x, y), algebra.imp(y, x))
    d = delta_of(algebra, eq)
    return algebra.join(algebra.meet(d, z), algebra.meet(algebra.neg(d), x))


def find_embedding(b: DPChain, a: DPChain) -> tuple[int, ...] | None:
    """The canonical DP-chain embedding of b into a, or None if b is bigger.

    Ranks below the coatom map identically, the coatom to the coatom and
    the top to the top; preserving 0, coatom, top and order is enough to
    preserve all operations.
    """
    if b.size > a.size:
        return None
    if b.size == 2:
        return (0, a.top)
    return tuple(range(b.size - 2)) + (a.coatom, a.top)


def _closure(algebra: Algebra, seed: Iterable) -> set:
    elems = {algebra.bot, algebra.top} | set(seed)
    while True:
        new = set()
        for x in elems:
            for y in elems:
                for op in (algebra.prod, algebra.imp, algebra.meet, algebra.join):
                    z = op(x, y)
                    if z not in elems:
                        new.add(z)
        if not new:
            return elems
        elems |= new


def generating_set(algebra: Algebra) -> list:
    """A small generating set found greedily (constants are always free)."""
    universe = list(algebra.elements())
    gens: list = []
    closed = _closure(algebra, gens)
    for x in universe:
        if x not in closed:
            gens.append(x)
            closed = _closure(algebra, gens)
    return gens


def enumerate_homomorphisms(src: Algebra, dst: Algebra,
                            cap: int = DEFAULT_CAP) -> list[dict]:
    """All maps src -> dst preserving *, =>, meet, join, 0 and top.

    A homomorphism is fixed by its values on a generating set, so the
    search assigns targets to the generators of src and extends each
    assignment by operation closure, rejecting on conflict; the surviving
    maps are verified pointwise on every pair.  The cap applies to the
    number of generator assignments tried.
    """
    elems_src = list(src.elements())
    elems_dst = list(dst.elements())
    gens = generating_set(src)
    tries = len(elems_dst) ** len(gens)
    if tries > cap:
        raise CapExceeded(f"{tries} generator assignments exceed the cap of {cap}")
    ops_src = (src.prod, src.imp, src.meet, src.join)
    ops_dst = (dst.prod, dst.imp, dst.meet, dst.join)
    found = []
    for images in itertools.product(elems_dst, repeat=len(gens)):
        h = {src.bot: dst.bot, src.top: dst.top}
        h.update(zip(gens, images))
        ok = True
        while ok:
            grew = False
            pairs = list(h.items())
            for x, hx in pairs:
                for y, hy in pairs:
                    for f, g in zip(ops_src, ops_dst):
                        z = f(x, y)
                        w = g(hx, hy)
                        hz = h.get(z)
                        if hz is None:
                            h[z] = w
                            grew = True
                        elif hz != w:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not grew:
                break
        if ok and len(h) == len(elems_src):
            found.append(h)
    return found


def is_theorem(f: Formula, cap: int = DEFAULT_CAP) -> Verdict:
    """Decide DP theoremhood by sweeping one chain of size k+3.

    The subalgebra generated by k elements of any DP-chain consists of the
    generators plus at most 0, the coatom and the top, so it has at most
    k+3 elements, and every smaller DP-chain embeds into the (k+3)-chain.
    A formula in k variables is therefore valid on all DP-chains iff it is
    valid on that single chain (size 2 when k = 0).
    """
    k = len(variables(f))
    size = k + 3 if k >= 1 else 2
    verdict = holds(f, DPChain(size), cap)
    if verdict.ok:
        return verdict
    # refuted; report the countermodel on the smallest refuting chain
    for n in range(2, size):
        smaller = holds(f, DPChain(n), cap)
        if not smaller.ok:
            return smaller
    return verdict


def is_theorem_in_variety(f: Formula, n: int, cap: int = DEFAULT_CAP) -> Verdict:
    """Validity in the subvariety generated by the n-element DP-chain."""
    if n < 2:
        raise ValueError(f"variety index must be >= 2, got {n}")
    return holds(f, DPChain(n), cap)


def separating_formula(n: int) -> Formula:
    """Pairwise-equivalence disjunction over n+1 variables.

    Valid in the variety of the n-element chain by pigeonhole, refuted on
    the (n+1)-element chain by any injective valuation.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    xs = [Var(f"x{i}") for i in range(1, n + 2)]
    disjuncts = [Iff(xs[i], xs[j]) for i in range(n + 1) for j in range(i + 1, n + 1)]
    return reduce(Or, disjuncts)


def subvariety_index(algebra: ProductAlgebra | DPChain) -> int:
    """Maximum factor cardinality: the variety generated is that chain's."""
    if isinstance(algebra, DPChain):
        return algebra.size
    return max(f.size for f in algebra.factors)


@dataclass(frozen=True)
class FreeAlgebraTable:
    """Term functions of the free algebra, tabulated pointwise."""

    generators: int
    chain_size: int
    functions: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.functions)


def free_algebra_bruteforce(k: int) -> FreeAlgebraTable:
    """Close the k projections under pointwise operations on the (k+3)-chain.

    Term functions in k variables separate exactly on the (k+3)-element
    chain, so the closure of the projections and the constants inside
    C^(C^k) is the free k-generated algebra.  Only k <= 1 is allowed; k=2
    already has more than 10^9 elements.
    """
    if not 0 <= k <= 1:
        raise ValueError(f"free-algebra brute force is only feasible for k <= 1, got {k}")
    chain = DPChain(k + 3)
    points = list(itertools.product(chain.elements(), repeat=k))
    bottom = tuple(0 for _ in points)
    unit = tuple(chain.top for _ in points)
    seed = {bottom, unit}
    for i in range(k):
        seed.add(tuple(p[i] for p in points))
    elems = set(seed)
    frontier = list(seed)
    while frontier:
        fresh = []
        for x in list(elems):
            for y in frontier:
                for op in (chain.prod, chain.imp, chain.meet, chain.join):
                    for z in (tuple(map(op, x, y)), tuple(map(op, y, x))):
                        if z not in elems:
                            elems.add(z)
                            fresh.append(z)
        frontier = fresh
    return FreeAlgebraTable(k, chain.size, tuple(sorted(elems)))


def element_name(chain_size: int, rank: int) -> str:
    """Symbolic name of a rank: "0", "1", "c" or "r<k>"."""
    if rank == 0:
        return "0"
    if rank == chain_size - 1:
        return "1"
    if rank == chain_size - 2:
        return "c"
    return f"r{rank}"


def algebra_to_json(algebra: Algebra) -> dict:
    if isinstance(algebra, DPChain):
        return {"type": "dp_chain", "size": algebra.size}
    if isinstance(algebra, FiniteMTLChain):
        return {"type": "mtl_chain", "size": algebra.size,
                "product": [list(row) for row in algebra.product_table]}
    if isinstance(algebra, ProductAlgebra):
        return {"type": "product", "factors": [f.size for f in algebra.factors]}
    raise TypeError(f"not an algebra: {algebra!r}")


def algebra_from_json(data: Mapping) -> Algebra:
    kind = data.get("type")
    if kind == "dp_chain":
        return DPChain(data["size"])
    if kind == "mtl_chain":
        return FiniteMTLChain(data["product"])
    if kind == "product":
        return ProductAlgebra(data["factors"])
    raise ValueError(f"unknown algebra encoding {kind!r}")


def witness_to_json(verdict: Verdict) -> dict | None:
    """Encode a countermodel: algebra, valuation ranks and names, value."""
    if verdict.ok or verdict.algebra is None:
        return None
    algebra = verdict.algebra

    def describe(elem):
        if isinstance(algebra, ProductAlgebra):
            return {"rank": list(elem),
                    "name": [element_name(f.size, r)
                             for f, r in zip(algebra.factors, elem)]}
        return {"rank": elem, "name": element_name(algebra.size, elem)}

    return {
        "algebra": algebra_to_json(algebra),
        "valuation": {name: describe(elem)
                      for name, elem in sorted(verdict.valuation.items())},
        "value": describe(verdict.value),
    }
