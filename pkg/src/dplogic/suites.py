"""Self-check suites behind the `dp check` subcommand.

Each suite is a list of (name, ok, detail) rows; a suite passes when
every row does.  The checks restate the library's load-bearing algebraic
facts at desk scale, so a green run means the decision procedure, the
axiom classifications and the duality computations are consistent with
one another on exhaustively checkable instances.
"""

from __future__ import annotations

import itertools
import random

from . import algebra as alg
from . import duality as du
from .formula import Bot, Formula, Imp, Min, Neg, Or, Power, Strong, Var, variables

CheckRow = tuple[str, bool, str]


def _row(name: str, ok: bool, detail: str = "") -> CheckRow:
    return (name, bool(ok), detail)


def _small_chains() -> list:
    pool: list = [alg.DPChain(n) for n in range(2, 8)]
    for n in range(2, 5):
        pool.extend(alg.enumerate_mtl_chains(n))
    return pool


def _lukasiewicz3() -> alg.FiniteMTLChain:
    table = [[max(0, x + y - 2) for y in range(3)] for x in range(3)]
    return alg.FiniteMTLChain(table)


def rdp_class(chain) -> bool:
    # the RDP chains are the weak nilpotent minimum chains with the
    # revised drastic product identity; checking rdp alone is weaker
    return alg.satisfies_axiom(chain, "wnm") and alg.satisfies_axiom(chain, "rdp")


def random_formula(rng: random.Random, names: list[str], depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.15:
            return Bot()
        return Var(rng.choice(names))
    kind = rng.randrange(6)
    if kind == 0:
        return Neg(random_formula(rng, names, depth - 1))
    if kind == 1:
        return Power(random_formula(rng, names, depth - 1), rng.randrange(4))
    a = random_formula(rng, names, depth - 1)
    b = random_formula(rng, names, depth - 1)
    return (Strong, Min, Imp, Or)[kind - 2](a, b)


def axioms_suite(formula_budget: int = 60) -> list[CheckRow]:
    rows: list[CheckRow] = []
    chains = _small_chains()
    dp_chains = [alg.DPChain(n) for n in range(2, 8)]

    ok = all(
        (c.prod(x, z) <= y) == (z <= c.imp(x, y))
        for c in chains
        for x in c.elements() for y in c.elements() for z in c.elements())
    rows.append(_row("residuation law", ok, f"{len(chains)} chains, sizes 2..7"))

    enumerated = [c for n in range(2, 5) for c in alg.enumerate_mtl_chains(n)]
    ok = all(
        alg.is_dp_chain(c)
        == alg.satisfies_axiom(c, "dp")
        == all(c.prod(x, x) == 0 for x in range(c.top))
        for c in enumerated)
    rows.append(_row("dp characterization", ok, f"{len(enumerated)} chains of size <= 4"))

    ok = all(
        c.product_table == tuple(tuple(d.prod(x, y) for y in d.elements())
                                 for x in d.elements())
        and c.residuum_table == tuple(tuple(d.imp(x, y) for y in d.elements())
                                      for x in d.elements())
        for c in enumerated if alg.is_dp_chain(c)
        for d in [alg.DPChain(c.size)])
    rows.append(_row("dp tables are forced", ok, "product and residuum entry-wise"))

    dp_in_rdp = all(rdp_class(c) for c in enumerated if alg.is_dp_chain(c))
    rdp_in_wnm = all(alg.satisfies_axiom(c, "wnm") for c in enumerated if rdp_class(c))
    rdp_not_dp = [c for c in enumerated if rdp_class(c) and not alg.is_dp_chain(c)]
    wnm_not_rdp = [c for c in enumerated
                   if alg.satisfies_axiom(c, "wnm") and not rdp_class(c)]
    rows.append(_row("class inclusions dp < rdp < wnm",
                     dp_in_rdp and rdp_in_wnm and rdp_not_dp and wnm_not_rdp,
                     f"strictness witnesses: {len(rdp_not_dp)} and {len(wnm_not_rdp)}"))

    wnm_chains = [c for c in enumerated if alg.satisfies_axiom(c, "wnm")]
    ok = all(alg.is_simple(c) == alg.is_dp_chain(c) for c in wnm_chains)
    ok = ok and all(alg.is_simple(c) == alg.is_dp_chain(c)
                    for c in enumerated if rdp_class(c))
    rows.append(_row("simple wnm chains are dp", ok, f"{len(wnm_chains)} wnm chains"))

    ok = all(c.prod(c.prod(x, x), x) == c.prod(x, x)
             for c in wnm_chains for x in c.elements())
    rows.append(_row("wnm chains satisfy x^3 = x^2", ok))

    ok = all(alg.delta_of(c, x) == (c.top if x == c.top else 0)
             for c in dp_chains for x in c.elements())
    for axiom in alg.delta_axioms():
        ok = ok and all(alg.holds(axiom, c).ok for c in dp_chains)
    rows.append(_row("projection axioms", ok, "five axioms, chains of sizes 2..7"))

    ok = all(
        alg.discriminator(c, x, y, z) == (z if x == y else x)
        for c in dp_chains
        for x in c.elements() for y in c.elements() for z in c.elements())
    rows.append(_row("discriminator two-case law", ok, "chains of sizes 2..7"))

    luk = _lukasiewicz3()
    dp3 = alg.DPChain(3)
    ok = (luk.product_table == tuple(tuple(dp3.prod(x, y) for y in range(3))
                                     for x in range(3))
          and luk.residuum_table == tuple(tuple(dp3.imp(x, y) for y in range(3))
                                          for x in range(3)))
    rows.append(_row("3-element chain is the 3-valued Lukasiewicz chain", ok))

    rng = random.Random(20240317)
    names = ["x", "y", "z"]
    ok = True
    for _ in range(formula_budget):
        f = random_formula(rng, names, rng.randrange(1, 5))
        k = len(variables(f))
        fast = alg.is_theorem(f).ok
        slow = all(alg.holds(f, alg.DPChain(n)).ok for n in range(2, k + 4))
        if fast != slow:
            ok = False
            break
    rows.append(_row("decision procedure agrees with full sweep", ok,
                     f"{formula_budget} random formulas"))

    ok = all(alg.find_embedding(alg.DPChain(m), alg.DPChain(n)) is not None
             for m in range(2, 7) for n in range(m, 7))
    ok = ok and all(alg.find_embedding(alg.DPChain(n), alg.DPChain(m)) is None
                    for m in range(2, 7) for n in range(m + 1, 7))
    rows.append(_row("embeddings go from smaller to larger only", ok))

    return rows


def _small_objects(max_instances: int, max_length: int,
                   include_empty: bool = False) -> list[du.MultisetObj]:
    out = []
    lengths = range(1, max_length + 1)
    for count in range(0 if include_empty else 1, max_instances + 1):
        for combo in itertools.combinations_with_replacement(lengths, count):
            out.append(du.MultisetObj.from_lengths(combo))
    return out


def duality_suite() -> list[CheckRow]:
    rows: list[CheckRow] = []

    objs = _small_objects(3, 4, include_empty=True)
    ok = all(du.product(c, d) == du.product(d, c)
             for c in objs for d in objs)
    rows.append(_row("product is commutative", ok, f"{len(objs)} objects"))

    small = _small_objects(2, 3, include_empty=True)
    ok = all(du.product(du.product(c, d), e) == du.product(c, du.product(d, e))
             for c in small for d in small for e in small)
    rows.append(_row("product is associative", ok, f"{len(small)} objects"))

    ok = all(du.product(c, du.coproduct(d, e))
             == du.coproduct(du.product(c, d), du.product(c, e))
             for c in small for d in small for e in small)
    rows.append(_row("product distributes over coproduct", ok))

    nonempty = _small_objects(2, 3)
    ok = all(du.morphism_count(c, du.TERMINAL) == 1
             and len(du.enumerate_morphisms(c, du.TERMINAL)) == 1
             for c in nonempty)
    ok = ok and all(du.product(c, du.TERMINAL) == c for c in objs)
    rows.append(_row("the one-element chain is terminal", ok))

    ok = all(du.morphism_count(x, du.product(a, b))
             == du.morphism_count(x, a) * du.morphism_count(x, b)
             for x in nonempty for a in nonempty for b in nonempty)
    rows.append(_row("hom counts into a product multiply", ok,
                     f"{len(nonempty)}^3 triples"))

    ok = all(du.morphism_count(c, d) == len(du.enumerate_morphisms(c, d))
             for c in nonempty for d in nonempty)
    rows.append(_row("closed-form morphism count matches enumeration", ok))

    ok = True
    for c in nonempty:
        for d in nonempty:
            mc = du.morphism_count(c, d)
            homs = alg.enumerate_homomorphisms(du.mc_inverse(d), du.mc_inverse(c))
            if mc != len(homs):
                ok = False
    rows.append(_row("dual hom counts match algebra homomorphisms", ok,
                     f"{len(nonempty)}^2 object pairs"))

    ok = all(du.height(du.coproduct(c, d)) == max(du.height(c), du.height(d))
             for c in nonempty for d in nonempty)
    rows.append(_row("height of a coproduct is the max", ok))

    ok = True
    for c in nonempty:
        for d in nonempty:
            for f in du.enumerate_morphisms(c, d):
                src = c.lengths()
                tgt = d.lengths()
                if any(tgt[j] > src[i] for i, (j, _) in enumerate(f.components)):
                    ok = False
                if set(j for j, _ in f.components) == set(range(len(tgt))):
                    if du.height(d) > du.height(c):
                        ok = False
    rows.append(_row("surjections never raise height", ok,
                     "componentwise, and object-level when every target is hit"))

    ok = all(du.height(du.power(du.MultisetObj.from_lengths([n - 1]), k)) <= n - 1
             for n in (2, 3) for k in range(1, 4))
    ok = ok and all(
        alg.subvariety_index(du.mc_inverse(c)) == du.height(c) + 1
        for c in nonempty)
    rows.append(_row("height bounds the generated subvariety", ok,
                     "powers of {1} and {2}; factor sizes elsewhere"))

    ok = all(du.kx3_identity_check(k) for k in range(2, 13))
    rows.append(_row("product of {k} with {3} matches the closed form", ok))

    ok = all(du.tr(c) == [(1, l - 1) for l in c.lengths()] for c in nonempty)
    rows.append(_row("forest representation drops each maximum", ok))

    ok = all(
        du.mc_inverse(du.coproduct(c, d)).factors
        == du.mc_inverse(du.coproduct(d, c)).factors
        and sorted(f.size for f in du.mc_inverse(du.coproduct(c, d)).factors)
        == sorted([f.size for f in du.mc_inverse(c).factors]
                  + [f.size for f in du.mc_inverse(d).factors])
        for c in nonempty for d in nonempty)
    rows.append(_row("coproduct dualizes to a product of algebras", ok))

    return rows


def free_suite() -> list[CheckRow]:
    rows: list[CheckRow] = []

    duals = {k: du.free_dual(k) for k in range(7)}
    ok = all(duals[k] == du.free_dual_closed_form(k) == du.free_dual_recurrence(k)
             for k in range(7))
    rows.append(_row("power, closed form and recurrence agree", ok, "k = 0..6"))

    ok = True
    for k in range(7):
        value = 1
        for l, m in duals[k].chains:
            value *= (l + 1) ** m
        if value != du.free_cardinality(k):
            ok = False
    rows.append(_row("cardinality matches the product of factors", ok, "k = 0..6"))

    ok = (duals[1] == du.MultisetObj.from_lengths([1, 1, 2, 3])
          and du.free_cardinality(1) == 48
          and duals[0] == du.TERMINAL
          and du.free_cardinality(0) == 2)
    rows.append(_row("one generator gives 48 elements with dual {1,1,2,3}", ok))

    ok = (alg.free_algebra_bruteforce(0).count == 2
          and alg.free_algebra_bruteforce(1).count == 48)
    rows.append(_row("brute-force term closure agrees", ok, "k = 0 and 1"))

    ok = all(du.free_coefficient(k, k + 3) == 0 for k in range(7))
    rows.append(_row("coefficients vanish above the variable count", ok))

    return rows


SUITES = {
    "axioms": axioms_suite,
    "duality": duality_suite,
    "free": free_suite,
}


def run_suite(name: str) -> list[CheckRow]:
    if name == "all":
        rows: list[CheckRow] = []
        for key in ("axioms", "duality", "free"):
            rows.extend(SUITES[key]())
        return rows
    try:
        return SUITES[name]()
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
