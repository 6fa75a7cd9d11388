"""Shared helpers: independent brute-force oracles and config builders.

The oracles here deliberately avoid the library's counting machinery:
they enumerate full assignment tuples with direct permutation algebra,
so a bug in the backtracking engine cannot hide behind itself.
"""

import itertools
import json
from fractions import Fraction
from importlib import resources
from math import factorial

from singular_pi1 import (Branch, Component, GroupSpec, Homo, SchemeConfig,
                          Singular, Word, parse_scheme_config)
from singular_pi1.perms import compose, identity, invert


def all_perms(d):
    return list(itertools.permutations(range(d)))


def eval_word_brute(word, assignment, d):
    acc = identity(d)
    for s, e in word.letters:
        p = assignment[s]
        if e < 0:
            p, e = invert(p), -e
        for _ in range(e):
            acc = compose(acc, p)
    return acc


def brute_count_homs(p, d):
    """Full product scan over all generator images; no pruning."""
    perms = all_perms(d)
    ident = identity(d)
    total = 0
    for images in itertools.product(perms, repeat=len(p.generators)):
        asg = dict(zip(p.generators, images))
        if all(eval_word_brute(r, asg, d) == ident for r in p.relators):
            total += 1
    return total


def is_transitive(images, d):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    classes = d
    for p in images:
        for i in range(d):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
                classes -= 1
    return classes == 1


def brute_count_transitive_homs(p, d):
    perms = all_perms(d)
    ident = identity(d)
    total = 0
    for images in itertools.product(perms, repeat=len(p.generators)):
        asg = dict(zip(p.generators, images))
        if not all(eval_word_brute(r, asg, d) == ident for r in p.relators):
            continue
        if is_transitive(images, d):
            total += 1
    return total


def count_order_dividing(d, k):
    """Number of elements of Sym(d) whose k-th power is the identity."""
    ident = identity(d)
    total = 0
    for p in all_perms(d):
        acc = ident
        for _ in range(k):
            acc = compose(acc, p)
        if acc == ident:
            total += 1
    return total


# -- explicit orbit enumeration for the groupoid cardinality ------------

def _datum_key(datum):
    return (tuple(sorted((k, v) for k, v in datum.component_actions.items())),
            tuple(sorted((k, v) for k, v in datum.singular_actions.items())),
            tuple(sorted(datum.branch_bijections.items())))


def orbit_groupoid_cardinality(cfg, d):
    """Sum of 1/|Aut| over isomorphism classes, by explicit orbits.

    The relabeling group Sym(d)^(n+m) acts on rigid data; orbits are
    isomorphism classes and the stabilizer of a representative is its
    automorphism group.
    """
    from singular_pi1 import iter_descent_data

    data = {}
    for datum in iter_descent_data(cfg, d):
        data[_datum_key(datum)] = datum
    comp_ids = [c.id for c in cfg.components]
    sing_ids = [s.id for s in cfg.singulars]
    branch_info = [(b.id, b.component, b.singular) for b in cfg.branches]
    perms = all_perms(d)
    group_order = factorial(d) ** (len(comp_ids) + len(sing_ids))

    def act(labels, datum):
        comp_g = dict(zip(comp_ids, labels[:len(comp_ids)]))
        sing_g = dict(zip(sing_ids, labels[len(comp_ids):]))

        def conj(p, g):
            return compose(compose(invert(g), p), g)

        new_comp = {cid: tuple(conj(p, comp_g[cid]) for p in ps)
                    for cid, ps in datum.component_actions.items()}
        new_sing = {sid: tuple(conj(p, sing_g[sid]) for p in ps)
                    for sid, ps in datum.singular_actions.items()}
        new_branch = {}
        for bid, cid, sid in branch_info:
            lam = datum.branch_bijections[bid]
            new_branch[bid] = compose(compose(invert(comp_g[cid]), lam),
                                      sing_g[sid])
        return (tuple(sorted(new_comp.items())),
                tuple(sorted(new_sing.items())),
                tuple(sorted(new_branch.items())))

    remaining = set(data)
    total = Fraction(0)
    labels_space = list(itertools.product(perms,
                                          repeat=len(comp_ids) + len(sing_ids)))
    while remaining:
        seed = next(iter(remaining))
        datum = data[seed]
        orbit = set()
        stab = 0
        for labels in labels_space:
            image = act(labels, datum)
            orbit.add(image)
            if image == seed:
                stab += 1
        assert orbit <= set(data), "action left the enumerated set"
        remaining -= orbit
        assert len(orbit) * stab == group_order
        total += Fraction(1, stab)
    return total


# -- configuration builders ---------------------------------------------

TRIV = GroupSpec.trivial()


def trivial_branch(bid, cid, sid, comp_group=TRIV, sing_group=TRIV):
    return Branch(bid, cid, sid, TRIV,
                  Homo.trivial(TRIV, comp_group),
                  Homo.trivial(TRIV, sing_group))


def nodal_config():
    return SchemeConfig(
        [Component("A", TRIV)], [Singular("P", TRIV)],
        [trivial_branch("b1", "A", "P"), trivial_branch("b2", "A", "P")])


def theta_config():
    return SchemeConfig(
        [Component("A", TRIV), Component("B", TRIV)],
        [Singular("P", TRIV), Singular("Q", TRIV)],
        [trivial_branch("p1", "A", "P"), trivial_branch("p2", "B", "P"),
         trivial_branch("q1", "A", "Q"), trivial_branch("q2", "B", "Q")])


def chain_config():
    return SchemeConfig(
        [Component("A", TRIV), Component("B", TRIV), Component("C", TRIV)],
        [Singular("P", TRIV), Singular("Q", TRIV)],
        [trivial_branch("pa", "A", "P"), trivial_branch("pb", "B", "P"),
         trivial_branch("qb", "B", "Q"), trivial_branch("qc", "C", "Q")])


def load_corpus():
    """All bundled configurations, keyed by file stem."""
    out = {}
    root = resources.files("singular_pi1") / "configs"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            doc = json.loads(entry.read_text(encoding="utf-8"))
            out[entry.name[:-5]] = parse_scheme_config(doc)
    return out


def random_trivial_config(rng, max_components=4, max_singulars=4,
                          max_branches=7, vertex_groups=None):
    """A random valid configuration with trivial singular/branch groups.

    Builds a random bipartite spanning tree and sprinkles extra edges.
    """
    if vertex_groups is None:
        vertex_groups = [GroupSpec.trivial(), GroupSpec.cyclic(2),
                         GroupSpec.cyclic(3)]
    n = rng.randint(1, max_components)
    if n == 1 and rng.random() < 0.2:
        m = 0
    else:
        m = rng.randint(1, max_singulars)
    comps = [Component(f"X{i}", rng.choice(vertex_groups)) for i in range(n)]
    sings = [Singular(f"Z{j}", TRIV) for j in range(m)]
    branches = []
    if m > 0:
        # spanning tree over all n + m vertices, alternating sides
        count = 0

        def add_branch(ci, sj):
            nonlocal count
            comp = comps[ci]
            branches.append(trivial_branch(f"b{count}", comp.id,
                                           sings[sj].id, comp.group, TRIV))
            count += 1

        placed_c = [0]
        placed_s = []
        order = (["c"] * (n - 1) + ["s"] * m)
        rng.shuffle(order)
        for side in order:
            if side == "s" or not placed_s:
                # must attach a singular first if none placed yet
                if len(placed_s) < m:
                    sj = len(placed_s)
                    ci = rng.choice(placed_c)
                    add_branch(ci, sj)
                    placed_s.append(sj)
                    continue
            ci = len(placed_c)
            sj = rng.choice(placed_s)
            add_branch(ci, sj)
            placed_c.append(ci)
        extra = rng.randint(0, max(0, max_branches - len(branches)))
        for _ in range(extra):
            add_branch(rng.randrange(n), rng.randrange(m))
    cfg = SchemeConfig(comps, sings, branches)
    return cfg


def random_general_config(rng, max_components=3, max_singulars=3,
                          max_branches=6):
    """A random valid configuration with possibly non-trivial singular
    and branch groups and non-trivial attaching maps."""
    from singular_pi1 import standard_hom

    comp_groups = [GroupSpec.trivial(), GroupSpec.cyclic(2),
                   GroupSpec.cyclic(3), GroupSpec.symmetric(3)]
    sing_groups = [GroupSpec.trivial(), GroupSpec.cyclic(2)]
    branch_groups = [GroupSpec.trivial(), GroupSpec.cyclic(2)]
    n = rng.randint(1, max_components)
    m = rng.randint(1, max_singulars) if n > 1 or rng.random() > 0.1 else 0
    comps = [Component(f"X{i}", rng.choice(comp_groups)) for i in range(n)]
    sings = [Singular(f"Z{j}", rng.choice(sing_groups)) for j in range(m)]
    branches = []

    def add(ci, sj):
        group = rng.choice(branch_groups)
        psi = standard_hom(group, comps[ci].group) if rng.random() < 0.7 \
            else Homo.trivial(group, comps[ci].group)
        phi = standard_hom(group, sings[sj].group) if rng.random() < 0.7 \
            else Homo.trivial(group, sings[sj].group)
        branches.append(Branch(f"b{len(branches)}", comps[ci].id,
                               sings[sj].id, group, psi, phi))

    if m:
        placed_c, placed_s = [0], []
        order = ["c"] * (n - 1) + ["s"] * m
        rng.shuffle(order)
        for side in order:
            if (side == "s" or not placed_s) and len(placed_s) < m:
                sj = len(placed_s)
                add(rng.choice(placed_c), sj)
                placed_s.append(sj)
            else:
                ci = len(placed_c)
                add(ci, rng.choice(placed_s))
                placed_c.append(ci)
        room = max_branches - len(branches)
        for _ in range(rng.randint(0, room) if room > 0 else 0):
            add(rng.randrange(n), rng.randrange(m))
    return SchemeConfig(comps, sings, branches)


def random_presentation(rng, max_gens=4, max_relators=4, max_len=6):
    from singular_pi1 import Presentation, sym

    n = rng.randint(1, max_gens)
    gens = [sym(ch) for ch in "abcd"[:n]]
    relators = []
    for _ in range(rng.randint(0, max_relators)):
        length = rng.randint(1, max_len)
        letters = [(rng.choice(gens), rng.choice((1, -1)))
                   for _ in range(length)]
        relators.append(Word(tuple(letters)))
    return Presentation(gens, relators)
