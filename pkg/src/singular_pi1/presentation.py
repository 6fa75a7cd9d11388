"""Finite presentations and the constructions that combine them.

A presentation is an ordered generator list plus a list of relators.
Relators are stored cyclically reduced; empty relators are dropped.  A
presentation with no relators denotes the free group on its generators.

The combination operations (free products, quotients by relations,
fibred coproducts) are the algebraic backbone of the whole package.
Internally each gets a ``*_with_maps`` variant that also returns the
symbol renamings, which the higher layers need to keep track of where a
generator of an ingredient ended up inside an assembly.
"""

from .errors import InputError
from .words import (GeneratorSymbol, Word, check_symbol, check_tag,
                    cyclic_key, rename, retag_symbol, substitute)


class Presentation:
    __slots__ = ("generators", "relators")

    def __init__(self, generators, relators=()):
        gens = tuple(check_symbol(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise InputError("duplicate generator symbols in presentation")
        declared = set(gens)
        rels = []
        for r in relators:
            if not isinstance(r, Word):
                r = Word(tuple(r))
            bad = r.symbols() - declared
            if bad:
                raise InputError(
                    f"relator uses undeclared generators: {sorted(map(str, bad))}")
            r = r.cyclically_reduced()
            if not r.is_identity():
                rels.append(r)
        self.generators = gens
        self.relators = tuple(rels)

    def rank_if_free(self):
        return len(self.generators) if not self.relators else None

    def key(self):
        """Canonical namespace-independent fingerprint (for caching)."""
        index = {g: i for i, g in enumerate(self.generators)}
        rels = sorted(tuple((index[s], e) for s, e in r.letters)
                      for r in self.relators)
        return (len(self.generators), tuple(rels))

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def __repr__(self):
        gens = ", ".join(g.qualified() for g in self.generators)
        rels = ", ".join(repr(r) for r in self.relators)
        return f"<{gens} | {rels}>"


def free_presentation(rank, prefix="x", namespace=""):
    """The free group of the given rank on ``prefix1 .. prefixN``."""
    if rank < 0:
        raise InputError("rank must be non-negative")
    gens = [GeneratorSymbol(namespace, f"{prefix}{i + 1}") for i in range(rank)]
    return Presentation(gens, ())


def retag(p, tag):
    """Copy ``p`` into the fresh namespace ``tag``; return (copy, symbol map)."""
    check_tag(tag)
    mapping = {g: retag_symbol(g, tag) for g in p.generators}
    gens = tuple(mapping[g] for g in p.generators)
    rels = tuple(rename(r, mapping) for r in p.relators)
    return Presentation(gens, rels), mapping


def free_product_with_maps(parts, tags=None):
    """Free product of several presentations on disjoint namespaced copies.

    Returns the product and one symbol map per ingredient.
    """
    if tags is None:
        tags = [f"c{i + 1}" for i in range(len(parts))]
    if len(tags) != len(parts) or len(set(tags)) != len(tags):
        raise InputError("one distinct namespace tag per factor is required")
    gens, rels, maps = [], [], []
    for p, tag in zip(parts, tags):
        copy, mapping = retag(p, tag)
        gens.extend(copy.generators)
        rels.extend(copy.relators)
        maps.append(mapping)
    # fresh tags make collisions impossible; a failure here is a bug
    assert len(set(gens)) == len(gens), "namespace collision after re-tagging"
    return Presentation(gens, rels), maps


def free_product(p1, p2):
    """Free product of two presentations; hom counts multiply."""
    prod, _ = free_product_with_maps([p1, p2])
    return prod


def quotient_by_relations(p, pairs):
    """Impose ``lhs = rhs`` for each pair of words over ``p``'s generators."""
    declared = set(p.generators)
    new_relators = []
    for lhs, rhs in pairs:
        bad = (lhs.symbols() | rhs.symbols()) - declared
        if bad:
            raise InputError(
                f"relation uses undeclared generators: {sorted(map(str, bad))}")
        new_relators.append(lhs * rhs.inverse())
    return Presentation(p.generators, p.relators + tuple(new_relators))


def fibered_coproduct_with_maps(p1, p2, amalgam_pairs):
    """Free product of ``p1`` and ``p2`` glued along a list of word pairs.

    ``amalgam_pairs`` holds ``(word over p1, word over p2)`` images of a
    generating set of the amalgamating group; imposing the relation on
    generators suffices to impose it on the subgroup they generate.
    """
    prod, (m1, m2) = free_product_with_maps([p1, p2])
    pairs = [(rename(w1, m1), rename(w2, m2)) for w1, w2 in amalgam_pairs]
    return quotient_by_relations(prod, pairs), m1, m2


def fibered_coproduct(p1, p2, amalgam, psi, phi):
    """Fibred coproduct of ``p1`` and ``p2`` over the group ``amalgam``.

    ``psi`` and ``phi`` are homomorphisms from ``amalgam`` into ``p1``
    and ``p2`` respectively, given on the amalgam's generators.
    """
    src = amalgam.canonical_presentation
    if psi.source is not amalgam and psi.source != amalgam:
        raise InputError("psi does not start at the amalgamating group")
    if phi.source is not amalgam and phi.source != amalgam:
        raise InputError("phi does not start at the amalgamating group")
    if psi.target != p1:
        raise InputError("psi does not land in the first factor")
    if phi.target != p2:
        raise InputError("phi does not land in the second factor")
    pairs = [(psi.images[g], phi.images[g]) for g in src.generators]
    result, _, _ = fibered_coproduct_with_maps(p1, p2, pairs)
    return result


def _eliminable_syllable(relator):
    """Find a syllable ``(sym, ±1)`` whose symbol occurs once in the relator.

    Returns ``(symbol, replacement word)`` such that the relator is
    equivalent to ``symbol = replacement``, or ``None``.
    """
    letters = relator.letters
    for pos, (s, e) in enumerate(letters):
        if abs(e) != 1:
            continue
        if any(s2 == s for p2, (s2, _) in enumerate(letters) if p2 != pos):
            continue
        # rotate so the syllable sits first: relator ~ s^e * w
        w = Word(letters[pos + 1:] + letters[:pos])
        repl = w.inverse() if e == 1 else w
        return s, repl
    return None


def tietze_simplify(p):
    """Apply hom-count-preserving cleanup moves until none applies.

    Moves: free/cyclic reduction (done by the constructor), deletion of
    trivial and duplicate relators, and elimination of a generator that
    some relator expresses as a word in the others.  Generators not
    subject to elimination are kept even when unused; removing them
    would change hom counts.
    """
    gens = list(p.generators)
    relators = list(p.relators)
    while True:
        # drop trivial relators and cyclic duplicates
        seen = set()
        kept = []
        for r in relators:
            r = r.cyclically_reduced()
            if r.is_identity():
                continue
            k = cyclic_key(r)
            if k in seen:
                continue
            seen.add(k)
            kept.append(r)
        relators = kept

        eliminated = False
        for idx, r in enumerate(relators):
            found = _eliminable_syllable(r)
            if found is None:
                continue
            target, repl = found
            mapping = {target: repl}
            relators = [substitute(other, mapping).cyclically_reduced()
                        for j, other in enumerate(relators) if j != idx]
            gens.remove(target)
            eliminated = True
            break
        if not eliminated:
            break
    return Presentation(tuple(gens), tuple(relators))
