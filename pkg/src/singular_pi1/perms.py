"""Integer-indexed arithmetic for the symmetric group Sym({0..d-1}).

A permutation is a tuple mapping position to image.  Composition is read
left to right: ``compose(p, q)`` applies ``p`` first, then ``q``.  The
hot loops of hom counting never touch tuples; they work with indices
into a cached ``PermTable`` whose multiplication and inverse tables turn
word evaluation into plain list lookups.
"""

import itertools
from functools import lru_cache


def compose(p, q):
    """Apply ``p`` first, then ``q``."""
    return tuple(q[x] for x in p)


def invert(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity(d):
    return tuple(range(d))


def perm_order(p):
    e = identity(len(p))
    q, n = p, 1
    while q != e:
        q = compose(q, p)
        n += 1
    return n


class PermTable:
    """Full multiplication/inverse tables for Sym(d)."""

    def __init__(self, d):
        self.degree = d
        self.perms = tuple(itertools.permutations(range(d)))
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.size = len(self.perms)
        self.identity = self.index[identity(d)]
        self.mul = tuple(
            tuple(self.index[compose(p, q)] for q in self.perms)
            for p in self.perms
        )
        self.inv = tuple(self.index[invert(p)] for p in self.perms)

    def power(self, i, e):
        if e < 0:
            i, e = self.inv[i], -e
        acc = self.identity
        row_mul = self.mul
        for _ in range(e):
            acc = row_mul[acc][i]
        return acc


@lru_cache(maxsize=None)
def table(d):
    return PermTable(d)
