"""Concrete finite groups used as vertex, singular and branch groups.

A ``GroupSpec`` wraps one of five kinds: trivial, cyclic, symmetric,
permutation (given generating permutations) or presented (given a
finite presentation).  Every kind certifies its order by exhaustive
closure at construction time, capped by ``Limits.order_bound``, and
derives a canonical presentation:

* trivial/cyclic/symmetric carry the obvious presentations;
* a permutation group gets the spanning-tree presentation read off its
  Cayley graph, which presents the group on the given generators;
* a presented group keeps the user's presentation, and its elements are
  realised as the cosets of the trivial subgroup via a bounded
  coset-table closure.

The canonical presentation is what the assembly layer splices into
larger presentations; the concrete elements are what homomorphism
validation and the cover oracle evaluate against.
"""

from functools import cached_property

from .errors import InputError, ResourceError
from .limits import DEFAULT_LIMITS
from .perms import compose, identity, invert
from .presentation import Presentation
from .words import GeneratorSymbol, Word


def _closure(generators, bound):
    """BFS closure of permutation generators; deterministic order."""
    d = len(generators[0])
    start = identity(d)
    seen = {start: 0}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for el in frontier:
            for g in generators:
                t = compose(el, g)
                if t not in seen:
                    if len(order) >= bound:
                        raise ResourceError(
                            f"group closure exceeds order bound {bound}")
                    seen[t] = len(order)
                    order.append(t)
                    nxt.append(t)
        frontier = nxt
    return tuple(order)


def _cayley_presentation(elements, gen_elements, gen_names):
    """Spanning-tree presentation of a finite group on given generators."""
    index = {el: i for i, el in enumerate(elements)}
    syms = [GeneratorSymbol("", n) for n in gen_names]
    d = len(elements[0]) if elements else 0
    start = identity(d)
    words = {index[start]: Word.identity()}
    queue = [index[start]]
    relators = []
    seen_rel = set()
    while queue:
        nxt = []
        for i in queue:
            el = elements[i]
            for g, s in zip(gen_elements, syms):
                j = index[compose(el, g)]
                if j not in words:
                    words[j] = words[i] * Word.gen(s)
                    nxt.append(j)
        queue = nxt
    for i, el in enumerate(elements):
        for g, s in zip(gen_elements, syms):
            j = index[compose(el, g)]
            step = words[i] * Word.gen(s) * words[j].inverse()
            r = step.cyclically_reduced()
            if r.is_identity():
                continue
            if r.letters in seen_rel:
                continue
            seen_rel.add(r.letters)
            relators.append(r)
    return Presentation(syms, relators)


def _expand_relator(word, gen_index):
    """Relator as a flat sequence of signed 1-based generator numbers."""
    out = []
    for s, e in word.letters:
        g = gen_index[s] + 1
        step = g if e > 0 else -g
        out.extend([step] * abs(e))
    return tuple(out)


def _coset_closure(presentation, cap):
    """Exhaustive closure of a finitely presented group.

    Builds the action of the group on the cosets of the trivial
    subgroup (its regular action) by scan-and-fill over the relators
    with coincidence merging.  Raises ``ResourceError`` when more than
    ``cap`` cosets get defined, which is the only way the closure of an
    infinite group can end.

    Returns ``(order, action)`` where ``action[c][g]`` is the coset
    reached from ``c`` by generator ``g`` (columns ``2g`` forward,
    ``2g + 1`` inverse).
    """
    gens = presentation.generators
    n_gens = len(gens)
    if n_gens == 0:
        return 1, [[]]
    used = set()
    for r in presentation.relators:
        used.update(r.symbols())
    missing = [g for g in gens if g not in used]
    if missing:
        raise ResourceError(
            "presented group has a relator-free generator and is infinite: "
            + ", ".join(str(g) for g in missing))

    gen_index = {g: i for i, g in enumerate(gens)}
    words = [_expand_relator(r, gen_index) for r in presentation.relators]
    ncols = 2 * n_gens

    def col(letter):
        return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1

    table = [[None] * ncols]
    rep = [0]
    pending = []

    def find(c):
        while rep[c] != c:
            rep[c] = rep[rep[c]]
            c = rep[c]
        return c

    def new_coset():
        if len(table) >= cap:
            raise ResourceError(
                f"coset closure exceeded {cap} cosets; "
                "the presented group is too large or infinite")
        table.append([None] * ncols)
        rep.append(len(table) - 1)
        return len(table) - 1

    def set_entry(c, cc, d):
        """Record c --col cc--> d (both representatives)."""
        e = table[c][cc]
        if e is not None:
            e = find(e)
            if e != d:
                pending.append((e, d))
            return
        table[c][cc] = d
        back = table[d][cc ^ 1]
        if back is None:
            table[d][cc ^ 1] = c
        else:
            back = find(back)
            if back != c:
                pending.append((back, c))

    def merge_all():
        while pending:
            a, b = pending.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            rep[b] = a
            row = table[b]
            for cc in range(ncols):
                e = row[cc]
                if e is not None:
                    set_entry(find(a), cc, find(e))

    def scan_and_fill(c, word):
        while True:
            c = find(c)
            f, i = c, 0
            n = len(word)
            while i < n:
                nxt = table[f][col(word[i])]
                if nxt is None:
                    break
                f = find(nxt)
                i += 1
            if i == n:
                if f != c:
                    pending.append((f, c))
                    merge_all()
                return
            b, j = c, n
            while j > i:
                nxt = table[b][col(word[j - 1]) ^ 1]
                if nxt is None:
                    break
                b = find(nxt)
                j -= 1
            if j == i:
                if f != b:
                    pending.append((f, b))
                    merge_all()
                return
            if j == i + 1:
                set_entry(f, col(word[i]), b)
                merge_all()
                return
            d = new_coset()
            set_entry(f, col(word[i]), d)
            merge_all()

    changed = True
    while changed:
        changed = False
        before_defs = len(table)
        before_live = sum(1 for c in range(len(table)) if find(c) == c)
        c = 0
        while c < len(table):
            if find(c) != c:
                c += 1
                continue
            for w in words:
                if find(c) != c:
                    break
                scan_and_fill(c, w)
            if find(c) == c:
                for cc in range(ncols):
                    if find(c) != c:
                        break
                    if table[c][cc] is None:
                        d = new_coset()
                        set_entry(c, cc, d)
                        merge_all()
            c += 1
        after_live = sum(1 for c2 in range(len(table)) if find(c2) == c2)
        if len(table) != before_defs or after_live != before_live:
            changed = True

    live = [c for c in range(len(table)) if find(c) == c]
    renum = {c: i for i, c in enumerate(live)}
    action = [[renum[find(table[c][cc])] for cc in range(ncols)] for c in live]
    return len(live), action


class GroupSpec:
    """A finite concrete group plus its canonical presentation."""

    def __init__(self, kind, *, order_k=None, degree=None,
                 perm_generators=None, presentation=None,
                 limits=DEFAULT_LIMITS):
        self.kind = kind
        self._order_k = order_k
        self._degree = degree
        self._perm_generators = perm_generators
        self._presentation = presentation
        self._limits = limits
        self._realize(limits)

    # -- constructors ---------------------------------------------------

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def cyclic(cls, k, limits=DEFAULT_LIMITS):
        if k < 1:
            raise InputError("cyclic group order must be >= 1")
        return cls("cyclic", order_k=k, limits=limits)

    @classmethod
    def symmetric(cls, k, limits=DEFAULT_LIMITS):
        if k < 0:
            raise InputError("symmetric group degree must be >= 0")
        return cls("symmetric", degree=k, limits=limits)

    @classmethod
    def permutation(cls, degree, generators, limits=DEFAULT_LIMITS):
        gens = tuple(tuple(g) for g in generators)
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise InputError(f"not a permutation of 0..{degree - 1}: {g}")
        if not gens:
            raise InputError("permutation kind needs at least one generator")
        return cls("permutation", degree=degree, perm_generators=gens,
                   limits=limits)

    @classmethod
    def presented(cls, presentation, limits=DEFAULT_LIMITS):
        return cls("presented", presentation=presentation, limits=limits)

    # -- realisation ----------------------------------------------------

    def _realize(self, limits):
        bound = limits.order_bound
        kind = self.kind
        if kind == "trivial":
            self.order = 1
        elif kind == "cyclic":
            self.order = self._order_k
        elif kind == "symmetric":
            order = 1
            for i in range(2, self._degree + 1):
                order *= i
            self.order = order
        elif kind == "permutation":
            self._elements_cache = _closure(list(self._perm_generators), bound)
            self.order = len(self._elements_cache)
        elif kind == "presented":
            cap = max(10000, 8 * bound)
            order, action = _coset_closure(self._presentation, cap)
            self._coset_action = action
            self.order = order
        else:
            raise InputError(f"unknown group kind: {kind!r}")
        if self.order > bound:
            raise ResourceError(
                f"group order {self.order} exceeds bound {bound}")

    # -- canonical presentation and elements -----------------------------

    @cached_property
    def canonical_presentation(self):
        kind = self.kind
        if kind == "trivial":
            return Presentation([], [])
        if kind == "cyclic":
            g = GeneratorSymbol("", "g")
            return Presentation([g], [Word.gen(g, self._order_k)])
        if kind == "symmetric":
            k = self._degree
            if k <= 1:
                return Presentation([], [])
            syms = [GeneratorSymbol("", f"s{i}") for i in range(1, k)]
            rels = []
            for i, s in enumerate(syms):
                rels.append(Word.gen(s, 2))
            for i in range(len(syms) - 1):
                braid = (Word.gen(syms[i]) * Word.gen(syms[i + 1])) ** 3
                rels.append(braid)
            for i in range(len(syms)):
                for j in range(i + 2, len(syms)):
                    rels.append((Word.gen(syms[i]) * Word.gen(syms[j])) ** 2)
            return Presentation(syms, rels)
        if kind == "permutation":
            names = [f"g{i + 1}" for i in range(len(self._perm_generators))]
            return _cayley_presentation(self.elements,
                                        list(self._perm_generators), names)
        return self._presentation

    @cached_property
    def elements(self):
        kind = self.kind
        if kind == "trivial":
            return (identity(0),)
        if kind == "cyclic":
            k = self._order_k
            cyc = tuple((i + 1) % k for i in range(k))
            return _closure([cyc], self._limits.order_bound)
        if kind == "symmetric":
            k = self._degree
            if k <= 1:
                return (identity(k),)
            gens = [self._adjacent_transposition(i) for i in range(k - 1)]
            return _closure(gens, self._limits.order_bound)
        if kind == "permutation":
            return self._elements_cache
        return tuple(range(self.order))

    def _adjacent_transposition(self, i):
        k = self._degree
        p = list(range(k))
        p[i], p[i + 1] = p[i + 1], p[i]
        return tuple(p)

    @cached_property
    def generator_elements(self):
        """Elements matching the canonical presentation's generators."""
        kind = self.kind
        if kind == "trivial":
            return ()
        if kind == "cyclic":
            k = self._order_k
            return (tuple((i + 1) % k for i in range(k)),)
        if kind == "symmetric":
            if self._degree <= 1:
                return ()
            return tuple(self._adjacent_transposition(i)
                         for i in range(self._degree - 1))
        if kind == "permutation":
            return tuple(self._perm_generators)
        return tuple(self._coset_action[0][2 * i]
                     for i in range(len(self._presentation.generators)))

    @property
    def identity_element(self):
        if self.kind == "presented":
            return 0
        return self.elements[0]

    def multiply(self, a, b):
        if self.kind == "presented":
            c = a
            for letter in self._element_letters[b]:
                cc = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
                c = self._coset_action[c][cc]
            return c
        return compose(a, b)

    def invert_element(self, a):
        if self.kind == "presented":
            c = 0
            for letter in reversed(self._element_letters[a]):
                cc = 2 * (letter - 1) + 1 if letter > 0 else 2 * (-letter - 1)
                c = self._coset_action[c][cc]
            return c
        return invert(a)

    def element_order(self, a):
        e = self.identity_element
        x, n = a, 1
        while x != e:
            x = self.multiply(x, a)
            n += 1
        return n

    @cached_property
    def _element_letters(self):
        """For presented groups: a defining letter sequence per element."""
        assert self.kind == "presented"
        n_gens = len(self._presentation.generators)
        letters = {0: ()}
        queue = [0]
        while queue:
            nxt = []
            for c in queue:
                for i in range(n_gens):
                    for sign, cc in ((1, 2 * i), (-1, 2 * i + 1)):
                        t = self._coset_action[c][cc]
                        if t not in letters:
                            step = (i + 1) * sign
                            letters[t] = letters[c] + (step,)
                            nxt.append(t)
            queue = nxt
        return [letters[i] for i in range(self.order)]

    @cached_property
    def _element_words(self):
        """A word over canonical generators for every element (BFS)."""
        pres = self.canonical_presentation
        syms = pres.generators
        gens = self.generator_elements
        words = {self.identity_element: Word.identity()}
        queue = [self.identity_element]
        while queue:
            nxt = []
            for el in queue:
                for g, s in zip(gens, syms):
                    for target, exp in ((self.multiply(el, g), 1),
                                        (self.multiply(el, self.invert_element(g)), -1)):
                        if target not in words:
                            words[target] = words[el] * Word.gen(s, exp)
                            nxt.append(target)
            queue = nxt
        return words

    def element_word(self, el):
        return self._element_words[el]

    def evaluate(self, word):
        """Evaluate a word over canonical generators to a group element."""
        images = dict(zip(self.canonical_presentation.generators,
                          self.generator_elements))
        acc = self.identity_element
        for s, e in word.letters:
            try:
                g = images[s]
            except KeyError:
                raise InputError(f"unknown generator {s} for {self}") from None
            if e < 0:
                g, e = self.invert_element(g), -e
            for _ in range(e):
                acc = self.multiply(acc, g)
        return acc

    # -- identity ---------------------------------------------------------

    def descriptor(self):
        if self.kind == "cyclic":
            return ("cyclic", self._order_k)
        if self.kind == "symmetric":
            return ("symmetric", self._degree)
        if self.kind == "permutation":
            return ("permutation", self._degree, self._perm_generators)
        if self.kind == "presented":
            return ("presented", self._presentation.key())
        return ("trivial",)

    def __eq__(self, other):
        return (isinstance(other, GroupSpec)
                and self.descriptor() == other.descriptor())

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        if self.kind == "cyclic":
            return f"C{self._order_k}"
        if self.kind == "symmetric":
            return f"S{self._degree}"
        if self.kind == "permutation":
            return f"Perm(deg={self._degree}, order={self.order})"
        if self.kind == "presented":
            return f"Presented(order={self.order})"
        return "1"


def element_orders(spec):
    return [spec.element_order(el) for el in spec.elements]
