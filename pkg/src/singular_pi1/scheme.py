"""The combinatorial model of a singular scheme.

A ``SchemeConfig`` records the normalisation's components, the
connected components of the singular locus, and the branches lying over
them, together with the groups attached to each piece and the two
attaching homomorphisms per branch.  Everything downstream (assembly of
the fundamental group, the cover oracle, the planning command) consumes
this structure; the geometry it abstracts is the input of record and is
never recomputed.

The incidence multigraph has the components and singular pieces as
vertices and one edge per branch.  Splitting happens along the patches
``build_patch(cfg, j)``: the union of components meeting singular piece
``j`` with the other singular pieces removed.
"""

from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError
from .groups import GroupSpec
from .homomorphism import Homo


@dataclass
class Component:
    id: str
    group: GroupSpec


@dataclass
class Singular:
    id: str
    group: GroupSpec


@dataclass
class Branch:
    id: str
    component: str
    singular: str
    group: GroupSpec
    psi: Homo   # into the component's group
    phi: Homo   # into the singular piece's group


@dataclass
class SchemeConfig:
    components: list
    singulars: list
    branches: list

    @property
    def n(self):
        return len(self.components)

    @property
    def m(self):
        return len(self.singulars)

    @property
    def m_tilde(self):
        return len(self.branches)

    def component(self, cid):
        for c in self.components:
            if c.id == cid:
                return c
        raise InputError(f"unknown component id: {cid!r}")

    def singular(self, sid):
        for s in self.singulars:
            if s.id == sid:
                return s
        raise InputError(f"unknown singular id: {sid!r}")

    def branches_of_singular(self, sid):
        return [b for b in self.branches if b.singular == sid]

    def branches_of_component(self, cid):
        return [b for b in self.branches if b.component == cid]

    def component_ids_meeting(self, sid):
        seen = []
        for b in self.branches:
            if b.singular == sid and b.component not in seen:
                seen.append(b.component)
        return seen


@dataclass
class SubConfig(SchemeConfig):
    """A sub-scheme produced by a patch/complement/union construction."""
    role: str = "patch"
    anchor: Optional[str] = None
    source: Optional[SchemeConfig] = field(default=None, compare=False)


@dataclass
class ValidationResult:
    ok: bool
    invariant: str = ""
    message: str = ""
    ids: tuple = ()

    def to_json(self):
        if self.ok:
            return {"ok": True}
        return {"ok": False, "invariant": self.invariant,
                "message": self.message, "ids": list(self.ids)}


def _fail(invariant, message, ids=()):
    return ValidationResult(False, invariant, message, tuple(ids))


def validate(cfg):
    """Check every structural invariant; report the first violation."""
    comp_ids = [c.id for c in cfg.components]
    sing_ids = [s.id for s in cfg.singulars]
    branch_ids = [b.id for b in cfg.branches]
    for name, ids in (("component", comp_ids), ("singular", sing_ids),
                      ("branch", branch_ids)):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            return _fail("unique-ids", f"duplicate {name} ids", dupes)

    if cfg.n < 1:
        return _fail("component-count", "at least one component is required")

    comp_set, sing_set = set(comp_ids), set(sing_ids)
    for b in cfg.branches:
        if b.component not in comp_set:
            return _fail("resolve", f"branch {b.id} references unknown "
                         f"component {b.component}", [b.id])
        if b.singular not in sing_set:
            return _fail("resolve", f"branch {b.id} references unknown "
                         f"singular piece {b.singular}", [b.id])

    for b in cfg.branches:
        if b.psi.source != b.group:
            return _fail("branch-maps", f"branch {b.id}: psi does not start "
                         "at the branch group", [b.id])
        if b.phi.source != b.group:
            return _fail("branch-maps", f"branch {b.id}: phi does not start "
                         "at the branch group", [b.id])
        if b.psi.target != cfg.component(b.component).group:
            return _fail("branch-maps", f"branch {b.id}: psi does not land "
                         "in the component group", [b.id])
        if b.phi.target != cfg.singular(b.singular).group:
            return _fail("branch-maps", f"branch {b.id}: phi does not land "
                         "in the singular group", [b.id])

    touched_sing = {b.singular for b in cfg.branches}
    for s in cfg.singulars:
        if s.id not in touched_sing:
            return _fail("singular-incidence",
                         f"singular piece {s.id} has no branch", [s.id])

    if cfg.n > 1:
        touched_comp = {b.component for b in cfg.branches}
        for c in cfg.components:
            if c.id not in touched_comp:
                return _fail("component-incidence",
                             f"component {c.id} has no branch", [c.id])

    if not (cfg.n == 1 and cfg.m == 0):
        ok, isolated = _connected(cfg)
        if not ok:
            return _fail("connected", "incidence graph is disconnected",
                         isolated)
    return ValidationResult(True)


def _connected(cfg):
    nodes = [("c", c.id) for c in cfg.components]
    nodes += [("s", s.id) for s in cfg.singulars]
    index = {v: i for i, v in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in cfg.branches:
        a = find(index[("c", b.component)])
        c = find(index[("s", b.singular)])
        if a != c:
            parent[c] = a
    roots = {find(i) for i in range(len(nodes))}
    if len(roots) <= 1:
        return True, ()
    main = find(index[nodes[0]])
    isolated = [f"{kind}:{vid}" for (kind, vid), i in index.items()
                if find(i) != main]
    return False, tuple(isolated)


def ensure_valid(cfg):
    result = validate(cfg)
    if not result.ok:
        raise InputError(f"invalid configuration ({result.invariant}): "
                         f"{result.message}")
    return cfg


def build_patch(cfg, singular_id):
    """Components meeting the given singular piece, that piece alone, and
    its branches."""
    ensure_valid(cfg)
    if cfg.m < 1:
        raise InputError("a regular configuration has no patches")
    sing = cfg.singular(singular_id)
    keep_comps = set(cfg.component_ids_meeting(singular_id))
    comps = [c for c in cfg.components if c.id in keep_comps]
    branches = [b for b in cfg.branches if b.singular == singular_id]
    return SubConfig(comps, [sing], branches,
                     role="patch", anchor=singular_id, source=cfg)


def build_patch_complement(cfg, singular_id):
    """All other singular pieces, the components meeting them, and their
    branches."""
    ensure_valid(cfg)
    if cfg.m < 2:
        raise InputError("a complement needs at least two singular pieces")
    cfg.singular(singular_id)
    sing = [s for s in cfg.singulars if s.id != singular_id]
    keep = {s.id for s in sing}
    branches = [b for b in cfg.branches if b.singular in keep]
    keep_comps = {b.component for b in branches}
    comps = [c for c in cfg.components if c.id in keep_comps]
    return SubConfig(comps, sing, branches,
                     role="complement", anchor=singular_id, source=cfg)


def build_union(cfg, singular_ids):
    """The union of the patches of the given singular pieces."""
    ensure_valid(cfg)
    keep = list(singular_ids)
    for sid in keep:
        cfg.singular(sid)
    keep_set = set(keep)
    sing = [s for s in cfg.singulars if s.id in keep_set]
    branches = [b for b in cfg.branches if b.singular in keep_set]
    keep_comps = {b.component for b in branches}
    comps = [c for c in cfg.components if c.id in keep_comps]
    return SubConfig(comps, sing, branches,
                     role="union", anchor=None, source=cfg)


def devissage_order(cfg):
    """A singular-piece order whose patch-union prefixes are connected.

    Greedy: start from the first declared piece, then repeatedly take
    the earliest declared piece whose patch shares a component with the
    union built so far.
    """
    ensure_valid(cfg)
    if cfg.m < 1:
        raise InputError("a regular configuration admits no ordering")
    comps_of = {s.id: set(cfg.component_ids_meeting(s.id))
                for s in cfg.singulars}
    remaining = [s.id for s in cfg.singulars]
    order = [remaining.pop(0)]
    covered = set(comps_of[order[0]])
    while remaining:
        pick = None
        for sid in remaining:
            if comps_of[sid] & covered:
                pick = sid
                break
        if pick is None:
            raise InputError("incidence graph is disconnected")
        remaining.remove(pick)
        order.append(pick)
        covered |= comps_of[pick]
    for r in range(1, len(order) + 1):
        prefix = build_union(cfg, order[:r])
        ok, _ = _connected(prefix)
        assert ok, "prefix union unexpectedly disconnected"
    return tuple(order)


def check_order(cfg, order):
    """Validate a caller-chosen dévissage order."""
    ensure_valid(cfg)
    if sorted(order) != sorted(s.id for s in cfg.singulars):
        raise InputError("order must be a permutation of the singular ids")
    for r in range(1, len(order) + 1):
        prefix = build_union(cfg, list(order[:r]))
        ok, _ = _connected(prefix)
        if not ok:
            raise InputError(
                f"prefix {list(order[:r])} of the given order is disconnected")
    return tuple(order)


@dataclass
class PieceDescriptor:
    """One connected piece of the overlap of a patch and its complement.

    Each piece is dense open in exactly one component; its group is the
    component's group and both attaching maps are the identity.
    """
    component_id: str
    group: GroupSpec


@dataclass
class IntersectionReport:
    S: tuple                 # components in both sides
    pieces: list             # one descriptor per element of S
    S1: tuple                # components of the patch
    S2: tuple                # components of the complement
    m_tilde_1: int           # branches over the split piece
    m_tilde_2: int           # branches over the rest
    d: int                   # number of overlap pieces

    def to_json(self):
        return {"S": list(self.S), "S1": list(self.S1), "S2": list(self.S2),
                "d": self.d, "m_tilde_1": self.m_tilde_1,
                "m_tilde_2": self.m_tilde_2}


def intersection(cfg, patch, complement):
    """Describe the overlap of a patch/complement pair of ``cfg``."""
    if not isinstance(patch, SubConfig) or patch.role != "patch":
        raise InputError("first argument must be a patch")
    if not isinstance(complement, SubConfig) or complement.role != "complement":
        raise InputError("second argument must be a complement")
    if patch.anchor != complement.anchor:
        raise InputError("patch and complement split at different pieces")
    if patch.source is not complement.source:
        raise InputError("patch and complement come from different "
                         "configurations")
    s1 = tuple(c.id for c in patch.components)
    s2 = tuple(c.id for c in complement.components)
    s2_set = set(s2)
    overlap = tuple(cid for cid in s1 if cid in s2_set)
    pieces = [PieceDescriptor(cid, cfg.component(cid).group)
              for cid in overlap]
    m1 = len(patch.branches)
    m2 = cfg.m_tilde - m1
    assert m2 == len(complement.branches)
    return IntersectionReport(overlap, pieces, s1, s2, m1, m2, len(overlap))


def free_rank(cfg):
    """``m_tilde - m - n + 1``, cross-checked against the cycle rank of
    the incidence multigraph."""
    ensure_valid(cfg)
    rank = cfg.m_tilde - cfg.m - cfg.n + 1
    # independent computation: edges minus spanning-tree edges
    nodes = [("c", c.id) for c in cfg.components]
    nodes += [("s", s.id) for s in cfg.singulars]
    index = {v: i for i, v in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_edges = 0
    for b in cfg.branches:
        a = find(index[("c", b.component)])
        c = find(index[("s", b.singular)])
        if a != c:
            parent[c] = a
            tree_edges += 1
    cycle_rank = cfg.m_tilde - tree_edges
    assert cycle_rank == rank, "rank formula disagrees with cycle rank"
    return rank
