"""Assembly of the fundamental-group presentation of a configuration.

Three routes produce a ``Pi1Result``:

* ``pi1_connected_singular`` handles a single singular piece: one glued
  group per component over that piece, amalgamated over the shared
  copy of the singular piece's group;
* ``pi1_devissage`` handles the general case by splitting off the last
  patch of a dévissage order and recursing on the two connected halves,
  gluing them along the overlap pieces;
* ``pi1_closed_form`` is the shortcut available when all singular and
  branch groups are trivial: the coproduct of the component groups with
  a free group whose rank is the cycle rank of the incidence graph.

Results carry the raw lowered presentation, its simplification, an
expression tree, the derivation trace, and the locations of every
component group's generators inside the raw presentation (needed by the
recursion and by anyone composing further).
"""

from dataclasses import dataclass, field

from .errors import InputError
from .expression import (Atom, CoproductNode, FiberedCoproductNode,
                         FreeGroupNode, VKLegRef, VKNode, closure_witness)
from .limits import DEFAULT_LIMITS
from .presentation import (free_presentation, free_product_with_maps,
                           quotient_by_relations, retag, tietze_simplify)
from .scheme import (build_patch, build_patch_complement, check_order,
                     devissage_order, ensure_valid, free_rank, intersection)
from .vk import vk_assemble
from .words import Word


@dataclass
class DerivationStep:
    rule: str
    node: object             # expression node this step produced
    inputs: dict

    def to_json(self, ids):
        return {"theorem": self.rule, "node": ids.get(id(self.node)),
                "inputs": self.inputs}


@dataclass
class Pi1Result:
    expression: object
    presentation: object           # tietze-simplified lowering
    raw_presentation: object       # lowering before simplification
    derivation: list
    component_images: dict = field(default_factory=dict)

    def witness(self):
        return closure_witness(self.expression)


def _branch_leg_pairs(branch):
    src = branch.group.canonical_presentation
    return [(branch.psi.images[g], branch.phi.images[g])
            for g in src.generators]


def pi1_connected_singular(cfg, form="i", limits=DEFAULT_LIMITS):
    """The fundamental group of a configuration with one singular piece."""
    ensure_valid(cfg)
    if cfg.m != 1:
        raise InputError(
            f"expected exactly one singular piece, found {cfg.m}")
    sing = cfg.singulars[0]
    sing_pres = sing.group.canonical_presentation

    assemblies = []
    vknodes = []
    steps = []
    for comp in cfg.components:
        branches = [b for b in cfg.branches if b.component == comp.id]
        leg_pairs = [_branch_leg_pairs(b) for b in branches]
        asm = vk_assemble(comp.group.canonical_presentation, sing_pres,
                          leg_pairs, form)
        node = VKNode(Atom("component", comp.id, comp.group),
                      Atom("singular", sing.id, sing.group),
                      [VKLegRef(b.group, "branch", b.id) for b in branches])
        assemblies.append(asm)
        vknodes.append(node)
        steps.append(DerivationStep(
            "vk-connected-singular", node,
            {"component": comp.id, "singular": sing.id,
             "branches": [b.id for b in branches], "form": form}))

    if cfg.n == 1:
        asm = assemblies[0]
        raw = asm.presentation
        images = {cfg.components[0].id: dict(asm.left_map)}
        expr = vknodes[0]
    else:
        prod, maps = free_product_with_maps(
            [a.presentation for a in assemblies])
        pairs = []
        first = assemblies[0]
        for y in sing_pres.generators:
            anchor = Word.gen(maps[0][first.right_map[y]])
            for i in range(1, cfg.n):
                other = Word.gen(maps[i][assemblies[i].right_map[y]])
                pairs.append((anchor, other))
        raw = quotient_by_relations(prod, pairs)
        images = {}
        for i, comp in enumerate(cfg.components):
            asm = assemblies[i]
            images[comp.id] = {g: maps[i][s] for g, s in asm.left_map.items()}
        expr = FiberedCoproductNode(Atom("singular", sing.id, sing.group),
                                    vknodes)
        steps.append(DerivationStep(
            "amalgamate-singular-copies", expr,
            {"singular": sing.id, "copies": cfg.n}))

    return Pi1Result(expr, tietze_simplify(raw), raw, steps, images)


def pi1_devissage(cfg, form="i", order=None, limits=DEFAULT_LIMITS):
    """The fundamental group of any valid configuration, by recursion on
    the number of singular pieces."""
    ensure_valid(cfg)
    if cfg.m == 0:
        comp = cfg.components[0]
        raw, mapping = retag(comp.group.canonical_presentation, "c1")
        expr = Atom("component", comp.id, comp.group)
        steps = [DerivationStep("normal-component", expr,
                                {"component": comp.id})]
        return Pi1Result(expr, tietze_simplify(raw), raw, steps,
                         {comp.id: mapping})
    if cfg.m == 1:
        if order is not None:
            check_order(cfg, order)
        return pi1_connected_singular(cfg, form, limits)

    order = check_order(cfg, order) if order is not None \
        else devissage_order(cfg)
    anchor = order[-1]
    patch = build_patch(cfg, anchor)
    complement = build_patch_complement(cfg, anchor)
    report = intersection(cfg, patch, complement)

    left = pi1_devissage(patch, form, None, limits)
    right = pi1_devissage(complement, form, tuple(order[:-1]), limits)

    leg_pairs = []
    leg_refs = []
    for cid in report.S:
        group = cfg.component(cid).group
        gens = group.canonical_presentation.generators
        pairs = [(Word.gen(left.component_images[cid][g]),
                  Word.gen(right.component_images[cid][g]))
                 for g in gens]
        leg_pairs.append(pairs)
        leg_refs.append(VKLegRef(group, "component", cid))

    asm = vk_assemble(left.raw_presentation, right.raw_presentation,
                      leg_pairs, form)

    images = {}
    for comp in complement.components:
        images[comp.id] = {g: asm.right_map[s]
                           for g, s in right.component_images[comp.id].items()}
    for comp in patch.components:
        # overlap components resolve to the patch-side copy
        images[comp.id] = {g: asm.left_map[s]
                           for g, s in left.component_images[comp.id].items()}

    expr = VKNode(left.expression, right.expression, leg_refs)
    step = DerivationStep(
        "devissage-split", expr,
        {"anchor": anchor, "order": list(order),
         "overlap": list(report.S),
         "m_tilde_1": report.m_tilde_1, "m_tilde_2": report.m_tilde_2,
         "form": form})
    steps = left.derivation + right.derivation + [step]
    raw = asm.presentation
    return Pi1Result(expr, tietze_simplify(raw), raw, steps, images)


def pi1_closed_form(cfg, require_trivial_singulars=True,
                    limits=DEFAULT_LIMITS):
    """Coproduct of the component groups with a free group of the cycle
    rank; valid when all singular and branch groups are trivial.

    With ``require_trivial_singulars`` off the formula is applied
    anyway, as an unchecked extrapolation.
    """
    ensure_valid(cfg)
    if require_trivial_singulars:
        for s in cfg.singulars:
            if s.group.order != 1:
                raise InputError(
                    f"singular piece {s.id} has a non-trivial group; "
                    "the closed form does not apply")
        for b in cfg.branches:
            if b.group.order != 1:
                raise InputError(
                    f"branch {b.id} has a non-trivial group; "
                    "the closed form does not apply")
    rank = free_rank(cfg)
    parts = [c.group.canonical_presentation for c in cfg.components]
    tags = [f"c{i + 1}" for i in range(len(parts))]
    parts.append(free_presentation(rank, prefix="f"))
    tags.append("free")
    raw, maps = free_product_with_maps(parts, tags=tags)
    images = {comp.id: dict(maps[i]) for i, comp in enumerate(cfg.components)}

    children = [Atom("component", c.id, c.group)
                for c in cfg.components if c.group.order > 1]
    if rank > 0:
        children.append(FreeGroupNode(rank))
    if not children:
        expr = FreeGroupNode(0)
    elif len(children) == 1:
        expr = children[0]
    else:
        expr = CoproductNode(children)
    steps = [DerivationStep(
        "closed-form-rank", expr,
        {"n": cfg.n, "m": cfg.m, "m_tilde": cfg.m_tilde, "rank": rank})]
    return Pi1Result(expr, tietze_simplify(raw), raw, steps, images)


def class_witness(result: Pi1Result):
    """Replay which closure rule admits each node of the result's tree."""
    return closure_witness(result.expression)
