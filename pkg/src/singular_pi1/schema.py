"""JSON ingestion and emission.

The configuration schema::

    {"components": [{"id": ..., "group": GROUP}],
     "singulars":  [{"id": ..., "group": GROUP}],
     "branches":   [{"id": ..., "component": ..., "singular": ...,
                     "group": GROUP,
                     "psi": {GEN: WORD}, "phi": {GEN: WORD}}]}

with GROUP one of ``{"kind": "trivial"}``, ``{"kind": "cyclic",
"order": k}``, ``{"kind": "symmetric", "degree": k}``,
``{"kind": "permutation", "degree": k, "generators": [[...], ...]}``,
``{"kind": "presented", "generators": [...], "relators": [...]}``.
Words are arrays of ``[symbol, exponent]`` pairs over the target
group's canonical generator names; ``psi`` maps into the branch's
component group, ``phi`` into its singular group.  Both may be omitted
when the branch group is trivial.

Structural problems raise ``SchemaError`` with a JSON-path location;
semantic problems (a map that is not a homomorphism, a group over the
order bound) raise ``InputError``/``ResourceError``.
"""

from .errors import InputError, SchemaError
from .groups import GroupSpec
from .homomorphism import Homo
from .limits import DEFAULT_LIMITS
from .presentation import Presentation
from .scheme import Branch, Component, SchemeConfig, Singular
from .words import Word, sym


def _expect(value, types, path, what):
    if not isinstance(value, types):
        raise SchemaError(path, f"expected {what}")
    return value


def _get(doc, key, path, required=True, default=None):
    if key not in doc:
        if required:
            raise SchemaError(path, f"missing required key {key!r}")
        return default
    return doc[key]


def parse_word(doc, path):
    _expect(doc, list, path, "a word as a list of [symbol, exponent] pairs")
    letters = []
    for i, pair in enumerate(doc):
        p = f"{path}[{i}]"
        _expect(pair, list, p, "a [symbol, exponent] pair")
        if len(pair) != 2:
            raise SchemaError(p, "expected exactly two entries")
        name, exp = pair
        _expect(name, str, f"{p}[0]", "a generator symbol string")
        _expect(exp, int, f"{p}[1]", "an integer exponent")
        if exp == 0:
            raise SchemaError(f"{p}[1]", "exponent must be non-zero")
        try:
            symbol = sym(name)
        except InputError as exc:
            raise SchemaError(f"{p}[0]", str(exc)) from None
        letters.append((symbol, exp))
    return Word(tuple(letters))


def word_to_json(word):
    return [[s.qualified(), e] for s, e in word.letters]


def parse_presentation(doc, path):
    _expect(doc, dict, path, "a presentation object")
    gen_doc = _get(doc, "generators", path)
    _expect(gen_doc, list, f"{path}.generators", "a list of generator names")
    gens = []
    for i, name in enumerate(gen_doc):
        _expect(name, str, f"{path}.generators[{i}]", "a generator name")
        try:
            gens.append(sym(name))
        except InputError as exc:
            raise SchemaError(f"{path}.generators[{i}]", str(exc)) from None
    rel_doc = _get(doc, "relators", path, required=False, default=[])
    _expect(rel_doc, list, f"{path}.relators", "a list of words")
    relators = [parse_word(r, f"{path}.relators[{i}]")
                for i, r in enumerate(rel_doc)]
    try:
        return Presentation(gens, relators)
    except InputError as exc:
        raise SchemaError(path, str(exc)) from None


def presentation_to_json(p):
    return {"generators": [g.qualified() for g in p.generators],
            "relators": [word_to_json(r) for r in p.relators]}


def parse_group(doc, path, limits=DEFAULT_LIMITS):
    _expect(doc, dict, path, "a group object")
    kind = _get(doc, "kind", path)
    _expect(kind, str, f"{path}.kind", "a group kind string")
    if kind == "trivial":
        return GroupSpec.trivial()
    if kind == "cyclic":
        order = _get(doc, "order", path)
        _expect(order, int, f"{path}.order", "an integer order")
        if order < 1:
            raise SchemaError(f"{path}.order", "order must be >= 1")
        return GroupSpec.cyclic(order, limits=limits)
    if kind == "symmetric":
        degree = _get(doc, "degree", path)
        _expect(degree, int, f"{path}.degree", "an integer degree")
        if degree < 0:
            raise SchemaError(f"{path}.degree", "degree must be >= 0")
        return GroupSpec.symmetric(degree, limits=limits)
    if kind == "permutation":
        degree = _get(doc, "degree", path)
        _expect(degree, int, f"{path}.degree", "an integer degree")
        gens_doc = _get(doc, "generators", path)
        _expect(gens_doc, list, f"{path}.generators",
                "a list of permutations")
        gens = []
        for i, perm in enumerate(gens_doc):
            p = f"{path}.generators[{i}]"
            _expect(perm, list, p, "a permutation as a list of images")
            if sorted(perm) != list(range(degree)):
                raise SchemaError(p, f"not a permutation of 0..{degree - 1}")
            gens.append(tuple(perm))
        try:
            return GroupSpec.permutation(degree, gens, limits=limits)
        except InputError as exc:
            raise SchemaError(path, str(exc)) from None
    if kind == "presented":
        pres = parse_presentation(doc, path)
        return GroupSpec.presented(pres, limits=limits)
    raise SchemaError(f"{path}.kind", f"unknown group kind {kind!r}")


def group_to_json(spec):
    kind = spec.kind
    if kind == "trivial":
        return {"kind": "trivial"}
    if kind == "cyclic":
        return {"kind": "cyclic", "order": spec.order}
    if kind == "symmetric":
        return {"kind": "symmetric", "degree": spec._degree}
    if kind == "permutation":
        return {"kind": "permutation", "degree": spec._degree,
                "generators": [list(g) for g in spec._perm_generators]}
    out = presentation_to_json(spec.canonical_presentation)
    out["kind"] = "presented"
    return out


def _parse_hom(doc, path, source, target):
    """A generator-image map for a branch attaching homomorphism."""
    src = source.canonical_presentation
    if doc is None:
        if source.order != 1:
            raise SchemaError(path, "map may only be omitted when the "
                              "branch group is trivial")
        return Homo.trivial(source, target)
    _expect(doc, dict, path, "a map of generator names to words")
    images = {}
    declared = {g.name: g for g in src.generators}
    for name, word_doc in doc.items():
        if name not in declared:
            raise SchemaError(f"{path}.{name}",
                              f"unknown branch-group generator {name!r}")
        images[declared[name]] = parse_word(word_doc, f"{path}.{name}")
    missing = set(declared) - set(doc)
    if missing:
        raise SchemaError(path, f"missing images for {sorted(missing)}")
    target_gens = set(target.canonical_presentation.generators)
    for g, w in images.items():
        bad = w.symbols() - target_gens
        if bad:
            raise SchemaError(f"{path}.{g.name}",
                              "image uses symbols outside the target group: "
                              + ", ".join(sorted(map(str, bad))))
    # relator-triviality is semantic, not schema: let InputError escape
    return Homo(source, target, images)


def _hom_to_json(hom):
    return {g.name: word_to_json(w) for g, w in hom.images.items()}


def parse_scheme_config(doc, limits=DEFAULT_LIMITS):
    _expect(doc, dict, "$", "a configuration object")
    comps_doc = _expect(_get(doc, "components", "$"), list,
                        "$.components", "a list of components")
    sings_doc = _expect(_get(doc, "singulars", "$", required=False,
                             default=[]), list,
                        "$.singulars", "a list of singular pieces")
    branches_doc = _expect(_get(doc, "branches", "$", required=False,
                                default=[]), list,
                           "$.branches", "a list of branches")

    components = []
    for i, c in enumerate(comps_doc):
        path = f"$.components[{i}]"
        _expect(c, dict, path, "a component object")
        cid = _expect(_get(c, "id", path), str, f"{path}.id", "an id string")
        group = parse_group(_get(c, "group", path), f"{path}.group", limits)
        components.append(Component(cid, group))

    singulars = []
    for i, s in enumerate(sings_doc):
        path = f"$.singulars[{i}]"
        _expect(s, dict, path, "a singular-piece object")
        sid = _expect(_get(s, "id", path), str, f"{path}.id", "an id string")
        group = parse_group(_get(s, "group", path), f"{path}.group", limits)
        singulars.append(Singular(sid, group))

    comp_by_id = {c.id: c for c in components}
    sing_by_id = {s.id: s for s in singulars}

    branches = []
    for i, b in enumerate(branches_doc):
        path = f"$.branches[{i}]"
        _expect(b, dict, path, "a branch object")
        bid = _expect(_get(b, "id", path), str, f"{path}.id", "an id string")
        comp = _expect(_get(b, "component", path), str,
                       f"{path}.component", "a component id")
        sing = _expect(_get(b, "singular", path), str,
                       f"{path}.singular", "a singular id")
        group = parse_group(_get(b, "group", path), f"{path}.group", limits)
        if comp not in comp_by_id:
            raise SchemaError(f"{path}.component",
                              f"unknown component id {comp!r}")
        if sing not in sing_by_id:
            raise SchemaError(f"{path}.singular",
                              f"unknown singular id {sing!r}")
        psi = _parse_hom(_get(b, "psi", path, required=False), f"{path}.psi",
                         group, comp_by_id[comp].group)
        phi = _parse_hom(_get(b, "phi", path, required=False), f"{path}.phi",
                         group, sing_by_id[sing].group)
        branches.append(Branch(bid, comp, sing, group, psi, phi))

    return SchemeConfig(components, singulars, branches)


def scheme_config_to_json(cfg):
    return {
        "components": [{"id": c.id, "group": group_to_json(c.group)}
                       for c in cfg.components],
        "singulars": [{"id": s.id, "group": group_to_json(s.group)}
                      for s in cfg.singulars],
        "branches": [{"id": b.id, "component": b.component,
                      "singular": b.singular,
                      "group": group_to_json(b.group),
                      "psi": _hom_to_json(b.psi),
                      "phi": _hom_to_json(b.phi)}
                     for b in cfg.branches],
    }


def pi1_result_to_json(result, simplified=True):
    from .expression import assign_ids, expression_to_json

    ids = assign_ids(result.expression)
    pres = result.presentation if simplified else result.raw_presentation
    return {
        "expression": expression_to_json(result.expression, ids),
        "presentation": presentation_to_json(pres),
        "derivation": [step.to_json(ids) for step in result.derivation],
    }
