"""Contravariant groupoid-valued functors on an orbit category.

A functor assigns a presented groupoid to each subgroup in the family and a
groupoid morphism value(K) -> value(H) to each orbit morphism G/H -> G/K,
reversing direction.  Functors are built from generating data by a
completion step (identities, arrows out of empty groupoids, composites),
and functor laws are then checked at the word level, escalating through
the usual verdict ladder when words cannot be compared syntactically.

The central construction is the functor induced by a complex with a group
action: value(H) is the fundamental groupoid presentation of the H-fixed
subcomplex, and the arrow for a morphism with coset representative g moves
fixed cells by g.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import GCellComplex, CellularMap, fixed_subcomplex, fundamental_groupoid
from .groups import Subgroup, family_all
from .groupoids import (
    GroupoidMorphism,
    PresentedGroupoid,
    Word,
    compose_morphisms,
    empty_morphism,
    equivalence_report,
    identity_morphism,
    invert_letters,
    words_equal_verdict,
)
from .orbit import OrbitCategory, OrbitMorphism
from .verdicts import LEVEL_SYNTACTIC, Verdict, combine


class MissingValue(ValueError):
    pass


class MissingArrow(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


@dataclass
class OrbFunctor:
    category: OrbitCategory
    values: dict  # subgroup id -> PresentedGroupoid
    arrows: dict  # OrbitMorphism -> GroupoidMorphism

    def value(self, h) -> PresentedGroupoid:
        hid = self.category.id_of(h) if isinstance(h, Subgroup) else h
        try:
            return self.values[hid]
        except KeyError:
            raise MissingValue(f"no value at subgroup id {hid}") from None

    def arrow(self, m: OrbitMorphism) -> GroupoidMorphism:
        try:
            return self.arrows[m]
        except KeyError:
            raise MissingArrow(f"no arrow at {m}") from None


def make_functor(category: OrbitCategory, values: dict, arrows: dict) -> OrbFunctor:
    """Complete generating data to a functor on every orbit morphism.

    Identities are filled in, arrows out of an empty groupoid are the unique
    empty morphisms, and remaining arrows are generated by composition
    (first definition wins; disagreements surface in
    validate_functoriality).  Raises MissingValue or MissingArrow when the
    data cannot be completed.
    """
    vals = dict(values)
    for hid in category.objects:
        if hid not in vals:
            raise MissingValue(f"no groupoid for subgroup id {hid}")
    done = dict(arrows)
    for hid in category.objects:
        m = category.identity(hid)
        if m not in done:
            done[m] = identity_morphism(vals[hid])
    for m in category.morphisms():
        if m in done:
            continue
        source_value = vals[m.target]  # arrows reverse direction
        if source_value.is_empty:
            done[m] = empty_morphism(vals[m.source])
    changed = True
    while changed:
        changed = False
        for beta in category.morphisms():
            for alpha in category.morphisms():
                if alpha.target != beta.source:
                    continue
                comp = category.compose(beta, alpha)
                if comp in done or beta not in done or alpha not in done:
                    continue
                done[comp] = compose_morphisms(done[alpha], done[beta])
                changed = True
    missing = [m for m in category.morphisms() if m not in done]
    if missing:
        raise MissingArrow(
            "arrows not derivable from the given generators: "
            + ", ".join(str(m) for m in missing)
        )
    return OrbFunctor(category, vals, done)


def _same_morphism(a: GroupoidMorphism, b: GroupoidMorphism) -> Verdict:
    if a.object_map != b.object_map:
        return Verdict.refuted(
            {"detail": "object maps differ", "maps": (a.object_map, b.object_map)},
            LEVEL_SYNTACTIC,
        )
    verdicts = []
    for g in a.source.generators:
        v = words_equal_verdict(
            a.target, a.generator_map[g.label], b.generator_map[g.label]
        )
        if v.is_refuted:
            return Verdict.refuted(
                {"detail": "generator images differ", "generator": g.label,
                 **(v.witness or {})},
                v.level,
            )
        verdicts.append(v)
    return combine(verdicts)


def validate_functoriality(f: OrbFunctor) -> Verdict:
    """Identity and composition laws, checked on every composable pair."""
    cat = f.category
    for hid in cat.objects:
        if hid not in f.values:
            return Verdict.refuted({"check": "value missing", "id": hid}, LEVEL_SYNTACTIC)
    for m in cat.morphisms():
        if m not in f.arrows:
            return Verdict.refuted({"check": "arrow missing", "at": str(m)}, LEVEL_SYNTACTIC)
        t = f.arrows[m]
        if t.source != f.values[m.target] or t.target != f.values[m.source]:
            return Verdict.refuted(
                {"check": "arrow endpoints", "at": str(m)}, LEVEL_SYNTACTIC
            )
    verdicts = []
    for hid in cat.objects:
        t = f.arrows[cat.identity(hid)]
        ident = identity_morphism(f.values[hid])
        v = _same_morphism(t, ident)
        if v.is_refuted:
            return Verdict.refuted(
                {"check": "identity law", "id": hid, **(v.witness or {})}, v.level
            )
        verdicts.append(v)
    for beta in cat.morphisms():
        for alpha in cat.morphisms():
            if alpha.target != beta.source:
                continue
            comp = cat.compose(beta, alpha)
            direct = f.arrows[comp]
            staged = compose_morphisms(f.arrows[alpha], f.arrows[beta])
            v = _same_morphism(direct, staged)
            if v.is_refuted:
                return Verdict.refuted(
                    {"check": "composition law", "pair": (str(beta), str(alpha)),
                     **(v.witness or {})},
                    v.level,
                )
            verdicts.append(v)
    return combine(verdicts)


def induced_functor_from_complex(x: GCellComplex, family=None) -> OrbFunctor:
    """The functor of fixed-point fundamental groupoids of a complex."""
    if family is None:
        family = family_all(x.group)
    cat = OrbitCategory(x.group, family)
    values = {}
    complexes = {}
    for hid in cat.objects:
        sub = cat.subgroups[hid]
        fixed = fixed_subcomplex(x, sub)
        complexes[hid] = fixed
        values[hid] = fundamental_groupoid(fixed)
    arrows = {}
    for m in cat.morphisms():
        g = m.representative
        src_value = values[m.target]
        dst_value = values[m.source]
        object_map = {v: x.action[g][v][0] for v in src_value.objects}
        generator_map = {}
        for e in src_value.generators:
            img, sign = x.action[g][e.label]
            generator_map[e.label] = Word(((img, sign),))
        arrows[m] = GroupoidMorphism(src_value, dst_value, object_map, generator_map)
    return OrbFunctor(cat, values, arrows)


@dataclass
class NaturalTransformation:
    source: OrbFunctor
    target: OrbFunctor
    components: dict  # subgroup id -> GroupoidMorphism

    def naturality(self) -> Verdict:
        cat = self.source.category
        for hid in cat.objects:
            if hid not in self.components:
                return Verdict.refuted(
                    {"check": "component missing", "id": hid}, LEVEL_SYNTACTIC
                )
            c = self.components[hid]
            if c.source != self.source.values[hid] or c.target != self.target.values[hid]:
                return Verdict.refuted(
                    {"check": "component endpoints", "id": hid}, LEVEL_SYNTACTIC
                )
        verdicts = []
        for m in cat.morphisms():
            hid, kid = m.source, m.target
            left = compose_morphisms(self.components[hid], self.source.arrows[m])
            right = compose_morphisms(self.target.arrows[m], self.components[kid])
            v = _same_morphism(left, right)
            if v.is_refuted:
                return Verdict.refuted(
                    {"check": "naturality square", "at": str(m), **(v.witness or {})},
                    v.level,
                )
            verdicts.append(v)
        return combine(verdicts)


def induced_transformation(
    f: CellularMap, family=None
) -> NaturalTransformation:
    """Natural transformation of induced functors coming from an equivariant
    cellular map between complexes over the same group.  Equivariance is
    checked cell by cell and NotEquivariant raised on failure."""
    x, y = f.source, f.target
    if x.group != y.group:
        raise NotEquivariant("source and target have different groups")
    for g in x.group.elements():
        for v in x.vertices:
            if f.vertex_map[x.action[g][v][0]] != y.action[g][f.vertex_map[v]][0]:
                raise NotEquivariant(f"vertex {v!r} breaks equivariance at element {g}")
        for e in x.edges:
            img, sign = x.action[g][e.label]
            moved = _translate_cellular(y, g, f.edge_map[e.label])
            expected = f.edge_map[img] if sign == 1 else Word(
                invert_letters(f.edge_map[img].letters), at=None
            )
            if moved.letters != expected.letters:
                raise NotEquivariant(
                    f"edge {e.label!r} breaks equivariance at element {g}"
                )
    src_f = induced_functor_from_complex(x, family)
    tgt_f = induced_functor_from_complex(y, family)
    components = {}
    for hid in src_f.category.objects:
        sv = src_f.values[hid]
        tv = tgt_f.values[hid]
        object_map = {v: f.vertex_map[v] for v in sv.objects}
        generator_map = {e.label: f.edge_map[e.label] for e in sv.generators}
        components[hid] = GroupoidMorphism(sv, tv, object_map, generator_map)
    return NaturalTransformation(src_f, tgt_f, components)


def _translate_cellular(y: GCellComplex, g, w: Word) -> Word:
    out = []
    for lab, exp in w.letters:
        img, sign = y.action[g][lab]
        out.append((img, exp * sign))
    return Word(tuple(out))


def equivalence_of_functors(eta: NaturalTransformation) -> Verdict:
    """Is a natural transformation an objectwise equivalence?  Naturality
    first, then the componentwise equivalence reports."""
    nat = eta.naturality()
    if nat.is_refuted:
        return nat
    verdicts = [nat]
    for hid in eta.source.category.objects:
        v = equivalence_report(eta.components[hid])
        if v.is_refuted:
            return Verdict.refuted(
                {"component": hid, **(v.witness or {})}, v.level
            )
        verdicts.append(v)
    return combine(verdicts)
