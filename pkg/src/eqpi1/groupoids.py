"""Finitely presented groupoids and their morphisms.

A groupoid is presented by objects, generating arrows, and relator words
(closed edge paths).  Words compose left to right: the first letter is
traversed first.  Isotropy groups are presented via a deterministic
spanning tree (breadth-first from the first-declared object of the
component, edges scanned in declaration order); the non-tree generators
survive as free generators and relators are rewritten by dropping tree
letters.

Word-problem-adjacent checks escalate through decidable levels: reduced
words, then abelianized exponent vectors, then Undecided.  To certify that
an isotropy group is abelian (which upgrades abelianized evidence to a
Verified verdict) presentations are first simplified by Tietze
eliminations and then required to contain a commutator for every pair of
surviving generators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .intlinalg import (
    AbelianGroup,
    IntMatrix,
    abelian_map_surjective,
    in_column_span,
    induced_free_matrix,
    quotient_invariants,
)
from .verdicts import (
    LEVEL_ABELIANIZED,
    LEVEL_SYNTACTIC,
    Verdict,
    combine,
)


class ObjectNotFound(ValueError):
    pass


class NotComposable(ValueError):
    pass


class Gen(NamedTuple):
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Word:
    """A composable sequence of generator letters (label, +-1).  The empty
    word needs an anchor object `at`; nonempty words may carry one too."""

    letters: tuple
    at: str | None = None

    @staticmethod
    def empty(obj: str) -> "Word":
        return Word((), at=obj)

    @staticmethod
    def gen(label: str, exp: int = 1) -> "Word":
        return Word(((label, exp),))

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters), at=self.at)

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, at=self.at or other.at)

    def __str__(self):
        if not self.letters:
            return f"@ {self.at}"
        return " ".join(
            lab if e == 1 else f"{lab}^{e}" for lab, e in self.letters
        )


def invert_letters(letters) -> tuple:
    return tuple((lab, -e) for lab, e in reversed(letters))


def free_reduce_letters(letters) -> tuple:
    out = []
    for lab, e in letters:
        if out and out[-1][0] == lab and out[-1][1] == -e:
            out.pop()
        else:
            out.append((lab, e))
    return tuple(out)


def cyclic_reduce_letters(letters) -> tuple:
    w = list(free_reduce_letters(letters))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
        w = list(free_reduce_letters(w))
    return tuple(w)


def canonical_cyclic(letters) -> tuple:
    """Canonical form of a cyclic word up to rotation and inversion; used to
    compare relators."""
    w = cyclic_reduce_letters(letters)
    if not w:
        return ()
    candidates = []
    for base in (w, invert_letters(w)):
        for i in range(len(base)):
            candidates.append(base[i:] + base[:i])
    return min(candidates)


def rotation_equal(a, b) -> bool:
    """Are two letter sequences equal up to rotation (not inversion)?"""
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(b[i:] + b[:i] == a for i in range(len(b)))


@dataclass(frozen=True)
class GroupPresentation:
    """A group given by generators and relator words (letters only)."""

    generators: tuple
    relators: tuple

    def relator_matrix(self) -> IntMatrix:
        idx = {g: i for i, g in enumerate(self.generators)}
        cols = []
        for r in self.relators:
            v = [0] * len(self.generators)
            for lab, e in r:
                v[idx[lab]] += e
            cols.append(v)
        return IntMatrix.from_columns(cols, nrows=len(self.generators))

    def abelianization(self) -> AbelianGroup:
        return quotient_invariants(self.relator_matrix())


def exponent_vector(letters, generators) -> list:
    idx = {g: i for i, g in enumerate(generators)}
    v = [0] * len(generators)
    for lab, e in letters:
        v[idx[lab]] += e
    return v


def substitute_letters(letters, subst) -> tuple:
    out = []
    for lab, e in letters:
        rep = subst[lab]
        out.extend(rep if e == 1 else invert_letters(rep))
    return free_reduce_letters(out)


def simplify_presentation(pres: GroupPresentation):
    """Deterministic Tietze simplification.

    Repeatedly: cyclically reduce and deduplicate relators, then eliminate a
    generator that occurs exactly once in some relator (shortest relator
    first; among candidates the latest-declared generator is eliminated, so
    early generators survive as the preferred basis).  Returns the reduced
    presentation and a substitution expressing every original generator as a
    word in the surviving ones.
    """
    gens = list(pres.generators)
    order = {g: i for i, g in enumerate(pres.generators)}
    relators = [cyclic_reduce_letters(r) for r in pres.relators]
    subst = {g: ((g, 1),) for g in pres.generators}

    while True:
        relators = [r for r in (cyclic_reduce_letters(r) for r in relators) if r]
        seen = set()
        dedup = []
        for r in relators:
            key = canonical_cyclic(r)
            if key and key not in seen:
                seen.add(key)
                dedup.append(r)
        relators = dedup

        victim = None
        for r in sorted(relators, key=lambda r: (len(r), r)):
            counts = {}
            for lab, _ in r:
                counts[lab] = counts.get(lab, 0) + 1
            once = [lab for lab, c in counts.items() if c == 1]
            if once:
                lab = max(once, key=order.__getitem__)
                victim = (r, lab)
                break
        if victim is None:
            break

        r, lab = victim
        pos = next(i for i, (l, _) in enumerate(r) if l == lab)
        rot = r[pos + 1:] + r[:pos]  # r rotated so the victim letter is last
        exp = r[pos][1]
        # r = 1 solves to lab = rot^-1 (exp +1) or lab = rot (exp -1)
        replacement = invert_letters(rot) if exp == 1 else rot
        repl_map = {lab: replacement}
        step = {
            g: substitute_letters(w, {**{x: ((x, 1),) for x in gens}, **repl_map})
            for g, w in subst.items()
        }
        subst = step
        relators = [
            substitute_letters(
                rr, {**{x: ((x, 1),) for x in gens}, **repl_map}
            )
            for rr in relators
            if rr is not r
        ]
        gens.remove(lab)

    return GroupPresentation(tuple(gens), tuple(relators)), subst


def certified_abelian(pres: GroupPresentation) -> bool:
    """True only when the presentation visibly forces commutativity: at most
    one generator, or an explicit commutator relator for every pair."""
    n = len(pres.generators)
    if n <= 1:
        return True
    have = {canonical_cyclic(r) for r in pres.relators}
    for i in range(n):
        for j in range(i + 1, n):
            a, b = pres.generators[i], pres.generators[j]
            ok = False
            for ea in (1, -1):
                for eb in (1, -1):
                    comm = ((a, ea), (b, eb), (a, -ea), (b, -eb))
                    if canonical_cyclic(comm) in have:
                        ok = True
            if not ok:
                return False
    return True


@dataclass(frozen=True)
class PresentedGroupoid:
    objects: tuple
    generators: tuple
    relators: tuple

    def __post_init__(self):
        seen = set()
        for x in self.objects:
            if x in seen:
                raise ValueError(f"duplicate object {x!r}")
            seen.add(x)
        obj = set(self.objects)
        labels = set()
        for g in self.generators:
            if g.label in labels:
                raise ValueError(f"duplicate generator {g.label!r}")
            labels.add(g.label)
            if g.source not in obj or g.target not in obj:
                raise ObjectNotFound(
                    f"generator {g.label!r} has endpoint outside objects"
                )
        for r in self.relators:
            s, t = self.word_endpoints(r)
            if s != t:
                raise NotComposable(f"relator {r} is not a closed path")

    @cached_property
    def _gen(self):
        return {g.label: g for g in self.generators}

    @cached_property
    def _obj_index(self):
        return {x: i for i, x in enumerate(self.objects)}

    @property
    def is_empty(self) -> bool:
        return not self.objects

    def gen(self, label: str) -> Gen:
        try:
            return self._gen[label]
        except KeyError:
            raise ObjectNotFound(f"no generator {label!r}") from None

    def word_endpoints(self, w: Word):
        """(source, target) of a word; checks composability letter by letter."""
        if not w.letters:
            if w.at is None or w.at not in self._obj_index:
                raise ObjectNotFound(f"empty word has no valid anchor: {w}")
            return w.at, w.at
        cur = None
        first = None
        for lab, e in w.letters:
            g = self.gen(lab)
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +-1: {lab}^{e}")
            s, t = (g.source, g.target) if e == 1 else (g.target, g.source)
            if cur is None:
                first = s
            elif cur != s:
                raise NotComposable(
                    f"word {w}: letter {lab}^{e} starts at {s}, expected {cur}"
                )
            cur = t
        return first, cur

    def word_source(self, w: Word) -> str:
        return self.word_endpoints(w)[0]

    def word_target(self, w: Word) -> str:
        return self.word_endpoints(w)[1]

    def free_reduce(self, w: Word) -> Word:
        src, _ = self.word_endpoints(w)
        reduced = free_reduce_letters(w.letters)
        return Word(reduced, at=src)

    @cached_property
    def _components(self):
        adj = {x: [] for x in self.objects}
        for g in self.generators:
            adj[g.source].append(g.target)
            adj[g.target].append(g.source)
        seen = {}
        comps = []
        for x in self.objects:
            if x in seen:
                continue
            comp = []
            queue = deque([x])
            seen[x] = len(comps)
            while queue:
                y = queue.popleft()
                comp.append(y)
                for z in adj[y]:
                    if z not in seen:
                        seen[z] = len(comps)
                        queue.append(z)
            comp.sort(key=self._obj_index.__getitem__)
            comps.append(tuple(comp))
        return tuple(comps), seen

    def components(self) -> tuple:
        return self._components[0]

    def component_of(self, x: str) -> tuple:
        comps, seen = self._components
        if x not in seen:
            raise ObjectNotFound(f"no object {x!r}")
        return comps[seen[x]]

    def isotropy_data(self, x: str) -> "IsotropyData":
        comp = self.component_of(x)
        base = comp[0]
        paths = {base: ()}
        tree = set()
        queue = deque([base])
        while queue:
            y = queue.popleft()
            for g in self.generators:
                if g.source == y and g.target not in paths:
                    paths[g.target] = paths[y] + ((g.label, 1),)
                    tree.add(g.label)
                    queue.append(g.target)
                elif g.target == y and g.source not in paths:
                    paths[g.source] = paths[y] + ((g.label, -1),)
                    tree.add(g.label)
                    queue.append(g.source)
        comp_set = set(comp)
        hat_gens = tuple(
            g.label
            for g in self.generators
            if g.label not in tree and g.source in comp_set
        )
        relators = []
        for r in self.relators:
            s, _ = self.word_endpoints(r)
            if s in comp_set:
                relators.append(self._rewrite_letters(r.letters, tree))
        pres = GroupPresentation(hat_gens, tuple(relators))
        return IsotropyData(self, base, comp, paths, frozenset(tree), pres)

    @staticmethod
    def _rewrite_letters(letters, tree) -> tuple:
        return free_reduce_letters(
            (lab, e) for lab, e in letters if lab not in tree
        )

    def isotropy_presentation(self, x: str) -> GroupPresentation:
        return self.isotropy_data(x).presentation

    def abelianized_isotropy(self, x: str) -> AbelianGroup:
        return self.isotropy_presentation(x).abelianization()


@dataclass(frozen=True)
class IsotropyData:
    groupoid: PresentedGroupoid
    base: str
    component: tuple
    paths: dict = field(compare=False)
    tree: frozenset
    presentation: GroupPresentation

    def rewrite_loop(self, w: Word) -> tuple:
        """Express a loop anywhere in the component as hat-generator letters
        (the conjugated loop at the base)."""
        return self.groupoid._rewrite_letters(w.letters, self.tree)

    def hat_loop_word(self, label: str) -> Word:
        """The loop at the base that a surviving generator stands for."""
        g = self.groupoid.gen(label)
        letters = (
            self.paths[g.source]
            + ((label, 1),)
            + invert_letters(self.paths[g.target])
        )
        return Word(free_reduce_letters(letters), at=self.base)


EMPTY_GROUPOID = PresentedGroupoid((), (), ())


@dataclass
class GroupoidMorphism:
    source: PresentedGroupoid
    target: PresentedGroupoid
    object_map: dict
    generator_map: dict

    def __post_init__(self):
        tgt_objects = set(self.target.objects)
        for x in self.source.objects:
            if x not in self.object_map:
                raise ObjectNotFound(f"object {x!r} has no image")
            if self.object_map[x] not in tgt_objects:
                raise ObjectNotFound(
                    f"image {self.object_map[x]!r} of {x!r} is not a target object"
                )
        for g in self.source.generators:
            if g.label not in self.generator_map:
                raise ObjectNotFound(f"generator {g.label!r} has no image")
            w = self.generator_map[g.label]
            s, t = self.target.word_endpoints(w)
            if s != self.object_map[g.source] or t != self.object_map[g.target]:
                raise NotComposable(
                    f"image of {g.label!r} runs {s}->{t}, expected "
                    f"{self.object_map[g.source]}->{self.object_map[g.target]}"
                )

    def apply(self, w: Word) -> Word:
        src, _ = self.source.word_endpoints(w)
        out = []
        for lab, e in w.letters:
            img = self.generator_map[lab]
            out.extend(img.letters if e == 1 else invert_letters(img.letters))
        return Word(tuple(out), at=self.object_map[src])

    def apply_reduced(self, w: Word) -> Word:
        return self.target.free_reduce(self.apply(w))


def identity_morphism(p: PresentedGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(
        p,
        p,
        {x: x for x in p.objects},
        {g.label: Word.gen(g.label) for g in p.generators},
    )


def empty_morphism(target: PresentedGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(EMPTY_GROUPOID, target, {}, {})


def compose_morphisms(t2: GroupoidMorphism, t1: GroupoidMorphism) -> GroupoidMorphism:
    """t2 after t1; t1's target must equal t2's source (structurally)."""
    if t1.target != t2.source:
        raise NotComposable("morphism composition: middle groupoid mismatch")
    return GroupoidMorphism(
        t1.source,
        t2.target,
        {x: t2.object_map[y] for x, y in t1.object_map.items()},
        {
            lab: t2.target.free_reduce(t2.apply(w))
            for lab, w in t1.generator_map.items()
        },
    )


def _loop_vanishes(p: PresentedGroupoid, w: Word) -> Verdict:
    """Is the loop w trivial in its component's isotropy?  Verified needs the
    loop to reduce to nothing, match a relator, or die in a certified-abelian
    group; a nonzero abelianized class refutes."""
    reduced = p.free_reduce(w)
    if reduced.is_empty:
        return Verdict.verified(LEVEL_SYNTACTIC)
    key = canonical_cyclic(reduced.letters)
    if key in {canonical_cyclic(r.letters) for r in p.relators}:
        return Verdict.verified(LEVEL_SYNTACTIC)
    data = p.isotropy_data(p.word_source(w))
    hat = data.rewrite_loop(reduced)
    if not hat:
        return Verdict.verified(LEVEL_SYNTACTIC)
    vec = exponent_vector(hat, data.presentation.generators)
    if not in_column_span(data.presentation.relator_matrix(), vec):
        return Verdict.refuted(
            {"loop": str(reduced), "abelianized": vec}, LEVEL_ABELIANIZED
        )
    simp, _ = simplify_presentation(data.presentation)
    if certified_abelian(simp):
        return Verdict.verified(LEVEL_ABELIANIZED)
    return Verdict.undecided("word problem: loop not decided at abelianized level")


def check_respects_relations(t: GroupoidMorphism) -> Verdict:
    verdicts = []
    for i, r in enumerate(t.source.relators):
        v = _loop_vanishes(t.target, t.apply(r))
        if v.is_refuted:
            return Verdict.refuted(
                {"relator": i, "word": str(r), **v.witness}, v.level
            )
        verdicts.append(v)
    return combine(verdicts)


def words_equal_verdict(p: PresentedGroupoid, w1: Word, w2: Word) -> Verdict:
    """Do two words with equal endpoints represent the same arrow of p?"""
    e1 = p.word_endpoints(w1)
    e2 = p.word_endpoints(w2)
    if e1 != e2:
        return Verdict.refuted(
            {"endpoints": (e1, e2)}, LEVEL_SYNTACTIC
        )
    r1 = p.free_reduce(w1)
    r2 = p.free_reduce(w2)
    if r1.letters == r2.letters:
        return Verdict.verified(LEVEL_SYNTACTIC)
    return _loop_vanishes(p, r1.concat(r2.inverse()))


@dataclass(frozen=True)
class IsotropyComparison:
    source_pres: GroupPresentation
    target_pres: GroupPresentation
    images: dict  # surviving source generator -> letters in target hat gens


def isotropy_image_map(t: GroupoidMorphism, x0: str) -> IsotropyComparison:
    src = t.source.isotropy_data(x0)
    tgt = t.target.isotropy_data(t.object_map[src.base])
    images = {}
    for lab in src.presentation.generators:
        loop = src.hat_loop_word(lab)
        img = t.apply(loop)
        images[lab] = tgt.rewrite_loop(img)
    return IsotropyComparison(src.presentation, tgt.presentation, images)


def abelianized_isotropy_map(t: GroupoidMorphism, x0: str):
    """Matrix of the induced map on free parts of the abelianized isotropy
    groups, in the deterministic bases of the simplified presentations.
    Returns (matrix, source invariants, target invariants)."""
    cmpd = isotropy_image_map(t, x0)
    sp, _ = simplify_presentation(cmpd.source_pres)
    tp, tsub = simplify_presentation(cmpd.target_pres)
    cols = []
    for g in sp.generators:
        img = substitute_letters(cmpd.images[g], tsub)
        cols.append(exponent_vector(img, tp.generators))
    f = IntMatrix.from_columns(cols, nrows=len(tp.generators))
    m = induced_free_matrix(sp.relator_matrix(), tp.relator_matrix(), f)
    return m, sp.abelianization(), tp.abelianization()


def _component_map(t: GroupoidMorphism):
    """source component index -> target component index, or a Refuted verdict
    when the map is not a bijection on components."""
    scomps = t.source.components()
    tcomps = t.target.components()
    t_index = {}
    for i, comp in enumerate(tcomps):
        for x in comp:
            t_index[x] = i
    mapping = {}
    hit = {}
    for i, comp in enumerate(scomps):
        j = t_index[t.object_map[comp[0]]]
        mapping[i] = j
        if j in hit:
            return None, Verdict.refuted(
                {
                    "components_identified": (
                        scomps[hit[j]][0],
                        comp[0],
                    )
                },
                LEVEL_SYNTACTIC,
            )
        hit[j] = i
    if len(scomps) != len(tcomps):
        return None, Verdict.refuted(
            {"component_counts": (len(scomps), len(tcomps))}, LEVEL_SYNTACTIC
        )
    return mapping, None


def equivalence_report(t: GroupoidMorphism) -> Verdict:
    """Is t an equivalence: bijective on components and an isomorphism on an
    isotropy group per component?  Only the decidable classes produce a
    Verified/Refuted answer (abelianization mismatch always refutes; free
    presentations need a strict generator bijection; certified-abelian
    presentations are decided by surjectivity plus finite-generation)."""
    mapping, bad = _component_map(t)
    if bad is not None:
        return bad
    verdicts = []
    for comp in t.source.components():
        verdicts.append(_component_iso_verdict(t, comp[0]))
    return combine(verdicts)


def _component_iso_verdict(t: GroupoidMorphism, x0: str) -> Verdict:
    cmpd = isotropy_image_map(t, x0)
    sp, _ = simplify_presentation(cmpd.source_pres)
    tp, tsub = simplify_presentation(cmpd.target_pres)
    ab_s = sp.abelianization()
    ab_t = tp.abelianization()
    if ab_s != ab_t:
        return Verdict.refuted(
            {"at": x0, "abelianizations": (str(ab_s), str(ab_t))},
            LEVEL_ABELIANIZED,
        )
    images = {
        g: substitute_letters(cmpd.images[g], tsub) for g in sp.generators
    }
    if not sp.relators and not tp.relators:
        # free against free: decidable only via a generator bijection
        letters = [images[g] for g in sp.generators]
        if (
            all(len(w) == 1 for w in letters)
            and len({w[0][0] for w in letters}) == len(letters)
            and len(letters) == len(tp.generators)
        ):
            return Verdict.verified(LEVEL_SYNTACTIC)
        return Verdict.undecided(
            "free-group automorphism recognition beyond generator bijections"
        )
    if certified_abelian(sp) and certified_abelian(tp):
        cols = [exponent_vector(images[g], tp.generators) for g in sp.generators]
        f = IntMatrix.from_columns(cols, nrows=len(tp.generators))
        if abelian_map_surjective(f, tp.relator_matrix()):
            # surjection between isomorphic finitely generated abelian
            # groups is an isomorphism
            return Verdict.verified(LEVEL_ABELIANIZED)
        return Verdict.refuted(
            {"at": x0, "detail": "abelianized map is not surjective"},
            LEVEL_ABELIANIZED,
        )
    return Verdict.undecided("word problem: isotropy not in a decidable class")


def strict_isomorphism_report(t: GroupoidMorphism) -> Verdict:
    """Object bijection plus generator-to-generator bijection; the blunt
    companion to equivalence_report."""
    n_obj_s = len(t.source.objects)
    n_obj_t = len(t.target.objects)
    if n_obj_s != n_obj_t:
        return Verdict.refuted(
            {"object_counts": (n_obj_s, n_obj_t)}, LEVEL_SYNTACTIC
        )
    if len(set(t.object_map.values())) != n_obj_s:
        return Verdict.refuted({"detail": "object map not injective"}, LEVEL_SYNTACTIC)
    images = [t.target.free_reduce(w) for w in t.generator_map.values()]
    if any(len(w.letters) != 1 for w in images):
        return Verdict.refuted(
            {"detail": "a generator image is not a single generator"},
            LEVEL_SYNTACTIC,
        )
    labels = {w.letters[0][0] for w in images}
    if len(labels) != len(images) or len(images) != len(t.target.generators):
        return Verdict.refuted(
            {
                "generator_counts": (
                    len(t.source.generators),
                    len(t.target.generators),
                )
            },
            LEVEL_SYNTACTIC,
        )
    return Verdict.verified(LEVEL_SYNTACTIC)
