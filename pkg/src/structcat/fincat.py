"""Finite categories presented as explicit tables.

A category here is a finite set of object identifiers, a finite set of
morphism identifiers with declared endpoints, a designated identity for
every object, and a composition table defined exactly on composable
pairs.  Nothing is assumed: the axioms (totality on composable pairs,
identity laws, associativity, endpoint typing) are checked by
``validate_category`` and every failure is reported with a concrete
witness.

All identifiers are opaque nonempty strings without whitespace.  Every
enumeration in this package is ordered lexicographically on identifiers,
which makes all outputs and all counterexamples deterministic.

Composition storage comes in two flavours.  Small categories (anything
parsed from a file, or hand-built in tests) carry a literal dict
``(g, f) -> g∘f``.  Generated instance categories can instead carry a
``compose_rule`` callback: the number of composable pairs grows roughly
with the square of the morphism count and materializing the table for,
say, all continuous maps between 3-point spaces (3.6M pairs) would be
pure waste.  Both flavours expose the same read surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(WorkbenchError):
    """Malformed input data: undeclared identifiers, duplicates, bad shape.

    Structural problems are raised, unlike law violations, which are
    collected into a :class:`ValidationReport`.
    """


def _check_identifier(ident: str, kind: str) -> None:
    if not isinstance(ident, str) or not ident:
        raise StructuralError(f"{kind} identifier must be a nonempty string, got {ident!r}")
    if any(ch.isspace() for ch in ident):
        raise StructuralError(f"{kind} identifier {ident!r} contains whitespace")


@dataclass(frozen=True)
class Violation:
    """A single law violation with a witness naming the offending cells."""

    law: str
    witness: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.law}({', '.join(self.witness)}): {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Verdict of a law check; invalid reports carry at least one witness."""

    valid: bool
    violations: tuple[Violation, ...] = ()

    def __post_init__(self) -> None:
        if not self.valid and not self.violations:
            raise ValueError("invalid report requires at least one violation")

    def laws(self) -> tuple[str, ...]:
        return tuple(v.law for v in self.violations)


VALID_REPORT = ValidationReport(valid=True)


class FinCategory:
    """A finite category: objects, morphisms, identities, composition.

    ``composition`` is a dict ``(g, f) -> h`` meaning ``h = g ∘ f`` and is
    expected exactly on pairs with ``cod(f) = dom(g)``.  Alternatively a
    ``compose_rule(g, f) -> morphism id or None`` may be supplied for
    generated categories whose table would be too large to store.

    Construction performs structural validation only (identifiers declared,
    identities present for every object).  Law checking is a separate step,
    :func:`validate_category`.
    """

    __slots__ = (
        "name",
        "objects",
        "morphisms",
        "identities",
        "composition",
        "compose_rule",
        "_hom_index",
        "_into",
        "_out_of",
        "_caches",
    )

    def __init__(
        self,
        name: str,
        objects,
        morphisms: dict[str, tuple[str, str]],
        identities: dict[str, str],
        composition: Optional[dict[tuple[str, str], str]] = None,
        compose_rule: Optional[Callable[[str, str], Optional[str]]] = None,
    ) -> None:
        _check_identifier(name, "category")
        objs = tuple(sorted(objects))
        if len(set(objs)) != len(objs):
            raise StructuralError(f"duplicate object identifiers in category {name!r}")
        for o in objs:
            _check_identifier(o, "object")
        obj_set = set(objs)

        mors = dict(morphisms)
        for m, (d, c) in mors.items():
            _check_identifier(m, "morphism")
            if d not in obj_set:
                raise StructuralError(f"morphism {m!r} has undeclared domain {d!r}")
            if c not in obj_set:
                raise StructuralError(f"morphism {m!r} has undeclared codomain {c!r}")

        idents = dict(identities)
        for o in objs:
            if o not in idents:
                raise StructuralError(f"object {o!r} has no identity morphism")
        for o, m in idents.items():
            if o not in obj_set:
                raise StructuralError(f"identity declared for undeclared object {o!r}")
            if m not in mors:
                raise StructuralError(f"identity of {o!r} references undeclared morphism {m!r}")

        if composition is not None and compose_rule is not None:
            raise StructuralError("supply either a composition table or a compose_rule, not both")
        if composition is None and compose_rule is None:
            composition = {}
        if composition is not None:
            for (g, f), h in composition.items():
                for m in (g, f, h):
                    if m not in mors:
                        raise StructuralError(f"composition entry references undeclared morphism {m!r}")

        self.name = name
        self.objects = objs
        self.morphisms = mors
        self.identities = idents
        self.composition = composition
        self.compose_rule = compose_rule
        self._hom_index: Optional[dict[tuple[str, str], tuple[str, ...]]] = None
        self._into: Optional[dict[str, tuple[str, ...]]] = None
        self._out_of: Optional[dict[str, tuple[str, ...]]] = None
        self._caches: dict = {}

    # -- read surface ---------------------------------------------------

    def dom(self, m: str) -> str:
        return self.morphisms[m][0]

    def cod(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, obj: str) -> str:
        return self.identities[obj]

    def has_object(self, obj: str) -> bool:
        return obj in self.identities

    def has_morphism(self, m: str) -> bool:
        return m in self.morphisms

    def _build_index(self) -> None:
        homs: dict[tuple[str, str], list[str]] = {}
        into: dict[str, list[str]] = {o: [] for o in self.objects}
        out_of: dict[str, list[str]] = {o: [] for o in self.objects}
        for m in sorted(self.morphisms):
            d, c = self.morphisms[m]
            homs.setdefault((d, c), []).append(m)
            into[c].append(m)
            out_of[d].append(m)
        self._hom_index = {k: tuple(v) for k, v in homs.items()}
        self._into = {k: tuple(v) for k, v in into.items()}
        self._out_of = {k: tuple(v) for k, v in out_of.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        """All morphisms a -> b, sorted."""
        if self._hom_index is None:
            self._build_index()
        return self._hom_index.get((a, b), ())

    def hom_count(self, a: str, b: str) -> int:
        return len(self.hom(a, b))

    def into(self, b: str) -> tuple[str, ...]:
        if self._into is None:
            self._build_index()
        return self._into[b]

    def out_of(self, a: str) -> tuple[str, ...]:
        if self._out_of is None:
            self._build_index()
        return self._out_of[a]

    def composable(self, g: str, f: str) -> bool:
        return self.cod(f) == self.dom(g)

    def compose(self, g: str, f: str) -> Optional[str]:
        """The composite g∘f, or None when undefined.

        For table-backed categories a missing entry on a composable pair
        returns None as well; ``validate_category`` reports it.
        """
        if self.composition is not None:
            return self.composition.get((g, f))
        if not self.composable(g, f):
            return None
        return self.compose_rule(g, f)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All (g, f) with cod(f) = dom(g), ordered by (g, f)."""
        for mid in self.objects:
            for g in self.out_of(mid):
                for f in self.into(mid):
                    yield (g, f)

    # -- equality -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        """Extensional equality: same declarations and same composites."""
        if not isinstance(other, FinCategory):
            return NotImplemented
        if (
            self.name != other.name
            or self.objects != other.objects
            or self.morphisms != other.morphisms
            or self.identities != other.identities
        ):
            return False
        return all(self.compose(g, f) == other.compose(g, f) for g, f in self.composable_pairs())

    def __hash__(self) -> int:
        return id(self)

    def __repr__(self) -> str:
        return (
            f"FinCategory({self.name!r}, {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )


@dataclass(frozen=True)
class FunctorData:
    """A functor presented by explicit object and morphism maps."""

    name: str
    source: str
    target: str
    object_map: dict[str, str] = field(compare=False)
    morphism_map: dict[str, str] = field(compare=False)

    def apply_object(self, obj: str) -> str:
        return self.object_map[obj]

    def apply_morphism(self, m: str) -> str:
        return self.morphism_map[m]


def validate_category(cat: FinCategory) -> ValidationReport:
    """Check the category axioms, reporting every violation with a witness.

    Laws checked, in order: identity typing, totality of composition on
    composable pairs (and absence elsewhere, for table-backed categories),
    endpoint typing of composites, the two identity laws, associativity.
    Witnesses are lexicographically minimal because enumeration is sorted.

    Cost is linear in composable pairs plus composable triples; intended
    for table-scale categories.
    """
    violations: list[Violation] = []

    for a in cat.objects:
        i = cat.identities[a]
        d, c = cat.morphisms[i]
        if (d, c) != (a, a):
            violations.append(
                Violation("IdentityTyping", (a, i), f"identity of {a} must be {a} -> {a}, is {d} -> {c}")
            )

    if cat.composition is not None:
        for (g, f) in sorted(cat.composition):
            if not cat.composable(g, f):
                violations.append(
                    Violation(
                        "SpuriousComposite",
                        (g, f),
                        f"table entry for non-composable pair: cod({f}) = {cat.cod(f)} != dom({g}) = {cat.dom(g)}",
                    )
                )

    composites: dict[tuple[str, str], str] = {}
    for g, f in cat.composable_pairs():
        h = cat.compose(g, f)
        if h is None:
            violations.append(Violation("MissingComposite", (g, f), f"no entry for {g} ∘ {f}"))
            continue
        if not cat.has_morphism(h):
            violations.append(
                Violation("MissingComposite", (g, f, h), f"{g} ∘ {f} names undeclared morphism {h}")
            )
            continue
        composites[(g, f)] = h
        if cat.dom(h) != cat.dom(f) or cat.cod(h) != cat.cod(g):
            violations.append(
                Violation(
                    "CompositeTyping",
                    (g, f, h),
                    f"{g} ∘ {f} = {h} must go {cat.dom(f)} -> {cat.cod(g)}, goes {cat.dom(h)} -> {cat.cod(h)}",
                )
            )

    for f in sorted(cat.morphisms):
        left = composites.get((cat.identities[cat.cod(f)], f))
        if left is not None and left != f:
            violations.append(Violation("LeftIdentity", (f,), f"id ∘ {f} = {left} != {f}"))
        right = composites.get((f, cat.identities[cat.dom(f)]))
        if right is not None and right != f:
            violations.append(Violation("RightIdentity", (f,), f"{f} ∘ id = {right} != {f}"))

    for g, f in cat.composable_pairs():
        gf = composites.get((g, f))
        if gf is None:
            continue
        for h in cat.out_of(cat.cod(g)):
            hg = composites.get((h, g))
            h_gf = composites.get((h, gf))
            if hg is None or h_gf is None:
                continue
            hg_f = composites.get((hg, f))
            if hg_f is None:
                continue
            if hg_f != h_gf:
                violations.append(
                    Violation(
                        "Associativity",
                        (h, g, f),
                        f"({h} ∘ {g}) ∘ {f} = {hg_f} but {h} ∘ ({g} ∘ {f}) = {h_gf}",
                    )
                )

    if violations:
        return ValidationReport(valid=False, violations=tuple(violations))
    return VALID_REPORT


def validate_functor(F: FunctorData, src: FinCategory, tgt: FinCategory) -> ValidationReport:
    """Check the functor laws of ``F`` against its source and target.

    Name mismatches and partial/dangling maps are structural errors; law
    failures (endpoint, identity, composition preservation) are collected.
    """
    if F.source != src.name:
        raise StructuralError(f"functor {F.name!r} declares source {F.source!r}, given {src.name!r}")
    if F.target != tgt.name:
        raise StructuralError(f"functor {F.name!r} declares target {F.target!r}, given {tgt.name!r}")
    for a in src.objects:
        if a not in F.object_map:
            raise TotalityError(f"functor {F.name!r} has no onobject entry for {a!r}")
    for a, b in F.object_map.items():
        if not src.has_object(a):
            raise StructuralError(f"onobject entry for undeclared object {a!r}")
        if not tgt.has_object(b):
            raise StructuralError(f"onobject {a} = {b}: {b!r} not an object of {tgt.name!r}")
    for m in src.morphisms:
        if m not in F.morphism_map:
            raise TotalityError(f"functor {F.name!r} has no onmorphism entry for {m!r}")
    for m, n in F.morphism_map.items():
        if not src.has_morphism(m):
            raise StructuralError(f"onmorphism entry for undeclared morphism {m!r}")
        if not tgt.has_morphism(n):
            raise StructuralError(f"onmorphism {m} = {n}: {n!r} not a morphism of {tgt.name!r}")

    violations: list[Violation] = []
    for m in sorted(src.morphisms):
        n = F.morphism_map[m]
        want = (F.object_map[src.dom(m)], F.object_map[src.cod(m)])
        got = (tgt.dom(n), tgt.cod(n))
        if want != got:
            violations.append(
                Violation(
                    "FunctorTyping",
                    (m, n),
                    f"image of {m} must go {want[0]} -> {want[1]}, goes {got[0]} -> {got[1]}",
                )
            )
    for a in src.objects:
        n = F.morphism_map[src.identities[a]]
        want = tgt.identities[F.object_map[a]]
        if n != want:
            violations.append(
                Violation("FunctorIdentity", (a, n), f"image of id_{a} is {n}, expected {want}")
            )
    for g, f in src.composable_pairs():
        h = src.compose(g, f)
        if h is None:
            continue
        image = tgt.compose(F.morphism_map[g], F.morphism_map[f])
        if image != F.morphism_map[h]:
            violations.append(
                Violation(
                    "FunctorComposition",
                    (g, f),
                    f"F({g} ∘ {f}) = {F.morphism_map[h]} but F({g}) ∘ F({f}) = {image}",
                )
            )

    if violations:
        return ValidationReport(valid=False, violations=tuple(violations))
    return VALID_REPORT


class TotalityError(StructuralError):
    """A functor map lacks an entry for a declared object or morphism."""


def is_faithful(F: FunctorData, src: FinCategory) -> tuple[bool, Optional[tuple[str, str]]]:
    """Decide faithfulness by scanning all parallel pairs of ``src``.

    Returns (True, None) when F is injective on every hom-set, otherwise
    (False, (f, g)) for the lexicographically first parallel pair with
    equal images.
    """
    for a in src.objects:
        for b in src.objects:
            parallel = src.hom(a, b)
            seen: dict[str, str] = {}
            for f in parallel:
                image = F.apply_morphism(f)
                if image in seen:
                    return False, (seen[image], f)
                seen[image] = f
    return True, None


def find_isomorphisms(cat: FinCategory, a: str, b: str) -> list[str]:
    """All f: a -> b admitting a two-sided inverse, sorted."""
    if not cat.has_object(a) or not cat.has_object(b):
        raise StructuralError(f"undeclared object in isomorphism query: {a!r}, {b!r}")
    id_a = cat.identities[a]
    id_b = cat.identities[b]
    result = []
    for f in cat.hom(a, b):
        for g in cat.hom(b, a):
            if cat.compose(g, f) == id_a and cat.compose(f, g) == id_b:
                result.append(f)
                break
    return result


def opposite(cat: FinCategory) -> FinCategory:
    """The opposite category: endpoints swapped, composition transposed.

    Identifiers and name are preserved, so the operation is an involution,
    bit-exact on the serialized form.
    """
    morphisms = {m: (c, d) for m, (d, c) in cat.morphisms.items()}
    if cat.composition is not None:
        composition = {(f, g): h for (g, f), h in cat.composition.items()}
        return FinCategory(cat.name, cat.objects, morphisms, cat.identities, composition=composition)
    inner = cat
    return FinCategory(
        cat.name,
        cat.objects,
        morphisms,
        cat.identities,
        compose_rule=lambda g, f: inner.compose(f, g),
    )
