"""Structures over a base object and the finer/coarser order on them.

A structure is an equivalence class of C-objects sharing one base
object.  Two notions of the equivalence are supported:

* ``STRICT``: the class-defining isomorphism must lie over the identity
  of the base object.  Under a faithful forgetful functor, two objects
  are strictly equivalent exactly when the identity of the base lifts in
  both directions (the two lifts compose to morphisms over the identity,
  which faithfulness forces to be the identities).  In (Top, | |, Set)
  strict classes are singletons: a homeomorphism over the identity
  function forces equal topologies.

* ``LOOSE``: any C-isomorphism between objects with equal base will do.
  The two Sierpiński topologies on a 2-point set are loosely equivalent
  (the swap map) but strictly inequivalent.

Strict is the default throughout: only under strictness is the finer
relation representative-independent and antisymmetric, which the order
machinery here verifies rather than assumes.  The finer relation itself:
S1 is finer than S2 (S1 >= S2) when the identity of the base lifts to a
C-morphism from an S1-representative to an S2-representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .concrete import ConcreteCategory
from .fincat import (
    StructuralError,
    ValidationReport,
    VALID_REPORT,
    Violation,
    WorkbenchError,
    find_isomorphisms,
)


class BaseMismatchError(WorkbenchError):
    """Structures over different base objects are incomparable, not unequal."""


class EquivalenceMode(Enum):
    STRICT = "strict"
    LOOSE = "loose"


@dataclass(frozen=True)
class Structure:
    """An equivalence class of C-objects over a fixed base object.

    ``members`` is sorted and nonempty; the canonical representative is
    the least member.
    """

    base: str
    members: tuple[str, ...]
    mode: EquivalenceMode

    def __post_init__(self) -> None:
        if not self.members:
            raise StructuralError("a structure must have at least one member")
        if tuple(sorted(self.members)) != self.members:
            raise StructuralError("structure members must be sorted")

    @property
    def canonical(self) -> str:
        return self.members[0]

    def __str__(self) -> str:
        return f"S({self.canonical})"


@dataclass(frozen=True)
class StructurePoset:
    """All structures over one base object plus the full finer relation.

    ``edges`` holds ordered pairs (finer, coarser) of canonical member
    identifiers, including the reflexive pairs.
    """

    base: str
    mode: EquivalenceMode
    nodes: tuple[Structure, ...]
    edges: tuple[tuple[str, str], ...]


def _strictly_equivalent(cc: ConcreteCategory, a: str, b: str) -> bool:
    # Mutual lifts of the identity compose to lifts of the identity, which
    # faithfulness forces to be id_a and id_b; no isomorphism search needed.
    id_x = cc.X.identities[cc.U.apply_object(a)]
    return cc.lift(id_x, a, b) is not None and cc.lift(id_x, b, a) is not None


def _loosely_equivalent(cc: ConcreteCategory, a: str, b: str) -> bool:
    return bool(find_isomorphisms(cc.C, a, b))


def structure_classes(cc: ConcreteCategory, x0: str, mode: EquivalenceMode = EquivalenceMode.STRICT) -> list[Structure]:
    """Partition the fiber over ``x0`` into structures, sorted by canonical member."""
    cache = cc._caches.setdefault("structure_classes", {})
    key = (x0, mode)
    if key in cache:
        return list(cache[key])

    members = cc.fiber(x0)
    related = _strictly_equivalent if mode is EquivalenceMode.STRICT else _loosely_equivalent
    classes: list[list[str]] = []
    for a in members:
        for cls in classes:
            if related(cc, cls[0], a):
                cls.append(a)
                break
        else:
            classes.append([a])
    result = [Structure(base=x0, members=tuple(c), mode=mode) for c in classes]
    result.sort(key=lambda s: s.canonical)
    cache[key] = tuple(result)
    return result


def structure_of(cc: ConcreteCategory, a: str, mode: EquivalenceMode = EquivalenceMode.STRICT) -> Structure:
    """The structure (class) containing the C-object ``a``."""
    x0 = cc.U.apply_object(a)
    for s in structure_classes(cc, x0, mode):
        if a in s.members:
            return s
    raise StructuralError(f"{a!r} is not an object of {cc.C.name!r} over {x0!r}")


def structures_isomorphic(cc: ConcreteCategory, s1: Structure, s2: Structure) -> bool:
    """Whether some representatives of s1 and s2 are C-isomorphic.

    Representative choice does not matter (isomorphisms compose across the
    classes), so the scan exits on the first witnessing pair.
    """
    for a1 in s1.members:
        for a2 in s2.members:
            if find_isomorphisms(cc.C, a1, a2):
                return True
    return False


def finer(cc: ConcreteCategory, s1: Structure, s2: Structure) -> bool:
    """S1 >= S2: the identity of the base lifts from some member of s1 to some member of s2."""
    if s1.base != s2.base:
        raise BaseMismatchError(
            f"cannot compare structures over {s1.base!r} and {s2.base!r}"
        )
    id_x = cc.X.identities[s1.base]
    for a1 in s1.members:
        for a2 in s2.members:
            if cc.lift(id_x, a1, a2) is not None:
                return True
    return False


def structure_poset(cc: ConcreteCategory, x0: str, mode: EquivalenceMode = EquivalenceMode.STRICT) -> StructurePoset:
    """All structures over ``x0`` with every finer pair, reflexive pairs included."""
    nodes = structure_classes(cc, x0, mode)
    edges = [
        (s1.canonical, s2.canonical)
        for s1 in nodes
        for s2 in nodes
        if finer(cc, s1, s2)
    ]
    return StructurePoset(base=x0, mode=mode, nodes=tuple(nodes), edges=tuple(sorted(edges)))


def check_order_axioms(poset: StructurePoset) -> ValidationReport:
    """Verify reflexivity, transitivity and antisymmetry of the finer relation.

    In strict mode a violation would refute the order lemma for this
    category, so the report doubles as a lemma check; in loose mode it is
    a measurement (the paper-level argument needs strictness).
    """
    edge_set = set(poset.edges)
    nodes = [s.canonical for s in poset.nodes]
    violations: list[Violation] = []

    for a in nodes:
        if (a, a) not in edge_set:
            violations.append(Violation("Reflexivity", (a,), f"{a} is not finer than itself"))

    for a, b in poset.edges:
        for b2, c in poset.edges:
            if b2 == b and (a, c) not in edge_set:
                violations.append(
                    Violation("Transitivity", (a, b, c), f"{a} >= {b} >= {c} but not {a} >= {c}")
                )

    for a, b in poset.edges:
        if a != b and (b, a) in edge_set:
            violations.append(
                Violation("Antisymmetry", (a, b), f"{a} >= {b} and {b} >= {a} but {a} != {b}")
            )

    if violations:
        return ValidationReport(valid=False, violations=tuple(violations))
    return VALID_REPORT
