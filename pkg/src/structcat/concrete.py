"""Concrete categories: a category C, a base category X, and a faithful
forgetful functor U: C -> X.

The central primitive is the lifting question: given an X-morphism
f: U(B) -> U(A), is there a C-morphism B -> A lying over it?  Because U
is faithful such a lift is unique when it exists, so ``lift`` returns the
witness morphism rather than a bare boolean; counterexample reports
elsewhere in the package quote these witnesses.

Object and morphism equality in X is identifier equality within the one
loaded base category.  Structures are only ever compared over an equal
base object, never transported along X-isomorphisms.
"""

from __future__ import annotations

from typing import Optional

from .fincat import (
    FinCategory,
    FunctorData,
    StructuralError,
    ValidationReport,
    WorkbenchError,
    is_faithful,
    opposite,
    validate_category,
    validate_functor,
)


class InvalidCategoryError(WorkbenchError):
    """A category offered as part of a concrete category fails its axioms."""

    def __init__(self, name: str, report: ValidationReport) -> None:
        self.report = report
        first = report.violations[0]
        super().__init__(f"category {name!r} is invalid: {first}")


class InvalidFunctorError(WorkbenchError):
    """The forgetful functor candidate fails the functor laws."""

    def __init__(self, name: str, report: ValidationReport) -> None:
        self.report = report
        first = report.violations[0]
        super().__init__(f"functor {name!r} is invalid: {first}")


class NotFaithfulError(WorkbenchError):
    """The forgetful functor candidate merges a parallel pair."""

    def __init__(self, name: str, witness: tuple[str, str]) -> None:
        self.witness = witness
        super().__init__(
            f"functor {name!r} is not faithful: parallel morphisms "
            f"{witness[0]} and {witness[1]} have the same image"
        )


class DomainMismatchError(WorkbenchError):
    """An X-morphism's endpoints do not match the requested lift or family."""


class ConcreteCategory:
    """The validated triple (C, U, X).

    ``C`` and ``X`` expose the :class:`~structcat.fincat.FinCategory` read
    surface; ``U`` exposes ``apply_object``/``apply_morphism``.  Instances
    are immutable after construction and safe for concurrent reads; derived
    indexes (fibers, lift tables) are built lazily and memoized.
    """

    def __init__(self, C, X, U, validate: bool = True) -> None:
        if validate:
            report = validate_category(C)
            if not report.valid:
                raise InvalidCategoryError(C.name, report)
            report = validate_category(X)
            if not report.valid:
                raise InvalidCategoryError(X.name, report)
            report = validate_functor(U, C, X)
            if not report.valid:
                raise InvalidFunctorError(U.name, report)
            faithful, witness = is_faithful(U, C)
            if not faithful:
                raise NotFaithfulError(U.name, witness)
        self.C = C
        self.X = X
        self.U = U
        self._fibers: Optional[dict[str, tuple[str, ...]]] = None
        self._lift_tables: dict[tuple[str, str], dict[str, str]] = {}
        self._caches: dict = {}

    # -- fibers ----------------------------------------------------------

    def fiber(self, x0: str) -> tuple[str, ...]:
        """All C-objects lying over the X-object ``x0``, sorted."""
        if not self.X.has_object(x0):
            raise StructuralError(f"{x0!r} is not an object of {self.X.name!r}")
        if self._fibers is None:
            fibers: dict[str, list[str]] = {}
            for a in self.C.objects:
                fibers.setdefault(self.U.apply_object(a), []).append(a)
            self._fibers = {k: tuple(v) for k, v in fibers.items()}
        return self._fibers.get(x0, ())

    # -- lifting ---------------------------------------------------------

    def _lift_table(self, b: str, a: str) -> dict[str, str]:
        """Map from X-morphism id to the unique C-morphism in hom(b, a) over it.

        Uniqueness is exactly faithfulness on hom(b, a); it is asserted
        while the table is built, so every lift call runs the assertion.
        """
        key = (b, a)
        table = self._lift_tables.get(key)
        if table is None:
            table = {}
            for m in self.C.hom(b, a):
                image = self.U.apply_morphism(m)
                if image in table:
                    raise NotFaithfulError(self.U.name, (table[image], m))
                table[image] = m
            self._lift_tables[key] = table
        return table

    def lift(self, f: str, b: str, a: str) -> Optional[str]:
        """The unique C-morphism b -> a over the X-morphism f, if any.

        ``f`` must run U(b) -> U(a); anything else is a DomainMismatchError.
        """
        if not self.X.has_morphism(f):
            raise StructuralError(f"{f!r} is not a morphism of {self.X.name!r}")
        ub, ua = self.U.apply_object(b), self.U.apply_object(a)
        if self.X.dom(f) != ub or self.X.cod(f) != ua:
            raise DomainMismatchError(
                f"{f} runs {self.X.dom(f)} -> {self.X.cod(f)}, "
                f"but a lift {b} -> {a} needs {ub} -> {ua}"
            )
        return self._lift_table(b, a).get(f)

    def opposite(self) -> "ConcreteCategory":
        """The opposite concrete category (C^op, U, X^op), memoized.

        The functor data is unchanged because objects and morphisms keep
        their identifiers; its laws and faithfulness transpose with the
        tables, so re-validation is skipped.
        """
        cached = self._caches.get("opposite")
        if cached is None:
            cached = ConcreteCategory(opposite(self.C), opposite(self.X), self.U, validate=False)
            cached._caches["opposite"] = self
            self._caches["opposite"] = cached
        return cached

    def __repr__(self) -> str:
        return f"ConcreteCategory({self.C.name!r} over {self.X.name!r} via {self.U.name!r})"


def new_concrete(C, X, U, validate: bool = True) -> ConcreteCategory:
    """Assemble and validate a concrete category.

    Rejects the triple unless U is a valid faithful functor C -> X.
    ``validate=False`` is reserved for generated instance categories whose
    scale forbids exhaustive law checking and whose construction guarantees
    the laws; everything user-supplied must keep the default.
    """
    return ConcreteCategory(C, X, U, validate=validate)


def lift(cc: ConcreteCategory, f: str, b: str, a: str) -> Optional[str]:
    """Module-level alias for :meth:`ConcreteCategory.lift`."""
    return cc.lift(f, b, a)


def fiber(cc: ConcreteCategory, x0: str) -> tuple[str, ...]:
    """Module-level alias for :meth:`ConcreteCategory.fiber`."""
    return cc.fiber(x0)
