"""Error taxonomy.

Every domain failure raises a subclass of GroupoidError carrying a `detail`
dict that names the first offending object/arrow/element, so callers (and the
CLI) can serialize a machine-readable record {"error": name, "detail": {...}}.
"""

from __future__ import annotations


class GroupoidError(Exception):
    """Base class for all domain errors raised by this package."""

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.__class__.__name__)
        self.message = message
        self.detail = detail

    @property
    def name(self) -> str:
        return self.__class__.__name__

    def record(self) -> dict:
        return {"error": self.name, "detail": {"message": self.message, **self.detail}}


class MalformedInput(GroupoidError):
    """Input data is structurally unusable (missing keys, bad JSON shapes)."""


# groupoid validation

class MissingIdentity(GroupoidError):
    pass


class CompositionDomainMismatch(GroupoidError):
    pass


class AssociativityFailure(GroupoidError):
    pass


class InverseFailure(GroupoidError):
    pass


class DanglingArrowEndpoint(GroupoidError):
    pass


class UnknownObject(GroupoidError):
    pass


# constructors

class InvalidRelation(GroupoidError):
    pass


class InvalidGroupAction(GroupoidError):
    pass


class StructureMapOutOfRange(GroupoidError):
    pass


# morphism validation

class EndpointMismatch(GroupoidError):
    pass


class CompositionNotPreserved(GroupoidError):
    pass


class IdentityNotPreserved(GroupoidError):
    pass


# G-set validation

class StructureMapViolation(GroupoidError):
    pass


class IdentityActionViolation(GroupoidError):
    pass


class AssociativityActionViolation(GroupoidError):
    pass


class ActionDomainGap(GroupoidError):
    pass


class UnknownElement(GroupoidError):
    pass


# subgroupoids and conjugacy

class NotASubgroupoid(GroupoidError):
    pass


class MultiObjectSubgroupoid(GroupoidError):
    pass


class GroupoidMismatch(GroupoidError):
    pass


class NotNatural(GroupoidError):
    pass


class IsotropyTooLarge(GroupoidError):
    pass


class SearchBudgetExceeded(GroupoidError):
    pass


class TriangularityViolation(GroupoidError):
    pass


# ring layer

class TableMismatch(GroupoidError):
    pass


class UndecidableEquality(GroupoidError):
    pass


class SingularMatrix(GroupoidError):
    pass


class DecompositionMismatch(GroupoidError):
    pass
