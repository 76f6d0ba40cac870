"""Exception hierarchy. Every error names the module that raised it."""
from __future__ import annotations

from typing import Any


class ToricKOError(RuntimeError):
    module = "toric_ko"
    code = "Error"

    def __init__(self, message: str, *, module: str | None = None) -> None:
        super().__init__(message)
        if module:
            self.module = module

    def to_dict(self) -> dict[str, Any]:
        return {"module": self.module, "code": self.code, "message": str(self)}


class ConfigError(ToricKOError):
    module = "config"
    code = "ConfigError"


# ─── user-input validation (exit code 2) ───────────────────────────────


class ValidationError(ToricKOError):
    code = "Validation"


class EmptyComplexError(ValidationError):
    module = "combinatorics"
    code = "EmptyComplex"


class NonPureError(ValidationError):
    module = "combinatorics"
    code = "NonPure"


class UnusedVertexError(ValidationError):
    module = "combinatorics"
    code = "UnusedVertex"


class IndexOutOfRangeError(ValidationError):
    module = "combinatorics"
    code = "IndexOutOfRange"


class DuplicateFacetError(ValidationError):
    module = "combinatorics"
    code = "DuplicateFacet"


class NegativeEntryError(ValidationError):
    module = "combinatorics"
    code = "NegativeEntry"


class DehnSommervilleError(ValidationError):
    module = "combinatorics"
    code = "DehnSommerville"


class NotAFaceError(ValidationError):
    module = "combinatorics"
    code = "NotAFace"


class DimensionMismatchError(ValidationError):
    module = "charfun"
    code = "DimensionMismatch"


class SingularAtFacetError(ValidationError):
    module = "charfun"
    code = "SingularAtFacet"

    def __init__(self, facet: tuple[int, ...], det: int) -> None:
        self.facet = facet
        self.det = det
        shown = "{" + ",".join(str(v) for v in facet) + "}"
        super().__init__(f"facet {shown} has minor determinant {det}, expected ±1")


class SingularAtFacetMod2Error(ValidationError):
    module = "charfun"
    code = "SingularAtFacetMod2"

    def __init__(self, facet: tuple[int, ...]) -> None:
        self.facet = facet
        shown = "{" + ",".join(str(v) for v in facet) + "}"
        super().__init__(f"facet {shown} has a minor that is singular mod 2")


class RankMismatchError(ValidationError):
    module = "face_ring"
    code = "RankMismatch"

    def __init__(self, degree: int, dim: int, expected: int) -> None:
        self.degree = degree
        self.dim = dim
        self.expected = expected
        super().__init__(f"H^{degree} has dimension {dim} but h-vector predicts {expected}")


class NoTopClassError(ValidationError):
    module = "face_ring"
    code = "NoTopClass"


class PairingDegenerateError(ValidationError):
    module = "steenrod"
    code = "PairingDegenerate"


# ─── other families ────────────────────────────────────────────────────


class SpecSyntaxError(ToricKOError):
    module = "cli"
    code = "Syntax"

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class CollapseNotEstablishedError(ToricKOError):
    module = "ko_groups"
    code = "CollapseNotEstablished"

    def __init__(self, message: str, bounds: Any = None) -> None:
        self.bounds = bounds
        super().__init__(message)


class DegreeOverflowError(ToricKOError):
    module = "face_ring"
    code = "DegreeOverflow"


class UnsupportedTorsionError(ToricKOError):
    module = "ko_groups"
    code = "UnsupportedTorsion"


class InternalInvariantError(ToricKOError):
    """A mathematically impossible state was reached. Always a bug."""

    code = "InternalInvariant"


class ChainComplexViolation(InternalInvariantError):
    module = "steenrod"
    code = "ChainComplexViolation"


class InconsistentWitnessError(InternalInvariantError):
    module = "steenrod"
    code = "InconsistentWitness"
