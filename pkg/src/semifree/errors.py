"""Exception hierarchy for the engine.

Every validation failure raises a subclass of SemifreeError carrying enough
context (names, residual terms) to reconstruct what went wrong.
"""


class SemifreeError(Exception):
    """Base class for all engine errors."""


class DuplicateName(SemifreeError):
    pass


class DanglingEndpoint(SemifreeError):
    pass


class OrderViolation(SemifreeError):
    """A differential references a generator that is not strictly earlier."""


class DegreeMismatch(SemifreeError):
    pass


class DSquaredNonzero(SemifreeError):
    def __init__(self, failures):
        # failures: list of (generator name, residual Term)
        self.failures = failures
        names = ", ".join(name for name, _ in failures)
        super().__init__(f"d squared is nonzero on: {names}")


class EndpointMismatch(SemifreeError):
    pass


class UnknownGenerator(SemifreeError):
    pass


class UnknownObject(SemifreeError):
    pass


class RingMismatch(SemifreeError):
    pass


class NameCollision(SemifreeError):
    pass


class ChainMapViolation(SemifreeError):
    def __init__(self, violations):
        # violations: list of (generator name, residual Term)
        self.violations = violations
        names = ", ".join(name for name, _ in violations)
        super().__init__(f"chain map fails on: {names}")


class SourceTargetMismatch(SemifreeError):
    pass


class ConeNotCommuting(SemifreeError):
    pass


class NotClosed(SemifreeError):
    pass


class NotDegreeZero(SemifreeError):
    pass


class NotAUnit(SemifreeError):
    pass


class NotAStabilizationPair(SemifreeError):
    pass


class GeneratorStillUsed(SemifreeError):
    def __init__(self, name, used_by):
        self.name = name
        self.used_by = used_by
        super().__init__(f"generator {name!r} still used by d({used_by!r})")


class ShapeMismatch(SemifreeError):
    pass


class SquareNotCommuting(SemifreeError):
    pass


class PrerequisiteSquareFails(SemifreeError):
    pass


class NotLocalized(SemifreeError):
    pass


class NotAHomotopyEquivalenceDatum(SemifreeError):
    pass


class DslSyntaxError(SemifreeError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class ResolutionError(SemifreeError):
    pass


class UsageError(SemifreeError):
    """CLI argument errors (exit code 2)."""
