"""Exception hierarchy."""


class SpacetimeError(Exception):
    """Base class for all errors raised by this package."""


class GameStructureError(SpacetimeError, ValueError):
    pass


class CyclicGraph(GameStructureError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("graph has a directed cycle: " + " -> ".join(map(str, self.cycle)))


class EdgeLabelNotAvailable(GameStructureError):
    pass


class InfoSetOwnerMismatch(GameStructureError):
    pass


class EmptyActionSet(GameStructureError):
    pass


class UnknownPlayer(SpacetimeError, KeyError):
    pass


class NotAlternating(SpacetimeError, ValueError):
    def __init__(self, report):
        self.report = report
        rules = ", ".join(sorted({v.rule for v in report.violations}))
        super().__init__(f"game is not alternating (violated: {rules})")


class ScenarioError(SpacetimeError, ValueError):
    pass


class InconsistentEvents(ScenarioError):
    pass


class NonUniqueBridge(ScenarioError):
    pass


class NoBridge(ScenarioError):
    pass


class InconsistentAncestry(ScenarioError):
    pass


class CycleDetected(ScenarioError):
    pass


class PreconditionViolated(SpacetimeError, ValueError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"precondition '{check}' failed" + (f": {detail}" if detail else ""))


class DomainMismatch(SpacetimeError, ValueError):
    pass


class DomainNotContained(SpacetimeError, ValueError):
    pass


class NotSubset(SpacetimeError, ValueError):
    pass


class NotNormalized(SpacetimeError, ValueError):
    pass


class IncompatibleModel(SpacetimeError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"empirical model is not compatible: {report.witness}")


class DocumentError(SpacetimeError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


class DocumentSyntaxError(DocumentError):
    pass


class DocumentSemanticError(DocumentError):
    pass
