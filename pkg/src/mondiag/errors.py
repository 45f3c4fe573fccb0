"""Exception hierarchy.

``UsageError`` and ``ParseError`` map to CLI exit code 2; every other
``DiagramError`` is a domain failure (exit code 1).
"""


class DiagramError(Exception):
    pass


class UsageError(DiagramError):
    pass


class ParseError(UsageError):
    def __init__(self, lineno, reason):
        super().__init__("line %d: %s" % (lineno, reason))
        self.lineno = lineno
        self.reason = reason


class LookupFailure(UsageError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class StructureError(UsageError):
    """Diagram fields do not resolve (unknown node, edge, label)."""


class ClosureError(DiagramError):
    """Conditional-construction closure forced an order cycle."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class LayerOrderError(DiagramError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class ValidityError(DiagramError):
    def __init__(self, report):
        super().__init__("invalid diagram: " + "; ".join(
            "boundary %d: %s vs %s" % m for m in report.text_mismatches()))
        self.report = report


class CompositionError(DiagramError):
    pass


class ModelError(DiagramError):
    pass


class InvariantError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
