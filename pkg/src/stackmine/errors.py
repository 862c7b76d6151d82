"""Exception types raised across the toolkit."""


class StackmineError(Exception):
    """Base class for all toolkit errors."""


class MalformedXmlError(StackmineError):
    """Input is not parseable XML."""


class MissingConceptNameError(StackmineError):
    """An event lacks the required concept:name attribute."""


class UnbalancedLifecycleError(StackmineError):
    """start/complete events do not nest like balanced parentheses."""

    def __init__(self, message, trace_index=None, position=None):
        super().__init__(message)
        self.trace_index = trace_index
        self.position = position


class MissingLifecycleError(StackmineError):
    """An event lacks the lifecycle:transition attribute."""


class EmptySegmentError(StackmineError):
    """Splitting an activity name produced an empty path segment."""


class MissingAttributeError(StackmineError):
    """An event lacks an attribute required by the active heuristic."""

    def __init__(self, message, event_index=None, key=None):
        super().__init__(message)
        self.event_index = event_index
        self.key = key


class UnboundRecursionError(StackmineError):
    """A recursion leaf has no enclosing named subtree with the same name."""


class InvalidRangeError(StackmineError):
    """min_depth exceeds max_depth."""


class EmptyGraphError(StackmineError):
    """Cut detection was asked to operate on a graph without nodes."""


class UncoveredActivityError(StackmineError):
    """A log split met an activity outside every partition block."""


class RecursionNotRepresentableError(StackmineError):
    """A finite Petri net cannot express an unbounded recursion leaf."""

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class CompletenessUnreachableError(StackmineError):
    """Directly-follows completeness was not reached within the bound cap."""
