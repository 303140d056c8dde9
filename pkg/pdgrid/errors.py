# pdgrid/errors.py
"""Exceptions raised by the simulator and the exact analyser."""


class PDGridError(Exception):
    """Base class for all pdgrid errors."""


class InvalidParams(PDGridError, ValueError):
    """Parameters violate a documented constraint."""


class UnresolvedTie(PDGridError):
    """Maximum-rank vertices of a closed neighbourhood hold both strategies.

    Only possible when the cheating advantage lies outside (1, 4/3).
    """

    def __init__(self, vertex):
        super().__init__(f'Unresolved score tie around vertex {vertex}')
        self.vertex = vertex


class PermMismatch(PDGridError):
    """An update order is not a permutation of the current weak set."""


class EscapedWindow(PDGridError):
    """A non-field vertex came within the escape margin of a window boundary."""

    def __init__(self, vertex, round_index):
        super().__init__(f'Vertex {vertex} escaped the window at round {round_index}')
        self.vertex = vertex
        self.round_index = round_index


class ThresholdExceeded(PDGridError):
    """A weak set is too large to enumerate all update orders."""

    def __init__(self, size, threshold):
        super().__init__(f'Weak set of size {size} exceeds enumeration threshold {threshold}')
        self.size = size
        self.threshold = threshold


class DepthExceeded(PDGridError):
    """Forced rounds did not end within the allowed depth."""


class ScheduleError(PDGridError):
    """Input data does not match an expected schema."""


class VerificationFailed(PDGridError):
    """A verification suite found a violated property."""
