"""
Error types shared by every workbench package
"""

from typing import Optional


class SpipError(Exception):
    """Base class for all workbench errors"""


class NotContractive(SpipError):
    """Affine map fails the exact spectral-norm test"""


class EmptyWindow(SpipError):
    """Integer box with no points"""


class InvalidCode(SpipError):
    """Symbolic code with a symbol outside [1, m]"""


class NoiseOutOfBounds(SpipError):
    """Injected noise component outside [-epsilon, epsilon]"""


class InvalidInstance(SpipError):
    """Instance missing a field an operation needs, or with bad parameters"""


class LengthMismatch(SpipError):
    """Code / state sequence lengths disagree with the instance"""


class CapExceeded(SpipError):
    """Exhaustive search grew past its configured cap"""

    def __init__(self, cap: int, reached: int, what: str = 'search'):
        super().__init__(f"{what} exceeded cap {cap} (reached {reached})")
        self.cap = cap
        self.reached = reached


class WindowOverflow(SpipError):
    """Backward search window grew past the configured size"""

    def __init__(self, side: int, limit: int):
        super().__init__(f"backward window side {side} exceeds limit {limit}")
        self.side = side
        self.limit = limit


class InvalidGraph(SpipError):
    """Malformed DAG or transition system"""


class NotAcyclic(InvalidGraph):
    """Graph contains a directed cycle"""


class SpacingTooSmall(SpipError):
    """Embedding still shows cross-talk after every resampling round"""


class EmptyHistogram(SpipError):
    """Histogram with total count below one"""


class ParseError(SpipError):
    """Input file could not be parsed; position says where"""

    def __init__(self, message: str, position: Optional[str] = None):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position
