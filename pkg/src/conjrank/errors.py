"""Exception hierarchy shared by every module of the package."""


class ConjRankError(Exception):
    """Base class for all package errors."""


class CapExceeded(ConjRankError):
    """A group or subgroup enumeration grew past its configured bound."""


class DegreeMismatch(ConjRankError):
    pass


class NotASubgroup(ConjRankError):
    pass


class NotAPGroup(ConjRankError):
    pass


class Singular(ConjRankError):
    """A linear system has no unique solution."""


class ClassMismatch(ConjRankError):
    """Burnside ring elements or classes belong to different groups."""


class ParseError(ConjRankError):
    pass


class BisetIndexError(ConjRankError):
    """|S| does not divide the size of a biset."""


class HypothesisFailed(ConjRankError):
    """A biset fails one of the hypotheses needed for the rank statement."""

    def __init__(self, hypothesis, message=None):
        self.hypothesis = hypothesis
        super().__init__(message or f"hypothesis failed: {hypothesis}")
