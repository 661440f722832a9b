"""Exception hierarchy shared by every module of the package."""


class HeccError(Exception):
    """Base class for all package errors."""


# field / polynomial arithmetic

class BadDegreeError(HeccError, ValueError):
    pass


class NotPrimitiveError(HeccError, ValueError):
    pass


class BothZeroError(HeccError, ValueError):
    pass


class ZeroPolynomialError(HeccError, ValueError):
    pass


# matrices and Cauchy constructions

class PointCollisionError(HeccError, ValueError):
    pass


class ZeroScalingError(HeccError, ValueError):
    pass


class NotSquareError(HeccError, ValueError):
    pass


class BadDimensionsError(HeccError, ValueError):
    pass


class RankDeficientError(HeccError, ValueError):
    pass


class LengthMismatchError(HeccError, ValueError):
    pass


class InconsistentSystemError(HeccError, ValueError):
    """A linear system over GF(q) has no solution."""


# decoding

class BadIndexSetError(HeccError, ValueError):
    pass


class DecodeFailure(HeccError):
    """The received word is outside the guaranteed correction radius.

    ``reason`` is a short machine-readable tag naming the pipeline stage that
    gave up (``"sigma-inconsistent"``, ``"too-many-roots"``, ...).
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class NoSeparableCandidate(DecodeFailure):
    def __init__(self, detail: str = ""):
        super().__init__("no-separable-candidate", detail)


class LocalFailure(DecodeFailure):
    pass


class GlobalFailure(DecodeFailure):
    pass


class InconsistentSiblings(DecodeFailure):
    """Sibling blocks handed to the global decoder are not valid codewords."""

    def __init__(self, detail: str = ""):
        super().__init__("inconsistent-siblings", detail)


class ConfigInvalid(HeccError, ValueError):
    pass


# brute-force oracle

class TooLarge(HeccError, ValueError):
    pass


class AmbiguousDecode(HeccError):
    def __init__(self, candidates, distance):
        self.candidates = candidates
        self.distance = distance
        super().__init__(f"{len(candidates)} codewords at distance {distance}")


# archive / CLI

class BadArchive(HeccError, ValueError):
    pass


class OutOfRange(HeccError, ValueError):
    pass
