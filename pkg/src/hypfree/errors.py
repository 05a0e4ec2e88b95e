"""Shared exception types."""


class HypfreeError(Exception):
    """Base class for all library errors."""


class NotLoxodromic(HypfreeError):
    """Fixed-point extraction was requested for a non-loxodromic isometry."""


class NotIndependent(HypfreeError):
    """The two given loxodromics share a boundary fixed point."""


class PrefixTooShallow(HypfreeError):
    """A cylinder prefix is too short to be translated as a single cylinder."""


class EqualEnds(HypfreeError):
    """The two ends coincide, so their divergence depth is undefined."""


class SearchExhausted(HypfreeError):
    """A bounded search hit its limits before satisfying its condition."""

    def __init__(self, condition: str, limits: tuple[int, int]):
        self.condition = condition
        self.limits = limits
        super().__init__(f"search exhausted at limits {limits}: {condition}")


class GroupTooLarge(HypfreeError):
    """The group order exceeds the cap of a brute-force operation."""


class BudgetExceeded(HypfreeError):
    """A combinatorial enumeration exceeded its work budget."""


class ParseError(HypfreeError):
    """Malformed input text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
