from __future__ import annotations


class EngineError(Exception):
    """Raised when an engine computation receives invalid input or cannot produce a value."""


class NonPositiveParameter(EngineError):
    """A mass, length, temperature or series parameter that must be positive was not."""


class BadTolerance(EngineError):
    """Numeric tolerance overrides violate the configuration invariants."""


class BadParameter(EngineError):
    """A parameter lies outside the range an operation accepts."""


class EvaluationFailure(EngineError):
    """A function evaluated at a finite-difference stencil point was not finite."""


class SeriesNotConverged(EngineError):
    """A series hit its term cap before meeting the requested tolerance."""

    def __init__(self, message: str, *, terms_used: int, truncation_estimate: float) -> None:
        super().__init__(message)
        self.terms_used = terms_used
        self.truncation_estimate = truncation_estimate


class SeriesOverflow(EngineError):
    """Series terms exceeded the representable floating-point range."""


class LevelOutOfRange(EngineError):
    """A quantum number below 1 was requested."""


class NegativeVariance(EngineError):
    """A closed-form variance dipped below zero."""


class DomainError(EngineError):
    """A square-root or logarithm argument left its domain."""


class BadBasisSize(EngineError):
    """The truncated eigenbasis is smaller than the state under test."""


class DegenerateDenominator(EngineError):
    """A ratio's denominator vanished or changed sign."""


class TemperatureOrder(EngineError):
    """The cold bath is hotter than the hot bath."""


class ConfigError(EngineError):
    """Run configuration text or flags could not be turned into a RunConfig."""


class ParseError(ConfigError):
    def __init__(self, message: str, *, line: int | None = None) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class UnknownKey(ConfigError):
    def __init__(self, key: str, *, line: int | None = None) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}unknown key '{key}'")
        self.key = key
        self.line = line


class ConflictingFlags(ConfigError):
    """Two settings cannot hold at the same time."""
