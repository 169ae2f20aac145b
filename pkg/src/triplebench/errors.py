"""Exception types raised across the package."""


class TripleBenchError(Exception):
    """Base class for all package errors."""


class NTriplesSyntaxError(TripleBenchError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class NoSeedsError(TripleBenchError):
    """The seed candidate pool is empty."""


class EmptyNeighborhoodError(TripleBenchError):
    """A seed has no usable triples for the requested strategy."""


class NoQualifyingPropertiesError(TripleBenchError):
    """No property of a class reaches the coverage threshold."""


class MixedSubjectsError(TripleBenchError):
    """Sentence plans to be merged do not share a subject."""


class UnsupportedDatatypeError(TripleBenchError):
    """A literal datatype has no verbalization rule."""


class GenerationExhaustedError(TripleBenchError):
    """A document slot could not be filled within the attempt budget."""


class DegenerateInputError(TripleBenchError, ValueError):
    """Input vectors are too short or have zero variance."""
