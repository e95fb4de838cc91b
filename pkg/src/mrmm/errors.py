"""Exception types raised across the package.

Everything derives from ``MrmmError`` (itself a ``ValueError``) so callers can
catch one class; the CLI maps these to exit status 1.
"""


class MrmmError(ValueError):
    pass


class InvalidInputError(MrmmError):
    pass


class InvalidModulusError(MrmmError):
    pass


class InvalidDegreeError(MrmmError):
    pass


class UnsupportedDegreeError(MrmmError):
    pass


class ShapeError(MrmmError):
    pass


class SearchExhaustedError(MrmmError):
    def __init__(self, iterations):
        super().__init__(f"no primitive polynomial found after {iterations} candidates")
        self.iterations = iterations


class ResourceGuardError(MrmmError):
    pass


class EquivalenceError(MrmmError):
    pass
