"""Exception hierarchy shared across the package.

Every exception carries a short ``kind`` string; the CLI prints it as the
machine-parsable ``error:<kind>:`` prefix.
"""


class FilledGroupsError(Exception):
    kind = "error"


class InvalidParameter(FilledGroupsError, ValueError):
    kind = "invalid-parameter"


class InvalidArgument(FilledGroupsError, ValueError):
    kind = "invalid-argument"


class CapacityError(FilledGroupsError):
    kind = "capacity"


class PermutationParseError(FilledGroupsError, ValueError):
    kind = "parse"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TableValidationError(FilledGroupsError, ValueError):
    """A Cayley table failed validation.

    ``cell`` is the first offending (row, column) pair when one exists.
    """

    kind = "validation"

    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        if cell is not None:
            message = f"{message} at cell ({cell[0]}, {cell[1]})"
        super().__init__(message)
        self.cell = cell


class TokenError(TableValidationError):
    pass


class ShapeError(TableValidationError):
    pass


class EntryRangeError(TableValidationError):
    pass


class LatinSquareError(TableValidationError):
    pass


class NoIdentityError(TableValidationError):
    pass


class AssociativityError(TableValidationError):
    pass
