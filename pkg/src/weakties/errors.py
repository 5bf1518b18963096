"""Exception types shared across the package."""


class DataError(ValueError):
    """Invalid input data: malformed files, domain violations, inconsistent inputs."""


class ParseError(DataError):
    """Malformed line in a text input file; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
