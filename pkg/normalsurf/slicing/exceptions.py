from typing import Optional


class SlicingError(ValueError):
    pass


class ComplexError(SlicingError):
    pass


class ConstructionError(SlicingError):
    pass


class PartitionError(SlicingError):
    pass


class SearchError(SlicingError):
    pass


class FormatError(SlicingError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
