"""Exception types raised across the package."""


class AmarError(Exception):
    """Base class for all errors raised by this package."""


class InvalidOrderError(AmarError):
    """Requested AR order is smaller than the largest timescale."""


class NotRepresentableError(AmarError):
    """Coefficient vector has no multiscale representation."""


class DegenerateParameterError(AmarError):
    """A parameter value collapses the model to a smaller one."""


class NonStationaryError(AmarError):
    """Model fails the exact stationarity test and the caller did not opt in."""


class ExplosivePathError(AmarError):
    """Simulated path overflowed to a non-finite value.

    Attributes
    ----------
    first_bad_index : int
        0-based index of the first non-finite observation.
    """

    def __init__(self, first_bad_index: int):
        self.first_bad_index = first_bad_index
        super().__init__(f"path became non-finite at index {first_bad_index}")


class SingularDesignError(AmarError):
    """Regression design matrix is rank deficient."""


class InsufficientDataError(AmarError):
    """Series too short for the requested fit."""


class InfeasibleThresholdError(AmarError):
    """Every threshold on the grid produced more scales than allowed."""


class InsufficientHistoryError(AmarError):
    """Forecast requested with fewer past observations than the largest scale."""


class DataGapError(AmarError):
    """Missing value in the interior of an ingested series."""


class CsvParseError(AmarError):
    """Malformed cell in an ingested CSV file.

    Attributes
    ----------
    row : int
        1-based row number of the offending record (header is row 1).
    """

    def __init__(self, message: str, row: int):
        self.row = row
        super().__init__(f"{message} (row {row})")
