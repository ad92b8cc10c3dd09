class AtlasError(ValueError):
    """
    Base class for every error the command line reports to the user.
    Each subclass carries the process exit code used for it.
    """

    exit_code = 1


class ValidationError(AtlasError):
    """
    Custom exception for invalid parameters, settings or vectors.
    """

    exit_code = 1


class RuleParseError(AtlasError):
    """
    Raised when a rule string does not follow the B<digits>/S<digits> form.
    """

    exit_code = 3

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in '{text}'")
        self.text = text
        self.position = position


class StoreNotFoundError(AtlasError):
    """
    Custom exception for when a vector store file cannot be found.
    """

    exit_code = 4


class RuleNotInStoreError(AtlasError):
    """
    Raised when a query references a rule that the store does not hold.
    """

    exit_code = 5


class StoreFormatError(AtlasError):
    """
    Raised for bad magic, unsupported versions and truncated store files.
    """

    exit_code = 6


class StoreMergeError(AtlasError):
    """
    Raised when two stores cannot be merged (overlap or mismatched params).
    """

    exit_code = 7


class CheckpointError(AtlasError):
    """
    Raised when a sweep checkpoint is unreadable or belongs to another run.
    """

    exit_code = 8


class UnsupportedRuleError(AtlasError):
    """
    Raised when the engine is handed a rule containing B0. Emulation plans
    never produce such rules, so this signals a programming error.
    """

    exit_code = 9


class OutputWriteError(AtlasError):
    """
    Raised when a store, checkpoint or output file cannot be written.
    """

    exit_code = 10
