"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid hyperparameter, option, or config file content."""


class DomainError(ValueError):
    """Input value outside the mathematical domain of an operation."""


class ShapeError(ValueError):
    """Array shapes inconsistent with the operation's contract."""


class TrainingDiverged(RuntimeError):
    """Loss or gradient became non-finite during training."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch
