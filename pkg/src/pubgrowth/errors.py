"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` so the CLI can emit
single-line JSON errors without string matching.
"""


class PubGrowthError(Exception):
    code = "error"


class EmptyInput(PubGrowthError):
    code = "empty_input"


class NonMonotonicCumulative(PubGrowthError):
    code = "non_monotonic_cumulative"


class InsufficientData(PubGrowthError):
    code = "insufficient_data"


class SchemaError(PubGrowthError):
    code = "schema_error"


class EmptySelection(PubGrowthError):
    code = "empty_selection"


class ConvergenceFailure(PubGrowthError):
    code = "convergence_failure"

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class NumericalFailure(PubGrowthError):
    code = "numerical_failure"


class NoModelFound(PubGrowthError):
    code = "no_model_found"


class InvalidHorizon(PubGrowthError):
    code = "invalid_horizon"


class InvalidCoefficients(PubGrowthError):
    code = "invalid_coefficients"


class WrongScale(PubGrowthError):
    code = "wrong_scale"
