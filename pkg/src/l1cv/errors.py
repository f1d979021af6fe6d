"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition (shape, sign, range)."""


class ParameterRegimeError(RuntimeError):
    """A closed form was evaluated outside the regime where it is valid.

    Raised, for example, when a predicted variance comes out negative or a
    confidence-interval denominator changes sign; carries enough context to
    tell the caller how to get back into the valid regime.
    """


class ConfigError(ValueError):
    """An experiment configuration failed schema validation.

    The message always names the offending key.
    """
