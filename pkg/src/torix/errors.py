"""Exception hierarchy.

``InputError`` subclasses describe malformed or inconsistent input data; the
CLI maps them to exit status 2.  Every other ``TorixError`` is a domain error
(a computation whose hypotheses are not met) and maps to exit status 1.
"""


class TorixError(Exception):
    """Base class for all errors raised by torix."""

    kind = "error"


class InputError(TorixError, ValueError):
    kind = "input_error"


class DimensionError(InputError):
    kind = "dimension_mismatch"


class FanError(InputError):
    kind = "invalid_fan"


class EnumerationCapError(TorixError):
    kind = "enumeration_cap_exceeded"


class TorsionClassGroupError(TorixError):
    kind = "torsion_class_group"


class NotSmallError(TorixError):
    kind = "action_not_small"


class SLConditionError(TorixError):
    kind = "sl_condition_violated"


class ConeCoverageError(TorixError):
    kind = "ray_outside_cones"
