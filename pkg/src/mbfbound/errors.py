## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === BASE ERROR
##


class MbfboundError(ValueError):
    """
    Base class for every domain failure raised by `mbfbound`. Subclasses `ValueError` so callers that only
    guard against bad arguments keep working.
    """


##
## === LINEAR ALGEBRA
##


class NotPositiveDefinite(MbfboundError):
    pass


class DimensionMismatch(MbfboundError):
    pass


class ConvergenceFailure(MbfboundError):
    pass


##
## === DISTRIBUTIONS
##


class DfTooSmall(MbfboundError):
    pass


class DomainError(MbfboundError):
    pass


class NonPositiveWeight(MbfboundError):
    pass


class StepUnderflow(MbfboundError):
    pass


class DegenerateSpectrum(MbfboundError):
    pass


##
## === TESTING PROCEDURES
##


class RankDeficientSample(MbfboundError):
    pass


class DimensionTooLarge(MbfboundError):
    pass


class NonPositiveK(MbfboundError):
    pass


class DegenerateStatistic(MbfboundError):
    pass


##
## === VERIFICATION
##


class NotMajorized(MbfboundError):
    pass


class LengthMismatch(MbfboundError):
    pass


##
## === INPUTS AND CONFIGURATION
##


class ConfigError(MbfboundError):
    pass


class ParseError(MbfboundError):
    pass


class DimensionError(MbfboundError):
    pass


## } MODULE
