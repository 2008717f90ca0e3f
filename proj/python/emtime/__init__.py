"""Emergent time from clock-system entanglement."""

from ._emtime import *  # noqa: F401,F403
from ._emtime import (
    DomainError,
    Error,
    InvalidArgument,
    QuadratureError,
    UndefinedConditionalState,
)

__version__ = "0.1.0"
