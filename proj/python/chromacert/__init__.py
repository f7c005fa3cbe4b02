"""Bessel-sum criteria for monochromatic configurations and an F_p x F_p laboratory."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
