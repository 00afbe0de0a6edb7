"""Admissible fields, boundary identity checks and persistence scans."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
