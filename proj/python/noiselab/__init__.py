"""Noise sensitivity of monotone Boolean functions and random graph properties.

Thin wrapper over the compiled extension; everything lives in `_noiselab`.
"""

from ._noiselab import *  # noqa: F401,F403
from ._noiselab import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
