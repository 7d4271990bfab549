"""UAV visual coverage path planning with prompt-informed reward shaping.

Thin wrapper over the C++ core; everything lives in the `_pirl` extension.
"""

from ._pirl import *  # noqa: F401,F403
from ._pirl import __doc__  # noqa: F401
