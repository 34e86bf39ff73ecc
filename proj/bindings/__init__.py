from ._hmbec import *  # noqa: F401,F403
from ._hmbec import __doc__  # noqa: F401
