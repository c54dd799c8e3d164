from ._qmac import *  # noqa: F401,F403
from ._qmac import __doc__  # noqa: F401
