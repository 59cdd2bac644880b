from ._gaussint import *  # noqa: F401,F403
from ._gaussint import __doc__  # noqa: F401
