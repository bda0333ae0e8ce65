from ._blastsim import *  # noqa: F401,F403
from ._blastsim import __doc__  # noqa: F401
