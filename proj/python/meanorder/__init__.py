from ._meanorder import *  # noqa: F401,F403
from ._meanorder import __version__  # noqa: F401
