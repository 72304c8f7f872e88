from ._core import *  # noqa: F401,F403
from ._core import QnmError

__all__ = [n for n in dir() if not n.startswith("_")]
