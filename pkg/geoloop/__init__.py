from .const import GEOLOOP_VERSION
from .loop_space import LoopSpace

__version__ = GEOLOOP_VERSION

__all__ = ["LoopSpace"]
