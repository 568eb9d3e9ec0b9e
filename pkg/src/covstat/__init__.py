"""Expected fixed points and embeddings in random covers of the genus-2 surface."""

from .asympt import LaurentSeriesQ
from .core import core_cyclic, verify_core
from .expect import build_frame, e_emb_exact, e_emb_series, e_fix_exact, e_fix_series, xi_exact
from .tiled import TiledSurface
from .words import parse_word

__version__ = "0.1.0"
