"""Compositionality detection with ranked lists of term weights."""

from ._rlcomp import *  # noqa: F401,F403
from ._rlcomp import (  # noqa: F401
    CorpusIndex,
    Error,
    Lexicon,
    Scorer,
)

__version__ = "0.1.0"
