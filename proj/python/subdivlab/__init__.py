"""Vector subdivision schemes with matrix masks.

Thin wrapper over the C++ core: exact rational mask analysis, dyadic
evaluation of refinable vector functions, and convergence-rate curves.
All functions return the same JSON / CSV text the ``subdivlab`` CLI prints.
"""

try:
    from . import _subdivlab as _core
except ImportError:  # in-tree builds leave the extension next to the package
    import _subdivlab as _core

SubdivError = _core.SubdivError
ParseError = _core.ParseError

corpus_ids = _core.corpus_ids
corpus_text = _core.corpus_text
analyze = _core.analyze
subdivide = _core.subdivide
rates = _core.rates
corpus_run = _core.corpus_run
design = _core.design

__version__ = "0.1.0"
__all__ = [
    "SubdivError",
    "ParseError",
    "corpus_ids",
    "corpus_text",
    "analyze",
    "subdivide",
    "rates",
    "corpus_run",
    "design",
]
