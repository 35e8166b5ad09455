"""Translation equivalence in free groups: words, automorphisms, traces,
rose actions, axes and a bounded orbit-search checker."""

__version__ = "0.1.0"

from .words import Word, CyclicWord, parse_word
from .autos import Automorphism, Endomorphism, WhiteheadGraph
from .traces import TracePolynomial, trace_poly
from .equiv import Verdict, orbit_search, quick_check

__all__ = ["Word", "CyclicWord", "parse_word", "Automorphism", "Endomorphism",
           "WhiteheadGraph", "TracePolynomial", "trace_poly", "Verdict",
           "orbit_search", "quick_check"]
