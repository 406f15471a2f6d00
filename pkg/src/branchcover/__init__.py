"""Exact link invariants for cyclic branched covers, and local checks of
multivalued harmonic 1-forms near their branch locus."""

from .braid import BraidWord, alexander_from_braid, alexander_from_seifert, closure_components, parse_braid
from .cover import Conclusion, CoverVerdict, compose, criterion, family_order, homology_order, link_determinant
from .laurent import LaurentPoly, UnitClass, normalize, parse_poly, resultant

__version__ = "0.1.0"
