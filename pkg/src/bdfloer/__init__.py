"""Knot Floer complexes of blown-down two-bridge links.

The package computes, with exact arithmetic throughout:

- genus-one doubly pointed Heegaard diagrams for the knots obtained by
  blowing down one component of a two-bridge link, via vertical and
  horizontal twist moves on a lifted curve (``diagram``);
- the bifiltered chain complexes over F_2[U, U^-1] extracted from bigon
  counts, with reduction, isomorphism testing and model complexes
  (``complexes``, ``models``);
- the filtered mapping cone computing the (m,1)-cable of the meridian in
  -1-surgery, with its truncation and explicit reduced form (``cone``);
- the phi concordance invariants read off a standard complex (``phi``).

The conventions of the diagram engine (twist directions, basepoint
placement) are pinned by requiring the unknot diagrams and the explicit
length-one staircase family to come out on the nose; see README.
"""

from .complexes import BifilteredComplex, Gen, from_bigons
from .tangles import Tangle, eval_cf, normalize_cf

__all__ = [
    "BifilteredComplex",
    "Gen",
    "Tangle",
    "eval_cf",
    "from_bigons",
    "normalize_cf",
]

__version__ = "0.1.0"
