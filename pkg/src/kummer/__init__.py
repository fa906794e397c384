"""Genus-2 Kummer surface arithmetic and (N,N)-isogenies over finite fields.

The library implements two models of the Kummer surface of a genus-2 curve:

* the classical quartic model with coordinates built from a divisor's
  x-coordinates (``general_kummer``), and
* the four-theta-constant model with very cheap arithmetic (``fast_kummer``),

together with an isogeny pipeline (``isogeny``) that constructs explicit
degree-N coordinate maps with prescribed kernel for odd N, on either model,
using only exact finite-field linear algebra.
"""

from .field import Field, FieldElement, batch_invert
from .counters import OpCounter, count_ops

__all__ = ["Field", "FieldElement", "batch_invert", "OpCounter", "count_ops"]

__version__ = "0.1.0"
