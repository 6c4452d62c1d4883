"""Exact, checkable pieces of the free-group paradoxes.

Subpackages and modules:

* :mod:`paradoxkit.words`: reduced words over sigma and tau, the truncated
  paradox of the free group.
* :mod:`paradoxkit.rotations`: integer rotation matrices from Pythagorean
  triples and a brute-force freeness sweep.
* :mod:`paradoxkit.modular_cert`: mod-c range/kernel certificates.
* :mod:`paradoxkit.equidecomp`: piecewise bijections and the
  Schroeder-Bernstein combiner.
* :mod:`paradoxkit.orbits`: exact orbits, point absorption and the finite
  orbit lift.
"""

from .errors import CertificateError, EquidecompError, OrbitError, ParadoxKitError, TripleError
from .rotations import PYTHAGOREAN_345, PythagoreanTriple, ScaledVec, apply_word, brute_force_freeness
from .words import Letter, Word, enumerate_reduced, verify_f2_paradox

__version__ = "0.1.0"

__all__ = [
    "CertificateError", "EquidecompError", "OrbitError", "ParadoxKitError", "TripleError",
    "PYTHAGOREAN_345", "PythagoreanTriple", "ScaledVec", "apply_word", "brute_force_freeness",
    "Letter", "Word", "enumerate_reduced", "verify_f2_paradox", "__version__",
]
