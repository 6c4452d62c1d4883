"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` and, where one
exists, the offending ``witness`` (a word, vector or element).
"""

from __future__ import annotations

from typing import Any


class ParadoxKitError(Exception):
    code = "ERROR"

    def __init__(self, code: str, message: str, witness: Any = None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.witness = witness


class TripleError(ParadoxKitError, ValueError):
    """Raised for inputs that are not primitive Pythagorean triples."""


class CertificateError(ParadoxKitError):
    """Internal inconsistency while assembling a freeness certificate."""


class EquidecompError(ParadoxKitError, ValueError):
    """Invalid piecewise map, domain mismatch, or ancestry failure."""


class OrbitError(ParadoxKitError, ValueError):
    """Axis points, pole seeds and orbit collisions."""
