"""Python front end for the charvar character variety solver.

Diagrams are plain dicts in the JSON schema used by the command line tool:
``{"genus": g, "alpha": [[["a", 1, 1], ...], ...], "beta": [...], "name": ...}``.
"""

import json

from ._charvar import CharvarError
from . import _charvar

__all__ = ["CharvarError", "diagram", "validate", "h1", "euler", "census",
           "smith", "ht_embed", "run"]


def _dump(d):
    return d if isinstance(d, str) else json.dumps(d)


def diagram(name):
    """Diagram for a constructor name such as ``"lens(5,2)"`` or ``"s3_genus(1)#s2xs1"``."""
    return json.loads(_charvar.diagram(name))


def validate(d):
    """List of validation failures, empty for a valid diagram."""
    return _charvar.validate(_dump(d))


def h1(d):
    """First homology as ``(free_rank, [torsion coefficients])``."""
    rank, torsion = _charvar.h1(_dump(d))
    return rank, list(torsion)


def euler(d):
    return _charvar.euler(_dump(d))


def census(d, seed=1, starts=0):
    """Component census report; ``starts=0`` uses the default 500 * 2^genus."""
    return json.loads(_charvar.census(_dump(d), seed, starts))


def smith(matrix):
    """Invariant factors of an integer matrix, as Python ints."""
    return [int(f) for f in _charvar.smith(matrix)]


def ht_embed(handles):
    """Punctures (C1, C2, C3) of the h_t embedding for handle quaternions (w, x, y, z)."""
    return [tuple(c) for c in _charvar.ht_embed([tuple(h) for h in handles])]


def run(*args):
    """Run a command line invocation; returns ``(exit_code, stdout, stderr)``."""
    return _charvar.run([str(a) for a in args])
