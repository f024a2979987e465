"""Non-semisimple quantum invariants of surgery-presented closed 3-manifolds.

Two invariants are computed for odd r >= 3 and the Lie algebra sl2: one from
the category of weight modules of the unrolled quantum group (via Kirby colors
and modified traces), one from the small quantum group (via its integral, the
Hennings-style evaluation of red surgery components, and the renormalized
trace).  On zero cohomology classes the two agree, and the package verifies
that agreement on a bundled corpus of scenes.
"""

from .scalars import Cyc, CycRing, Cx, cyc_arith, embed_complex, q_power

__all__ = [
    "Cyc",
    "CycRing",
    "Cx",
    "cyc_arith",
    "embed_complex",
    "q_power",
]

__version__ = "0.1.0"
