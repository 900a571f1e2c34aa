"""Exact homology of the Vassiliev diagram complexes.

Diagrams are passed as their text serialization
``n;chords=a-b,...;bottom=i,...;top=k1,...,kn`` and linear combinations as
``{serialization: int}`` dictionaries. Parities are ``"odd"`` or ``"even"``
(the parity of d); complexes are ``Tss, Tss_h, Ts, T, T0, Z``; rings are
``"Z"``, ``"Q"`` or ``"Fp:<p>"``.
"""

import json as _json

from ._vw import (
    ENGINE_VERSION,
    ArgumentError,
    EngineError,
    InvalidDiagram,
    InvariantFailure,
    ParseError,
    ResourceLimit,
    Z,
    Zhat,
    basis,
    bigrading,
    chord_space_dims,
    d,
    d_h,
    d_v,
    differential_matrix,
    dimension,
    divided_power,
    dual_homology,
    homology,
    is_admissible,
    iso_I,
    iso_I_inv,
    normalize,
    product,
    reduce,
    star,
    suite_names,
    validate,
    vdash,
    verify,
)
from ._vw import homology_table as _homology_table


def homology_table(complexes, parities, i_max, ring="Z", jobs=1):
    """Rows ``{"complex", "parity", "i", "j", "ring", "free_rank", "torsion"}``.

    ``(i, i+1)`` rows of T also carry ``zhat_nonzero`` and ``zhat_generates``.
    """
    if isinstance(complexes, str):
        complexes = [complexes]
    if isinstance(parities, str):
        parities = ["even", "odd"] if parities == "both" else [parities]
    return _json.loads(_homology_table(list(complexes), list(parities), i_max, ring, jobs))


def group_str(group):
    """Readable form of a homology group dictionary, e.g. ``Z + Z/2``."""
    parts = []
    if group["free_rank"] == 1:
        parts.append("Z")
    elif group["free_rank"] > 1:
        parts.append("Z^%d" % group["free_rank"])
    parts += ["Z/%d" % t for t in group["torsion"]]
    return " + ".join(parts) if parts else "0"


__all__ = [name for name in dir() if not name.startswith("_")]
