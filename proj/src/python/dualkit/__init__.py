"""Python access to the dualkit core: exact linear algebra, model cofibers,
rewrite-trace validation and collapse certificates."""

import json as _json
import os as _os
from pathlib import Path as _Path

_bundled = _Path(__file__).with_name("data")
if _bundled.is_dir() and not _os.environ.get("DUALKIT_DATA_DIR"):
    _os.environ["DUALKIT_DATA_DIR"] = str(_bundled)

from . import _dualkit  # noqa: E402
from ._dualkit import NotInvertible, UnsupportedShape  # noqa: E402,F401

__all__ = [
    "smith_normal_form",
    "cokernel",
    "verify_trace",
    "verify_corpus",
    "span_cofiber",
    "evconst_cofiber",
    "collapse_certificate",
    "validate_certificate",
    "NotInvertible",
    "UnsupportedShape",
]


def _call(fn, *args):
    return _json.loads(fn(*(a if isinstance(a, str) else _json.dumps(a) for a in args)))


def smith_normal_form(matrix):
    """U, D, V with U @ matrix @ V == D, plus the diagonal of D."""
    return _call(_dualkit.smith, matrix)


def cokernel(matrix):
    return _call(_dualkit.cokernel, matrix)


def verify_trace(trace):
    """Validate a trace given as a dict or a path to a JSON file."""
    if isinstance(trace, (str, _os.PathLike)) and _Path(trace).is_file():
        trace = _Path(trace).read_text()
    return _call(_dualkit.verify_trace, trace)


def verify_corpus():
    return [verify_trace(p) for p in _dualkit.corpus_files()]


def span_cofiber(morphism):
    return _call(_dualkit.span_cofiber, morphism)


def evconst_cofiber(morphism):
    return _call(_dualkit.evconst_cofiber, morphism)


def collapse_certificate(group, rep="reduced-regular"):
    return _json.loads(_dualkit.collapse(group, rep))


def validate_certificate(group, certificate):
    if not isinstance(certificate, str):
        certificate = _json.dumps(certificate)
    return _json.loads(_dualkit.validate_certificate(group, certificate))
