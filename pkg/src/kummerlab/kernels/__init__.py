"""Hot loops: the compiled extension when it is built, else the pure-Python module.

Set KUMMERLAB_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("KUMMERLAB_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"
kron_lemma_scan = _impl.kron_lemma_scan
quadratic_form_scan = _impl.quadratic_form_scan

__all__ = ["BACKEND", "kron_lemma_scan", "quadratic_form_scan"]
