"""Backend selection for the hot search kernels.

The compiled extension is preferred when present; the pure
numpy/Python implementation is a drop-in fallback with identical
semantics (argmax values agree exactly up to floating-point summation
order, tie-breaking rules are the same).  Set ``GRAPHCORR_FORCE_PYTHON=1``
to force the fallback, e.g. for benchmarking.
"""

import os

from . import _pycore as pycore

fastcore = None
if os.environ.get("GRAPHCORR_FORCE_PYTHON") != "1":
    try:
        from . import _fastcore as fastcore  # type: ignore[no-redef]
    except ImportError:
        fastcore = None

active = fastcore if fastcore is not None else pycore


def backend_name() -> str:
    return "compiled" if active is fastcore and fastcore is not None else "python"
