"""Numerical backend selection.

The compiled extension (``fascopula._core``) is preferred when present;
otherwise the pure NumPy fallback (``fascopula._pycore``) is used. Set
``FASCOPULA_BACKEND=python`` or ``=compiled`` to force a choice at import
time (forcing ``compiled`` raises if the extension is missing).
"""

import os

_requested = os.environ.get("FASCOPULA_BACKEND", "").strip().lower()

if _requested not in ("", "python", "compiled"):
    raise ImportError(
        f"FASCOPULA_BACKEND={_requested!r} not understood "
        "(use 'python' or 'compiled')"
    )

if _requested == "python":
    from . import _pycore as _impl
elif _requested == "compiled":
    from . import _core as _impl
else:
    try:
        from . import _core as _impl
    except ImportError:
        from . import _pycore as _impl

BACKEND = _impl.BACKEND

FAM_INDEPENDENCE = _impl.FAM_INDEPENDENCE
FAM_FRANK = _impl.FAM_FRANK
FAM_CLAYTON = _impl.FAM_CLAYTON
FAM_GUMBEL = _impl.FAM_GUMBEL

lower_reg_gamma = _impl.lower_reg_gamma
lower_reg_gamma_vec = _impl.lower_reg_gamma_vec
inv_lower_reg_gamma = _impl.inv_lower_reg_gamma
inv_lower_reg_gamma_vec = _impl.inv_lower_reg_gamma_vec
copula_sample_block = _impl.copula_sample_block
max_gain_block = _impl.max_gain_block


def backend_name() -> str:
    """Name of the kernel backend selected at import ('compiled' or 'python')."""
    return BACKEND
