"""Backend selection for the hot kernels.

Prefers the compiled Cython module; falls back to the pure-numpy
implementation when the extension is missing or when the environment
variable PLURIKERNEL_FORCE_FALLBACK is set (used by the benchmark and by
tests that exercise both paths).
"""

import os

if os.environ.get("PLURIKERNEL_FORCE_FALLBACK"):
    from . import _core_py as _impl
else:
    try:
        from . import _corex as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

BACKEND = _impl.BACKEND
eval_r_grad = _impl.eval_r_grad
eval_disc_batch = _impl.eval_disc_batch
