"""Selects the token-scan kernel at import time.

Prefers the compiled extension when it was built; falls back to the pure
twin otherwise. Set CENTRISCAN_PURE=1 to force the pure kernel.
"""

import os

from . import _scan_py

if os.environ.get("CENTRISCAN_PURE") == "1":
    _impl = _scan_py
else:
    try:
        from . import _scan_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _scan_py

scan_solidity = _impl.scan_solidity

KERNEL = "compiled" if _impl is not _scan_py else "pure"
