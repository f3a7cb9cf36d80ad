"""centriscan: static detection of centralization-risk patterns in Solidity
and TEAL smart contracts.

Flags privileged access controls (sender guards), fund-modifying logic, and
their combination, graded MAJOR / WARNING / INFO.
"""

__version__ = "0.1.0"

from .config import AnalyzerConfig, ConfigError, UsageError, load_config  # noqa: E402
from .engine import discover_files, scan_files, scan_paths  # noqa: E402
from .report import Finding, ScanReport, classify, render_report  # noqa: E402

__all__ = [
    "__version__",
    "AnalyzerConfig",
    "ConfigError",
    "UsageError",
    "load_config",
    "discover_files",
    "scan_files",
    "scan_paths",
    "Finding",
    "ScanReport",
    "classify",
    "render_report",
]
