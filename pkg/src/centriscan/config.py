"""Analyzer configuration: key lists, detector toggles, failure threshold.

Config files are line-oriented ``key = value`` with ``#`` comments; list
values are comma-separated. Unknown keys are rejected (fail closed).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace


class UsageError(ValueError):
    """Invalid invocation or report-format request; maps to exit code 2."""


class ConfigError(UsageError):
    """Malformed or unknown configuration input."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


DEFAULT_OWNER_KEYS = ("manager", "Creator", "creator", "owner", "admin")
DEFAULT_BALANCE_KEYS = ("MyBalance",)

FAIL_THRESHOLDS = ("major", "warning", "info", "none")

_LIST_KEYS = frozenset({"owner_keys", "balance_keys"})
_BOOL_KEYS = frozenset({
    "balance_substring",
    "revert_guard",
    "native_transfer",
    "selfdestruct",
    "gtxn_sender",
    "tx_origin",
    "nested_mappings",
})

_TRUE_WORDS = frozenset({"1", "true", "yes", "on"})
_FALSE_WORDS = frozenset({"0", "false", "no", "off"})


@dataclass(frozen=True)
class AnalyzerConfig:
    owner_keys: tuple[str, ...] = DEFAULT_OWNER_KEYS
    balance_keys: tuple[str, ...] = DEFAULT_BALANCE_KEYS
    balance_substring: bool = True  # case-insensitive "balance" substring rule
    revert_guard: bool = True
    native_transfer: bool = True
    selfdestruct: bool = True
    gtxn_sender: bool = True
    tx_origin: bool = False
    nested_mappings: bool = False
    fail_threshold: str = "warning"

    def is_owner_key(self, key: str) -> bool:
        return key in self.owner_keys

    def is_balance_key(self, key: str) -> bool:
        if key in self.balance_keys:
            return True
        return self.balance_substring and "balance" in key.lower()

    def fingerprint(self) -> str:
        """Stable hash of the effective configuration."""
        parts = []
        for f in sorted(fields(self), key=lambda f: f.name):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(value)
            parts.append(f"{f.name}={value}")
        digest = hashlib.sha256("\n".join(parts).encode("utf-8")).hexdigest()
        return digest[:16]


def _parse_bool(value: str, line: int) -> bool:
    word = value.strip().lower()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ConfigError(f"expected a boolean, got {value.strip()!r}", line)


def _parse_list(value: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in value.split(",") if item.strip())


def parse_config_text(text: str) -> AnalyzerConfig:
    """Parse config-file text; explicit values replace defaults entirely."""
    config = AnalyzerConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if key in _LIST_KEYS:
            config = replace(config, **{key: _parse_list(value)})
        elif key in _BOOL_KEYS:
            config = replace(config, **{key: _parse_bool(value, lineno)})
        elif key == "fail_threshold":
            choice = value.strip()
            if choice not in FAIL_THRESHOLDS:
                raise ConfigError(
                    f"fail_threshold must be one of {', '.join(FAIL_THRESHOLDS)}",
                    lineno,
                )
            config = replace(config, fail_threshold=choice)
        else:
            raise ConfigError(f"unknown config key {key!r}", lineno)
    return config


def load_config(path: str | None) -> AnalyzerConfig:
    """Load configuration from a file, or defaults when path is None."""
    if path is None:
        return AnalyzerConfig()
    try:
        with open(path, encoding="utf-8", errors="replace") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    return parse_config_text(text)
