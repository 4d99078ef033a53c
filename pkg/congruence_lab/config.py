"""
Suite configuration: defaults, config files and command-line overrides.
"""

import json
import logging
import re
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import chompjs

from .errors import ConfigError

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("json", "csv", "md")
MOD_EXP_CHOICES = ("auto", "1", "2", "3")


@dataclass
class SuiteConfig:
    """
    Everything ``verify`` needs to know.

    ``checks`` (explicit ids) takes precedence over ``suite`` (group names or
    ids) when both are given.
    """

    suite: List[str] = field(default_factory=lambda: ["all"])
    checks: Optional[List[str]] = None
    pmin: int = 5
    pmax: int = 997
    mod_exp: str = "auto"
    jobs: int = 1
    format: str = "json"
    out: Optional[str] = None
    cache_dir: Optional[str] = None
    use_cache: bool = True
    series_order: int = 16
    identity_max_n: Optional[int] = None

    @property
    def exponent(self) -> Optional[int]:
        """The ``--mod-exp`` restriction, or None for ``auto``."""
        return None if self.mod_exp == "auto" else int(self.mod_exp)

    @property
    def selection(self) -> List[str]:
        return list(self.checks) if self.checks else list(self.suite)

    def validate(self) -> "SuiteConfig":
        """
        Check ranges and choices.

        Raises:
            ConfigError: on the first invalid field
        """
        if self.pmin < 5:
            raise ConfigError(f"pmin must be at least 5, got {self.pmin}", "pmin")
        if self.pmax < self.pmin:
            raise ConfigError(
                f"pmax ({self.pmax}) must not be below pmin ({self.pmin})", "pmax"
            )
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}", "jobs")
        if self.format not in REPORT_FORMATS:
            raise ConfigError(f"unknown format {self.format!r}", "format")
        if self.mod_exp not in MOD_EXP_CHOICES:
            raise ConfigError(f"mod_exp must be one of {MOD_EXP_CHOICES}", "mod_exp")
        if self.series_order < 1:
            raise ConfigError("series_order must be positive", "series_order")
        if self.identity_max_n is not None and self.identity_max_n < 0:
            raise ConfigError("identity_max_n must not be negative", "identity_max_n")
        if not self.selection:
            raise ConfigError("empty check selection", "suite")
        return self

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_mapping(
        cls, values: Dict[str, Any], base: Optional["SuiteConfig"] = None
    ) -> "SuiteConfig":
        """
        Overlay ``values`` on ``base`` (or the defaults). ``None`` values are
        ignored so unset command-line flags never clobber a file setting.

        Raises:
            ConfigError: on an unknown key or a value of the wrong shape
        """
        known = {f.name for f in fields(cls)}
        merged = (base or cls()).as_dict()
        for key, value in values.items():
            if key not in known:
                raise ConfigError(f"unknown configuration key {key!r}", key)
            if value is None:
                continue
            merged[key] = _coerce(key, value)
        return cls(**merged)


def _coerce(key: str, value: Any) -> Any:
    try:
        if key in ("pmin", "pmax", "jobs", "series_order", "identity_max_n"):
            if isinstance(value, bool):
                raise TypeError(key)
            return int(value)
        if key in ("suite", "checks"):
            if isinstance(value, str):
                return [v for v in re.split(r"[,\s]+", value) if v]
            return [str(v) for v in value]
        if key == "mod_exp":
            return str(value)
        if key == "use_cache":
            return bool(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {key}: {value!r}", key) from None


def _clean_config_text(text: str) -> str:
    """Drop comments and trailing commas from a hand-written config."""
    text = re.sub(r"//.*?$", "", text, flags=re.MULTILINE)
    text = re.sub(r"/\*.*?\*/", "", text, flags=re.DOTALL)
    text = re.sub(r",(\s*[}\]])", r"\1", text)
    return text


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parse a config document.

    Tries chompjs first (comments, single quotes and trailing commas are
    fine), then strict JSON, then both again on a cleaned copy.

    Raises:
        ConfigError: if no strategy yields an object
    """
    attempts = [
        ("chompjs", lambda t: chompjs.parse_js_object(t)),
        ("json", json.loads),
    ]
    cleaned = _clean_config_text(text)
    for source in (text, cleaned):
        for name, parse in attempts:
            try:
                parsed = parse(source)
            except Exception as err:
                logger.debug(f"config parse with {name} failed: {err}")
                continue
            if isinstance(parsed, dict):
                return parsed
            raise ConfigError(f"config must be an object, got {type(parsed).__name__}")
    raise ConfigError("config file is neither JSON nor a JavaScript object literal")


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read and parse a config file; keys mirror the long flags."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from None
    values = parse_config_text(text)
    logger.debug(f"loaded {len(values)} config keys from {path}")
    return {str(k).replace("-", "_"): v for k, v in values.items()}


def build_config(
    file_path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> SuiteConfig:
    """
    Defaults, then the config file, then flag overrides; validated.
    """
    config = SuiteConfig()
    if file_path is not None:
        config = SuiteConfig.from_mapping(load_config_file(file_path), config)
    if overrides:
        config = SuiteConfig.from_mapping(overrides, config)
    return config.validate()
