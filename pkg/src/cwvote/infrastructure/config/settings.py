"""Configuration management for cwvote."""

import copy
import logging
import math
import os
from pathlib import Path
from typing import Any, Optional, Union

try:
    import tomllib  # Python 3.11+
except ImportError:
    import tomli as tomllib  # Python < 3.11

from cwvote.domain.interfaces import IConfigManager
from cwvote.infrastructure.errors import ConfigurationError

logger = logging.getLogger(__name__)

# Define type alias for configuration values
ConfigValue = Union[str, int, float, bool, dict[str, Any]]

THREADS_ENV = "CW_THREADS"
FORMATS = ("json", "csv")

DEFAULT_CONFIG: dict[str, Any] = {
    "level": 0.95,
    "seed": 0,
    "n": 1000,
    "threads": 0,  # 0 = serial
    "format": "json",
    "tolerances": {
        "achievability_abs": 1e-9,
    },
}


class ConfigManager(IConfigManager):
    """Configuration manager for cwvote."""

    def __init__(self) -> None:
        self._config: dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
        self._source: Optional[Path] = None

    @property
    def source(self) -> Optional[Path]:
        """File the configuration was read from, if any."""
        return self._source

    def load_config(self, config_path: Optional[Path] = None) -> dict[str, Any]:
        """Load configuration from file or defaults.

        An explicit ``config_path`` must exist and parse; the implicit
        locations are tried in order and the first one that yields a table wins.

        Raises:
            ConfigurationError: If the file or environment holds invalid values

        """
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        self._source = None

        if config_path is not None:
            if not config_path.exists():
                raise ConfigurationError(f"config file {config_path} does not exist")
            self._merge_config(self._load_from_file(config_path, strict=True) or {})
            self._source = config_path
        else:
            for source in (
                Path.cwd() / ".cwvote.toml",
                Path.cwd() / "pyproject.toml",
                Path.home() / ".config" / "cwvote" / "config.toml",
            ):
                if not source.exists():
                    continue
                loaded_config = self._load_from_file(source, strict=False)
                if loaded_config:
                    self._merge_config(loaded_config)
                    self._source = source
                    break

        self._load_from_env()
        self._validate()
        logger.debug("configuration loaded from %s", self._source or "defaults")
        return self._config

    def _load_from_file(self, file_path: Path, strict: bool) -> Optional[dict[str, Any]]:
        """Load configuration from a TOML file."""
        try:
            with Path(file_path).open("rb") as f:
                data = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError) as e:
            if strict:
                raise ConfigurationError(f"cannot read {file_path}: {e}") from e
            logger.warning("Failed to load config from %s: %s", file_path, e)
            return None

        # pyproject.toml keeps the settings under [tool.cwvote]
        if file_path.name == "pyproject.toml" or "tool" in data:
            return data.get("tool", {}).get("cwvote", {})
        return data

    def _merge_config(self, new_config: dict[str, Any]) -> None:
        """Merge new configuration with existing."""

        def deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
            for key, value in update.items():
                if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                    deep_merge(base[key], value)
                else:
                    base[key] = value
            return base

        deep_merge(self._config, new_config)

    def _load_from_env(self) -> None:
        """Load the thread cap from ``CW_THREADS``."""
        raw = os.environ.get(THREADS_ENV)
        if raw is None or raw.strip() == "":
            return
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
        if threads < 1:
            raise ConfigurationError(f"{THREADS_ENV} must be >= 1, got {threads}")
        self._config["threads"] = threads

    def _validate(self) -> None:
        config = self._config
        level = config.get("level")
        if not isinstance(level, (int, float)) or isinstance(level, bool) or not 0.0 < level < 1.0:
            raise ConfigurationError(f"level must lie in (0, 1), got {level!r}")
        for key, lowest in (("seed", 0), ("n", 1), ("threads", 0)):
            value = config.get(key)
            if not isinstance(value, int) or isinstance(value, bool) or value < lowest:
                raise ConfigurationError(f"{key} must be an integer >= {lowest}, got {value!r}")
        if config.get("seed", 0) >= 2**64:
            raise ConfigurationError("seed must be below 2**64")
        if config.get("format") not in FORMATS:
            raise ConfigurationError(
                f"format must be one of {', '.join(FORMATS)}, got {config.get('format')!r}"
            )
        tolerances = config.get("tolerances")
        if not isinstance(tolerances, dict):
            raise ConfigurationError("[tolerances] must be a table")
        for key, value in tolerances.items():
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise ConfigurationError(f"tolerance {key} must be positive, got {value!r}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        return self._config.get(key, default)

    def get_tolerance(self, name: str) -> float:
        """Get a numeric tolerance from the ``[tolerances]`` table."""
        tolerances = self._config.get("tolerances", {})
        return float(tolerances.get(name, DEFAULT_CONFIG["tolerances"][name]))

    def get_threads(self) -> Optional[int]:
        """Thread cap for parallel work, or None to run serially."""
        threads = int(self._config.get("threads", 0))
        return threads if threads > 0 else None

    def get_global_config(self) -> dict[str, Any]:
        """Get global configuration."""
        return copy.deepcopy(self._config)

    def apply_overrides(self, overrides: dict[str, Any]) -> None:
        """Apply command-line overrides; ``None`` values are ignored."""
        for key, value in overrides.items():
            if value is not None:
                self._config[key] = value
        self._validate()
