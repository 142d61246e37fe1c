"""Configuration management for eulercat."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import psutil
import yaml
from dotenv import load_dotenv

logger = logging.getLogger("eulercat")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"

BOUND_FIELDS = (
    "simplex_max_n",
    "series_depth",
    "random_count",
    "max_poset_size",
    "max_random_objects",
    "max_monoid_size",
    "max_sd_objects",
    "max_resolution_objects",
    "max_splitting_objects",
)


def env_threads() -> Optional[int]:
    """EULERCAT_THREADS as an integer, or None when unset or malformed."""
    env = os.environ.get("EULERCAT_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            logger.warning(f"Ignoring non-integer EULERCAT_THREADS={env!r}")
    return None


def default_threads() -> int:
    threads = env_threads()
    return threads if threads is not None else psutil.cpu_count() or 1


@dataclass
class EulercatConfig:
    """Settings for computations, the verify harness and logging."""

    log_level: str = "INFO"
    log_file: Optional[str] = None
    threads: int = field(default_factory=default_threads)

    # Enumeration bounds
    simplex_max_n: int = 6
    series_depth: int = 8  # oracle depth for Taylor / chain counts
    random_count: int = 200
    max_poset_size: int = 5
    max_random_objects: int = 6
    max_monoid_size: int = 3

    # Size caps for subdivision checks
    max_sd_objects: int = 5000
    max_resolution_objects: int = 500
    max_splitting_objects: int = 60

    ascii_labels: bool = False

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "EulercatConfig":
        """Load configuration from YAML file."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")

        with open(path) as f:
            data = yaml.safe_load(f) or {}

        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EulercatConfig":
        """Create configuration from dictionary; unknown keys are ignored.

        EULERCAT_THREADS, when set, takes precedence over ``threads``.
        """
        config = cls()

        config.log_level = data.get("log_level", config.log_level)
        config.log_file = data.get("log_file", config.log_file)
        override = env_threads()
        config.threads = override if override is not None else data.get("threads", config.threads)
        config.ascii_labels = data.get("ascii_labels", config.ascii_labels)
        for name in BOUND_FIELDS:
            setattr(config, name, data.get(name, getattr(config, name)))

        return config

    @classmethod
    def from_env(cls, dotenv_path: Optional[Union[str, Path]] = None) -> "EulercatConfig":
        """Defaults overridden by EULERCAT_* variables, reading a .env file first."""
        load_dotenv(dotenv_path)
        config = cls()
        level = os.environ.get("EULERCAT_LOG_LEVEL")
        if level:
            config.log_level = level
        return config

    def validate(self) -> list[str]:
        """Validate configuration, return list of errors."""
        errors = []

        if getattr(logging, str(self.log_level).upper(), None) is None:
            errors.append(f"Unknown log_level: {self.log_level}")

        if not isinstance(self.threads, int) or self.threads < 1:
            errors.append(f"threads must be a positive integer, got {self.threads!r}")

        for name in BOUND_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                errors.append(f"{name} must be a positive integer, got {value!r}")

        return errors

    def to_dict(self) -> dict[str, Any]:
        """Export configuration to dictionary."""
        data: dict[str, Any] = {
            "log_level": self.log_level,
            "log_file": self.log_file,
            "threads": self.threads,
            "ascii_labels": self.ascii_labels,
        }
        data.update({name: getattr(self, name) for name in BOUND_FIELDS})
        return data

    def setup_logging(self) -> None:
        """Configure the package logger: console always, file when log_file is set."""
        level = getattr(logging, self.log_level.upper(), logging.INFO)
        logger.setLevel(level)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)

        console = logging.StreamHandler()
        console.setLevel(level)
        console.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
        logger.addHandler(console)

        if self.log_file:
            try:
                log_path = Path(self.log_file)
                log_path.parent.mkdir(parents=True, exist_ok=True)
                file_handler = logging.FileHandler(log_path)
                file_handler.setLevel(level)
                file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
                logger.addHandler(file_handler)
            except PermissionError:
                logger.warning(f"Cannot write to log file: {self.log_file}")
