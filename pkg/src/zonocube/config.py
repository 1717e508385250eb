"""Configuration loader with dotenv support.

Precedence: defaults -> .env (if present) -> environment variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
import logging
import os
from typing import Tuple

from dotenv import load_dotenv


@dataclass
class Settings:
    budget: int = 250_000
    chain_limit: int = 1_000_000
    workers: int = 1
    fragment_check: bool = True
    log_level: str = "WARNING"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        logging.warning("Ignoring non-integer %s=%r", name, raw)
        return default


def load_settings() -> Settings:
    """Load settings with precedence: defaults -> .env -> environment."""
    try:
        here = Path(__file__).resolve()
        for parent in [here.parent, *here.parents]:
            candidate = parent / ".env"
            if candidate.exists():
                load_dotenv(candidate)
                break
    except Exception:
        # Non-fatal
        pass

    s = Settings()
    s.budget = _env_int("ZONOCUBE_BUDGET", s.budget)
    s.chain_limit = _env_int("ZONOCUBE_CHAIN_LIMIT", s.chain_limit)
    s.workers = _env_int("ZONOCUBE_WORKERS", s.workers)
    s.fragment_check = os.getenv("ZONOCUBE_FRAGMENT_CHECK", str(s.fragment_check)).lower() == "true"
    s.log_level = os.getenv("ZONOCUBE_LOG_LEVEL", s.log_level)
    return s


def validate_settings(settings: Settings) -> Tuple[bool, list]:
    """Validate critical settings. Returns (ok, warnings)."""
    warnings: list = []
    ok = True
    if settings.budget <= 0:
        logging.error("ZONOCUBE_BUDGET must be positive, got %s", settings.budget)
        ok = False
    if settings.chain_limit <= 0:
        logging.error("ZONOCUBE_CHAIN_LIMIT must be positive, got %s", settings.chain_limit)
        ok = False
    if settings.workers <= 0:
        logging.error("ZONOCUBE_WORKERS must be positive, got %s", settings.workers)
        ok = False
    elif settings.workers > (os.cpu_count() or 1):
        warnings.append(
            f"ZONOCUBE_WORKERS={settings.workers} exceeds the CPU count; threads will contend"
        )
    if settings.log_level.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        warnings.append(f"Unknown ZONOCUBE_LOG_LEVEL {settings.log_level!r}; using WARNING")
    return ok, warnings
