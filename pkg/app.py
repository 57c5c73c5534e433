import os
import logging
from dataclasses import dataclass, replace
from typing import Optional
from dotenv import load_dotenv

from models import DomainError
from services.hypergeometric_numbers import READINGS, hypergeometric_numbers

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class AppConfig:
    """Runtime settings read once from the environment"""
    workers: int = 1
    log_level: str = 'INFO'
    log_file: Optional[str] = None
    composition_limit: int = 14
    euler_second_reading: str = 'printed'

def _int_setting(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise DomainError(f"{name} must be at least {minimum}, got {value}")
    return value

def load_config() -> AppConfig:
    """Build the AppConfig from CAMERON_* environment variables"""
    log_level = os.environ.get('CAMERON_LOG_LEVEL', 'INFO').upper()
    if os.environ.get('DEBUG', 'False').lower() == 'true':
        log_level = 'DEBUG'
    if log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
        raise DomainError(f"CAMERON_LOG_LEVEL must be DEBUG, INFO, WARNING or ERROR, got {log_level!r}")

    reading = os.environ.get('CAMERON_EULER_SECOND_READING', 'printed').lower()
    if reading not in READINGS:
        raise DomainError(f"CAMERON_EULER_SECOND_READING must be one of {', '.join(READINGS)}, got {reading!r}")

    return AppConfig(
        workers=_int_setting('CAMERON_WORKERS', 1, 1),
        log_level=log_level,
        log_file=os.environ.get('CAMERON_LOG_FILE') or None,
        composition_limit=_int_setting('CAMERON_COMPOSITION_LIMIT', 14, 1),
        euler_second_reading=reading,
    )

def create_app(**overrides) -> AppConfig:
    """Application factory: environment first, then command-line overrides"""
    config = load_config()
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        config = replace(config, **overrides)
    if config.euler_second_reading not in READINGS:
        raise DomainError(f"Unknown Euler second-kind reading {config.euler_second_reading!r}")

    hypergeometric_numbers.configure(config.euler_second_reading)
    logger.debug(f"Configuration: {config}")
    return config
