import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("1", "true", "yes", "on")


class Config:
    """Configuration class for managing environment variables"""

    # Field configuration
    FIELD_BITS = int(os.getenv("IRS_FIELD_BITS", "8"))
    PRIMITIVE_POLY = int(os.getenv("IRS_PRIMITIVE_POLY", "0x11D"), 16)

    # Code configuration (flagship: DVB-style (204, 188) shortened code)
    K = int(os.getenv("IRS_K", "188"))
    VARIANT = os.getenv("IRS_VARIANT", "shortened").lower()
    SHORTEN = int(os.getenv("IRS_SHORTEN", "51"))
    INTERLEAVING_DEPTH = int(os.getenv("IRS_INTERLEAVING_DEPTH", "16"))

    # Decoder configuration
    CHECK_COLS = int(os.getenv("IRS_CHECK_COLS", "2"))

    # Simulation configuration
    SEED = int(os.getenv("IRS_SEED", "1"))
    TRIALS = int(os.getenv("IRS_TRIALS", "10000"))
    WORKERS = int(os.getenv("IRS_WORKERS", "1"))
    CHUNK_SIZE = int(os.getenv("IRS_CHUNK_SIZE", "250"))
    SHOW_PROGRESS = _env_bool("IRS_SHOW_PROGRESS", "true")

    # Logging
    LOG_LEVEL = os.getenv("IRS_LOG_LEVEL", "WARNING").upper()

    @classmethod
    def validate(cls):
        """Validate that all settings are in range"""
        problems = []
        if not 2 <= cls.FIELD_BITS <= 16:
            problems.append(f"IRS_FIELD_BITS={cls.FIELD_BITS} (expected 2..16)")
        if cls.VARIANT not in ("extended", "cyclic", "shortened"):
            problems.append(f"IRS_VARIANT={cls.VARIANT} (expected extended, cyclic or shortened)")
        if cls.K < 1:
            problems.append(f"IRS_K={cls.K} (expected >= 1)")
        if cls.SHORTEN < 0:
            problems.append(f"IRS_SHORTEN={cls.SHORTEN} (expected >= 0)")
        if cls.INTERLEAVING_DEPTH < 1:
            problems.append(f"IRS_INTERLEAVING_DEPTH={cls.INTERLEAVING_DEPTH} (expected >= 1)")
        if cls.CHECK_COLS < 0:
            problems.append(f"IRS_CHECK_COLS={cls.CHECK_COLS} (expected >= 0)")
        if cls.TRIALS < 1:
            problems.append(f"IRS_TRIALS={cls.TRIALS} (expected >= 1)")
        if cls.WORKERS < 1:
            problems.append(f"IRS_WORKERS={cls.WORKERS} (expected >= 1)")
        if cls.CHUNK_SIZE < 1:
            problems.append(f"IRS_CHUNK_SIZE={cls.CHUNK_SIZE} (expected >= 1)")
        if cls.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            problems.append(f"IRS_LOG_LEVEL={cls.LOG_LEVEL}")

        if problems:
            raise ValueError(
                f"Invalid configuration values: {', '.join(problems)}\n"
                f"Please check your .env file or environment."
            )

        return True

    @classmethod
    def print_config_summary(cls):
        """Log configuration summary"""
        logger.info("=" * 50)
        logger.info("Configuration Summary")
        logger.info("=" * 50)
        logger.info(f"Field: GF(2^{cls.FIELD_BITS}), primitive poly {cls.PRIMITIVE_POLY:#x}")
        logger.info(f"Code: k={cls.K}, variant={cls.VARIANT}, shorten={cls.SHORTEN}")
        logger.info(f"Interleaving depth: {cls.INTERLEAVING_DEPTH}")
        logger.info(f"Incremental check columns: {cls.CHECK_COLS}")
        logger.info(f"Simulation: seed={cls.SEED}, trials={cls.TRIALS}, workers={cls.WORKERS}")
        logger.info(f"Progress bar: {'✅ On' if cls.SHOW_PROGRESS else '❌ Off'}")
        logger.info("=" * 50)


# Create a global config instance
config = Config()

# Validate configuration on import
if __name__ != "__main__":
    try:
        config.validate()
    except ValueError as e:
        logger.warning(f"⚠️ Configuration Error: {e}")
