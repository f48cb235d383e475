import os
from pathlib import Path
import logging

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

_ROOT = Path(__file__).parent.parent.parent


def _flag(name: str, default: str = 'False') -> bool:
    return os.getenv(name, default).lower() == 'true'


class Config:
    """Configuration class for varlattice."""

    # Logging Configuration
    LOG_LEVEL = os.getenv('VARLATTICE_LOG_LEVEL', 'WARNING')
    LOG_DIR = os.getenv('VARLATTICE_LOG_DIR', 'logs')
    LOG_FILE = os.getenv('VARLATTICE_LOG_FILE', 'varlattice.log')
    LOG_TO_FILE = _flag('VARLATTICE_LOG_TO_FILE')

    # Randomised suites
    DEFAULT_SEED = int(os.getenv('VARLATTICE_SEED', '20190917'))
    RANDOM_LATTICES = int(os.getenv('VARLATTICE_RANDOM_LATTICES', '1000'))
    RANDOM_LATTICE_SIZE = int(os.getenv('VARLATTICE_RANDOM_LATTICE_SIZE', '9'))
    RANDOM_WORD_PAIRS = int(os.getenv('VARLATTICE_RANDOM_WORD_PAIRS', '5000'))
    RANDOM_UNARY_WORDS = int(os.getenv('VARLATTICE_RANDOM_UNARY_WORDS', '200'))

    # Deduction bounds
    DEFAULT_DEPTH = int(os.getenv('VARLATTICE_DEPTH', '8'))
    DEFAULT_SIZE_SLACK = int(os.getenv('VARLATTICE_SIZE_SLACK', '2'))

    # Enumeration caps
    MAX_SUBGROUP_DEGREE = int(os.getenv('VARLATTICE_MAX_SUBGROUP_DEGREE', '5'))
    MAX_PERM_DEGREE = int(os.getenv('VARLATTICE_MAX_PERM_DEGREE', '6'))
    MAX_FREE_GENERATORS = int(os.getenv('VARLATTICE_MAX_FREE_GENERATORS', '4'))
    FREE_OBJECT_LIMIT = int(os.getenv('VARLATTICE_FREE_OBJECT_LIMIT', '100000'))
    FREE_OBJECT_TABLE_LIMIT = int(os.getenv('VARLATTICE_FREE_OBJECT_TABLE_LIMIT', '2000'))
    THEORY_WORD_LIMIT = int(os.getenv('VARLATTICE_THEORY_WORD_LIMIT', '200000'))
    MAX_FAMILY_CAP = int(os.getenv('VARLATTICE_MAX_FAMILY_CAP', '8'))

    # Data directories
    TEMPLATE_DIR = Path(os.getenv('VARLATTICE_TEMPLATE_DIR', str(_ROOT / 'templates')))
    EXPECTATIONS_DIR = Path(os.getenv('VARLATTICE_EXPECTATIONS_DIR', str(_ROOT / 'expectations')))

    @classmethod
    def init_app(cls, ctx=None):
        """Log the effective configuration."""
        logger.info("Loading configuration:")
        logger.info(f"LOG_LEVEL: {cls.LOG_LEVEL}")
        logger.info(f"DEFAULT_SEED: {cls.DEFAULT_SEED}")
        logger.info(f"DEFAULT_DEPTH: {cls.DEFAULT_DEPTH}")
        logger.info(f"MAX_SUBGROUP_DEGREE: {cls.MAX_SUBGROUP_DEGREE}")
        logger.info(f"FREE_OBJECT_LIMIT: {cls.FREE_OBJECT_LIMIT}")
        logger.info(f"TEMPLATE_DIR: {cls.TEMPLATE_DIR}")
        logger.info(f"EXPECTATIONS_DIR: {cls.EXPECTATIONS_DIR}")
        if ctx is not None:
            ctx.obj = cls
