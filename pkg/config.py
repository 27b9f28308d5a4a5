"""
Configuration module for the SPIP workbench
Handles environment variables and default limits
"""

import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    """Base configuration"""

    # Noise sampling
    NOISE_DENOMINATOR = int(os.getenv('SPIP_NOISE_DENOMINATOR', 2 ** 32))

    # Exhaustive search limits
    ENUMERATION_CAP = int(os.getenv('SPIP_ENUMERATION_CAP', 10 ** 6))
    RETAINED_PATHS = int(os.getenv('SPIP_RETAINED_PATHS', 10 ** 5))
    MITM_MAX_WINDOW = int(os.getenv('SPIP_MITM_MAX_WINDOW', 4096))

    # Experiments
    TRIALS = int(os.getenv('SPIP_TRIALS', 1000))
    THREADS = int(os.getenv('SPIP_THREADS', 1))

    # Reductions
    EMBED_ROUNDS = int(os.getenv('SPIP_EMBED_ROUNDS', 3))

    # Logging
    DEBUG = os.getenv('DEBUG', 'False') == 'True'
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False


def get_config():
    """Get configuration based on environment"""
    env = os.getenv('ENVIRONMENT', 'production')
    return DevelopmentConfig() if env == 'development' else ProductionConfig()
