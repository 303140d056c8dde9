# config.py
"""Application configuration."""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Base configuration."""

    # Process
    CHEAT_ADVANTAGE = os.environ.get('CHEAT_ADVANTAGE') or '7/6'

    # Engine limits
    MAX_ROUNDS = int(os.environ.get('MAX_ROUNDS') or 10000)
    MAX_FORCED_DEPTH = int(os.environ.get('MAX_FORCED_DEPTH') or 256)
    ESCAPE_MARGIN = int(os.environ.get('ESCAPE_MARGIN') or 2)
    PERIOD_WINDOW = int(os.environ.get('PERIOD_WINDOW') or 4096)
    ENUMERATION_THRESHOLD = int(os.environ.get('ENUMERATION_THRESHOLD') or 9)

    # Monte Carlo
    MASTER_SEED = int(os.environ.get('MASTER_SEED') or 20240101)
    THREADS = int(os.environ.get('THREADS') or os.cpu_count() or 1)

    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'INFO'

    @staticmethod
    def init_app(app):
        """Initialize application."""
        pass


class DevelopmentConfig(Config):
    """Development configuration."""

    DEBUG = True
    TESTING = False
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'DEBUG'


class TestingConfig(Config):
    """Testing configuration."""

    TESTING = True
    MAX_ROUNDS = 2000
    MASTER_SEED = 12345
    THREADS = 2
    LOG_LEVEL = 'WARNING'


class ProductionConfig(Config):
    """Production configuration."""

    DEBUG = False
    TESTING = False

    @classmethod
    def init_app(cls, app):
        Config.init_app(app)

        # Log to stderr
        import logging
        from logging import StreamHandler
        stream_handler = StreamHandler()
        stream_handler.setLevel(logging.INFO)
        logging.getLogger('pdgrid').addHandler(stream_handler)


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}
