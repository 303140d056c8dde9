# pdgrid/__init__.py
"""Flask application factory."""

import logging
from flask import Flask
from config import config

__version__ = '1.0.0'


def create_app(config_name='development'):
    """Create and configure Flask application."""
    app = Flask(__name__)

    # Load configuration
    app.config.from_object(config[config_name])
    config[config_name].init_app(app)

    # Package log level
    logging.getLogger('pdgrid').setLevel(app.config['LOG_LEVEL'])

    # Register CLI commands
    from pdgrid.cli.commands import register_commands
    register_commands(app)

    return app
