# app.py
"""Application entry point."""

import os
import sys
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from pdgrid import create_app  # noqa: E402
from pdgrid.cli import dispatch  # noqa: E402

# Create Flask app; `flask --app app <command>` finds it here
app = create_app(os.getenv('FLASK_ENV') or 'development')


if __name__ == '__main__':
    sys.exit(dispatch(sys.argv[1:]))
