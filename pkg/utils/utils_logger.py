"""
Logger Setup Script
File: utils/utils_logger.py

This script provides logging functions for the project.
Every benchmark run, fold and experiment reports its progress here.

Features:
- Logs information, warnings, and errors to a designated log file.
- Ensures the log directory exists.
- Reads the log level from the CVM_LOG_LEVEL environment variable.
"""

# Imports from Python Standard Library
import os
import pathlib
import sys

# Imports from external packages
from dotenv import load_dotenv
from loguru import logger

load_dotenv()

# Get this file name without the extension
CURRENT_SCRIPT = pathlib.Path(__file__).stem

# Set directory where logs will be stored
LOG_FOLDER: pathlib.Path = pathlib.Path("logs")

# Set the name of the log file
LOG_FILE: pathlib.Path = LOG_FOLDER.joinpath("project_log.log")

LOG_LEVEL: str = os.getenv("CVM_LOG_LEVEL", "INFO").upper()

# Console sink follows the configured level too
logger.remove()
logger.add(sys.stderr, level=LOG_LEVEL)

# Ensure the log folder exists or create it
try:
    LOG_FOLDER.mkdir(exist_ok=True)
    logger.debug(f"Log folder ready at: {LOG_FOLDER}")
except Exception as e:
    logger.error(f"Error creating log folder: {e}")

# Configure Loguru to write to the log file
try:
    logger.add(LOG_FILE, level=LOG_LEVEL)
    logger.debug(f"Logging to file: {LOG_FILE}")
except Exception as e:
    logger.error(f"Error configuring logger to write to file: {e}")
