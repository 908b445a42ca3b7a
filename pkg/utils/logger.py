import logging
import os
from datetime import datetime

import config

# Create logs directory if it doesn't exist
logs_dir = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'logs')

# Create logger
logger = logging.getLogger('tutte')
logger.setLevel(config.LOG_LEVEL)

# Create formatter
formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

# Console handler writes to stderr so stdout stays clean for command output
console_handler = logging.StreamHandler()
console_handler.setFormatter(formatter)
logger.addHandler(console_handler)

if config.LOG_TO_FILE:
    os.makedirs(logs_dir, exist_ok=True)
    log_filename = f"tutte_{datetime.now().strftime('%Y%m%d')}.log"
    file_handler = logging.FileHandler(os.path.join(logs_dir, log_filename), encoding='utf-8')
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

# Prevent duplicate logs
logger.propagate = False


def set_level(level: str) -> None:
    """Override the configured level (used by the CLI --log-level option)."""
    logger.setLevel(level.upper())
