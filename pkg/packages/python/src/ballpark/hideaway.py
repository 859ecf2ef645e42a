"""hideaway - Data Directory Management.

Locates the ballpark data directory that holds the settings file.

Example:
    >>> from ballpark import hideaway
    >>> hideaway.get_data_dir()        # ~/.ballpark, or $BALLPARK_HOME
    >>> hideaway.get_config_path()     # ~/.ballpark/config.json
    >>> hideaway.ensure_data_dir()

Functions:
    get_data_dir: Get the data directory.
    get_config_path: Get the path to the settings file.
    ensure_data_dir: Create the data directory if it doesn't exist.
"""

import os
from pathlib import Path


HOME_ENV_VAR = "BALLPARK_HOME"
DIR_NAME = ".ballpark"
CONFIG_FILE_NAME = "config.json"


def get_data_dir() -> Path:
    """Get the data directory.

    Returns:
        $BALLPARK_HOME when set, otherwise ~/.ballpark
    """
    override = os.environ.get(HOME_ENV_VAR)
    if override:
        return Path(override).expanduser()
    return Path.home() / DIR_NAME


def get_config_path() -> Path:
    """Get the settings file path (e.g., ~/.ballpark/config.json)."""
    return get_data_dir() / CONFIG_FILE_NAME


def ensure_data_dir() -> Path:
    """Create data directory if it doesn't exist.

    Returns:
        Path to the data directory
    """
    data_dir = get_data_dir()
    data_dir.mkdir(parents=True, exist_ok=True)
    return data_dir
