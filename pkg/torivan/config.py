""" Settings for the command line tools.

    The settings live in an INI file, by default ``~/.torivan/torivan.ini``
    (or wherever ``$TORIVAN_CONFIG`` points). The ``[torivan]`` header is
    optional, so a file can be as short as::

        jobs = 4
        cache = ~/.torivan/cache

    ``$TORIVAN_CACHE`` overrides the cache folder.
"""
import os
import logging
from pathlib import Path
from configparser import ConfigParser
from collections import namedtuple
from itertools import chain

from .constants import CONFIG_FILE, DEFAULT_MARGIN, DEFAULT_CAP, DEFAULT_JOBS

SECTION = 'torivan'

Settings = namedtuple('Settings', 'margin cap jobs cache log_level')

DEFAULTS = {
    'margin': str(DEFAULT_MARGIN),
    'cap': str(DEFAULT_CAP),
    'jobs': str(DEFAULT_JOBS),
    'cache': '',
    'log_level': 'WARNING',
}


def config_path():
    value = os.environ.get('TORIVAN_CONFIG')
    return Path(value).expanduser() if value else CONFIG_FILE


def read_parser(path):
    parser = ConfigParser(defaults=DEFAULTS)
    if path.exists():
        text = path.read_text()
        lines = text.splitlines()
        # Accept files without any section header.
        if not any(line.strip().startswith('[') for line in lines):
            lines = chain((f"[{SECTION}]",), lines)
        parser.read_file(lines, source=str(path))
    if not parser.has_section(SECTION):
        parser.add_section(SECTION)
    return parser


def load_settings(path=None):
    """Read the settings file, falling back to the defaults for anything missing."""
    if path is None:
        path = config_path()
    parser = read_parser(Path(path))

    cache = os.environ.get('TORIVAN_CACHE') or parser.get(SECTION, 'cache')
    settings = Settings(
        margin=parser.getint(SECTION, 'margin'),
        cap=parser.getint(SECTION, 'cap'),
        jobs=parser.getint(SECTION, 'jobs'),
        cache=Path(cache).expanduser() if cache else None,
        log_level=parser.get(SECTION, 'log_level').upper(),
    )
    if settings.margin < 0 or settings.cap < 1 or settings.jobs < 1:
        raise ValueError(f"Invalid settings in {path}: {settings}")
    logging.getLogger(__name__).debug("settings from %s: %s", path, settings)
    return settings
