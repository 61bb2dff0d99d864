""" A content-addressed cache of cohomology reports.

    The key is the sha256 of the canonical JSON of the fan, the divisor
    and the box margin, so a divisor read from a file shares entries with
    the same divisor built from parameters. Each entry is the report's
    canonical JSON text in its own file.
"""
import hashlib
import logging
from pathlib import Path

from .report import dumps, coeffs_json

logger = logging.getLogger(__name__)


def cache_key(D, margin):
    payload = dumps({'fan': D.fan.to_json(), 'divisor': coeffs_json(D), 'margin': margin})
    return hashlib.sha256(payload.encode()).hexdigest()


class ReportCache:
    def __init__(self, folder):
        self.folder = Path(folder).expanduser()

    def __repr__(self):
        return f"<{type(self).__name__} {self.folder}>"

    def path(self, key):
        return self.folder / f"{key}.json"

    def get(self, key):
        """The stored report text, or None."""
        path = self.path(key)
        if path.exists():
            logger.info("cache hit %s", key[:12])
            return path.read_text()
        logger.info("cache miss %s", key[:12])
        return None

    def put(self, key, text):
        self.folder.mkdir(parents=True, exist_ok=True)
        # Readers only ever see complete files.
        tmp = self.path(key).with_suffix('.tmp')
        tmp.write_text(text)
        tmp.replace(self.path(key))
