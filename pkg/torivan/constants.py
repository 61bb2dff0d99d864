from pathlib import Path

# Lemmas on the blow-up fans need three coordinates to route paths around.
MIN_DIM = 3

DEFAULT_MARGIN = 1
DEFAULT_CAP = 10_000_000
DEFAULT_JOBS = 1

# Largest magnitude a JSON reader is guaranteed to hold exactly.
SAFE_INT = 2 ** 53

BASE_FOLDER = Path('~/.torivan').expanduser()
CONFIG_FILE = BASE_FOLDER / 'torivan.ini'
