import json
from pathlib import Path

from typing import Any, Dict

CONFIG_DIR = Path(__file__).parent / "config"

# Defaults used when config/settings.json is missing or incomplete
DEFAULT_SETTINGS = {
    'subset_table_limit': 24,
    'hmax_offset': 6,
    'coefficient_k_offset': 3,
    'default_pivot_rule': 'max-multiplicity',
    'use_canonical_cache': True,
    'log_level': 'WARNING',
    'log_to_file': True,
}

DEFAULT_FAMILIES = {
    'uniform': {'name': 'Uniform matroid U(r,m)', 'kind': 'ranked', 'params': {'r': None, 'm': None}},
    'complete-graph': {'name': 'Complete graph K_n', 'kind': 'graph', 'params': {'n': None}},
}


def _load_json(filename: str, fallback: Dict[str, Any]) -> Dict[str, Any]:
    """Load a JSON file from the config directory, falling back to built-in values."""
    path = CONFIG_DIR / filename
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        return dict(fallback)


def load_settings() -> Dict[str, Any]:
    settings = dict(DEFAULT_SETTINGS)
    settings.update(_load_json('settings.json', DEFAULT_SETTINGS))
    return settings


def load_families() -> Dict[str, Dict[str, Any]]:
    """Load the generator family registry (config/families.json)."""
    return _load_json('families.json', DEFAULT_FAMILIES)


SETTINGS = load_settings()

# Engine configuration
SUBSET_TABLE_LIMIT = int(SETTINGS['subset_table_limit'])
DEFAULT_PIVOT_RULE = SETTINGS['default_pivot_rule']
USE_CANONICAL_CACHE = bool(SETTINGS['use_canonical_cache'])

# Verifier ranges: h in [0, m + HMAX_OFFSET], k in [0, m + COEFFICIENT_K_OFFSET]
HMAX_OFFSET = int(SETTINGS['hmax_offset'])
COEFFICIENT_K_OFFSET = int(SETTINGS['coefficient_k_offset'])

# Logging
LOG_LEVEL = SETTINGS['log_level']
LOG_TO_FILE = bool(SETTINGS['log_to_file'])
