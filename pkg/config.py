# config.py

# Configuration defaults, each overridable through a KHG_* environment variable.
# Modules read these as config.NAME at call time.

import os
import tempfile


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value else default


# Search and enumeration guards
ISO_MAX_VERTICES = _env_int("KHG_ISO_MAX_VERTICES", 14)
FR_MAX_VERTICES = _env_int("KHG_FR_MAX_VERTICES", 5000)
FAMILY_CAP = _env_int("KHG_FAMILY_CAP", 4096)  # C(s,t)^r above this needs an explicit override
HFAMILY_MAX_EDGES = _env_int("KHG_HFAMILY_MAX_EDGES", 20)  # 2^C(m,k) scan
BRUTE_COLOUR_MAX_VERTICES = _env_int("KHG_BRUTE_COLOUR_MAX_VERTICES", 24)
EMBEDDING_ENUM_LIMIT = _env_int("KHG_EMBEDDING_ENUM_LIMIT", 5_000_000)
EXTENSION_MAX_INDICES = _env_int("KHG_EXTENSION_MAX_INDICES", 5000)
BRUTE_COEX_MAX_EDGES = _env_int("KHG_BRUTE_COEX_MAX_EDGES", 20)
PROFILE_MATERIALIZE_LIMIT = _env_int("KHG_PROFILE_MATERIALIZE_LIMIT", 2_000_000)

# SAT backends
SAT_BACKEND = os.environ.get("KHG_SAT_BACKEND", "internal")
SAT_CMD = os.environ.get("KHG_SAT_CMD", "")
SAT_TIMEOUT = _env_float("KHG_SAT_TIMEOUT", 300.0)

# Sampling
SAMPLE_EXHAUSTIVE_LIMIT = _env_int("KHG_SAMPLE_EXHAUSTIVE_LIMIT", 10**6)
SAMPLE_CHUNK = _env_int("KHG_SAMPLE_CHUNK", 10_000)
N_JOBS = _env_int("KHG_N_JOBS", 1)

# Numeric output
FLOAT_DIGITS = 10
COMPARE_SLACK = 1e-12

# Logging
LOG_DIR = os.environ.get("KHG_LOG_DIR", os.path.join(tempfile.gettempdir(), "khg", "logs"))
LOG_FORMAT = os.environ.get("KHG_LOG_FORMAT", "plain")  # "plain" or "json"
LOG_LEVEL = os.environ.get("KHG_LOG_LEVEL", "INFO")
