import os
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables from .env file
env_path = Path(__file__).parent.parent / '.env'
load_dotenv(dotenv_path=env_path, override=False)

LOGFIRE_TOKEN = os.getenv("LOGFIRE_TOKEN")

# Parallelism cap for the exhaustive suites
AECLAB_THREADS = max(1, int(os.getenv("AECLAB_THREADS", os.cpu_count() or 1)))

# Corpus bounds
DEFAULT_MAX_SIZE = int(os.getenv("AECLAB_MAX_SIZE", 5))
DEFAULT_CHAIN_LEN = int(os.getenv("AECLAB_CHAIN_LEN", 4))
DEFAULT_FORBIDDEN_MAX_SIZE = int(os.getenv("AECLAB_FORBIDDEN_MAX_SIZE", 4))
ENUMERATION_LIMIT = 7  # graph atlas covers every graph up to 7 vertices

# Amalgam search
DEFAULT_AMALGAM_BOUND = int(os.getenv("AECLAB_AMALGAM_BOUND", 7))
DEFAULT_EXTRA_VERTICES = int(os.getenv("AECLAB_EXTRA_VERTICES", 2))

# Relation behaviour
STRICT_ATTACH = os.getenv("AECLAB_STRICT_ATTACH", "false").lower() in ("1", "true", "yes")

# Random corpus
DEFAULT_SEED = int(os.getenv("AECLAB_SEED", 20240601))
RANDOM_EDGE_PROBABILITIES = (0.2, 0.5, 0.8)
RANDOM_GRAPHS_PER_SIZE = int(os.getenv("AECLAB_RANDOM_GRAPHS_PER_SIZE", 50))
RANDOM_SIZES = (3, 4, 5, 6)

# Reports
REPORT_DIR = os.getenv("AECLAB_REPORT_DIR", "reports")
RECORD_TIMING = os.getenv("AECLAB_RECORD_TIMING", "false").lower() in ("1", "true", "yes")
