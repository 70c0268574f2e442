import os
import sys

if os.environ.get("TERWILLIGER_HOME"):
    TERWILLIGER_PATH = os.environ["TERWILLIGER_HOME"]
elif sys.platform.startswith("win"):
    TERWILLIGER_PATH = "C:/terwilliger"
else:
    TERWILLIGER_PATH = os.path.expanduser("~/terwilliger")

CONFIG_PATH = os.path.join(TERWILLIGER_PATH, "config")
LOGS_PATH = os.path.join(TERWILLIGER_PATH, "logs")

PROJECT = "terwilliger"

# Brute-force operations refuse schemes with more points than this.
DEFAULT_MAX_POINTS = 4096
MAX_POINTS_ENV = "TERWILLIGER_MAX_POINTS"

# Exhaustive property checks (all base points, triple regularity) run up to this size.
EXHAUSTIVE_POINTS = 36
