# tests/conftest.py
import os
import sys
import tempfile

# Settings and logs of the test session live in a throwaway home.
os.environ.setdefault("TERWILLIGER_HOME", tempfile.mkdtemp(prefix="terwilliger-tests-"))
os.environ.pop("TERWILLIGER_MAX_POINTS", None)

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
