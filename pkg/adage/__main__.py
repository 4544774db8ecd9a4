"""Module entry point for `python -m adage`."""
from .adage import AdageCMD

if __name__ == "__main__":
    AdageCMD()
