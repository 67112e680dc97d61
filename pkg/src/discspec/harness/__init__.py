"""Configuration, pipelines, reports and the command-line entry point."""

from .config import load, validate
from .pipelines import run
from .report import Report, Row

__all__ = ["load", "validate", "run", "Report", "Row"]
