"""Command-line front end: configuration, stage orchestration and claim reports."""

from .config import ConfigError, RunConfig, parse_config_text
from .report import ClaimReport, ClaimResult
