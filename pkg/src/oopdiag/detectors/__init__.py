"""Indicator detectors."""

from __future__ import annotations

from .catalog import DISPLAY_NAMES, INDICATORS, PROXY_INDICATORS, SEVERITIES, Evidence, IssueInstance, severity_for
from .config import ThresholdConfig, load_thresholds, stricter_direction, thresholds_for
from .rules import RULES, detect_dependency_cycles, detect_duplicate_code, run_detectors

__all__ = [
    "DISPLAY_NAMES", "INDICATORS", "PROXY_INDICATORS", "SEVERITIES", "Evidence", "IssueInstance",
    "severity_for", "ThresholdConfig", "load_thresholds", "stricter_direction", "thresholds_for", "RULES",
    "detect_dependency_cycles", "detect_duplicate_code", "run_detectors",
]
