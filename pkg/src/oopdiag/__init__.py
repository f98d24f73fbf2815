"""Detect object-oriented code-quality indicators in student Java code and map
them to the learning challenges they suggest."""

from __future__ import annotations

__version__ = "0.1.0"
