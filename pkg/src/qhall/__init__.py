"""Exact symbolic quantum groups over Q(v) with a finite-field Hall oracle."""

__version__ = "0.1.0"
