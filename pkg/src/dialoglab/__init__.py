"""A desk-scale laboratory for task-oriented dialog user simulators."""

__version__ = "0.1.0"
