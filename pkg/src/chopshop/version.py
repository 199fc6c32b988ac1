"""Single source of the toolkit version recorded in certificates."""

__version__ = "0.1.0"
