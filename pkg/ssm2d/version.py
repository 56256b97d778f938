"""Version information for ssm2d."""

__version__ = "0.1.0"
