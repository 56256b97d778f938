"""Recurrence oracle for the 2-D SSM."""

from ssm2d.recurrence.scan import StateGrid, impulse_response, scan

__all__ = ["StateGrid", "impulse_response", "scan"]
