"""Tests for the ssm2d package."""
