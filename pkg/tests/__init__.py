"""Tests for the aeclab package."""
