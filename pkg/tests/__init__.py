"""Tests for hotspot-shift."""
