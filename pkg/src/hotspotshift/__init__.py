"""hotspot-shift - Mobility change points and traffic accident hotspot shifts."""

__version__ = "0.1.0"
