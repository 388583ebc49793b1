"""HAWK-style server-side FPS anti-cheat engine."""

__version__ = "0.1.0"
