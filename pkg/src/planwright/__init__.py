"""planwright: adaptive task planning with LLM agents and a built-in solver."""

__version__ = "0.1.0"
