"""repairlab: corrupt camera frames, repair them, and measure what the controller loses."""

__version__ = "0.1.0"
