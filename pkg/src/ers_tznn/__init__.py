"""Error-dynamics settling-time toolkit for time-variant QP solving with TZNN models."""

__version__ = "0.1.0"
