"""
switchcert: simulation and stability certification for delayed stochastic
systems whose parameters switch under a Cox process driven by a general
discrete adapted mode sequence.
"""

__version__ = "0.1.0"
