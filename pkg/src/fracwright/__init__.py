"""fracwright: multi-parameter generalized Wright functions and fractional hyper-Bessel operators."""

__version__ = "0.1.0"
