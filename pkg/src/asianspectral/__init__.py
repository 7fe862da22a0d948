"""Spectral pricing of arithmetic Asian options with supporting special functions."""

from .pricer import MarketParams, NormalizedParams, PriceResult, normalize, parity_gap, price

__version__ = "0.1.0"

__all__ = ["MarketParams", "NormalizedParams", "PriceResult", "normalize", "parity_gap", "price"]
