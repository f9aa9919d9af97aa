"""Yellow rust forecasting from monthly weather windows."""

__version__ = "0.1.0"
