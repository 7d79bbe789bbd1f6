"""sol2eb: translate a Solidity subset to Event-B, check proof obligations by
bounded enumeration, and animate the resulting machines."""

__version__ = "0.1.0"
