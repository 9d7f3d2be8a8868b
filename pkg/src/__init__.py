"""relqhe: thermal uncertainty and Stirling cycle of a Klein-Gordon particle in a box."""

__version__ = "1.0.0"
