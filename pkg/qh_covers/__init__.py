from . import Core, Covers, Schur

__version__ = "0.1.0"
