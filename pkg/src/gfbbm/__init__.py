"""gfbbm-lab - solitary waves, stability and dynamics of the gfBBM equation."""

__version__ = "1.0.0"
__author__ = "gfbbm-lab contributors"
