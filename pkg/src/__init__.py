"""Critical Multi-Cubic Lattice Toolkit"""
__version__ = "1.0.0"
