"""
latentsym: latent symmetry, PT transitions and exceptional points in
non-Hermitian tight-binding networks.
"""

__version__ = "0.1.0"
