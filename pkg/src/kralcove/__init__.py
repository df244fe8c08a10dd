"""Kottwitz-Rapoport alcove combinatorics for GL_n and GSp_2g, and exact lifting witnesses."""

__version__ = "0.1.0"
