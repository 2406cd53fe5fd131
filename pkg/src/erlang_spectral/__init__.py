"""Spectral gap and transient behavior of the Erlang A heavy-traffic diffusion."""

__version__ = "0.1.0"
