"""Exact toolkit for the sequence spaces J(e) and their Hilbert/James dichotomy."""

from .core import (
    DSet, EVector, Sequence, e_norm_sq, e_norm_sq_bruteforce, e_norm_witness,
    james_chain_norm_sq, james_norm_sq, l2_norm_sq, padded_horizon, scalar_product,
    u_vector, variation_sq,
)
from .bounds import classify
from .dispersal import TwoSet, decompose_dispersed, extend_to_block_set, is_d_dispersed

__version__ = "0.1.0"
