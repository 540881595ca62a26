"""Generalized concatenated quantum codes in the codeword-stabilized picture."""
