"""Fermionic sums, Whittaker scalar products and Toda recursions, computed exactly."""
