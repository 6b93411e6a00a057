"""Test suite for the Frobenius Jacobian Toolkit."""
