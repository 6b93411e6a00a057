"""Shared utilities: errors, logging, validation and failure logs."""
