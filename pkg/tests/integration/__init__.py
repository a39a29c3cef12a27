"""Integration tests for kickedtop."""
