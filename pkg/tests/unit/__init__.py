"""Unit tests for kickedtop."""
