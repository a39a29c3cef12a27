"""Test suite for kickedtop."""
