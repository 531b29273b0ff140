"""Test suite for fracwright."""
