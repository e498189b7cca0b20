"""Unit test package for qh_covers."""
