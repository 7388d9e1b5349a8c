"""Corpus-driven verification of the bioperation results."""
