"""Synthetic NER/EL gold-standard corpora generated from RDF knowledge bases."""

__version__ = "0.1.0"
