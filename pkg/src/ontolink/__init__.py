"""ontolink: hybrid lexical-semantic entity linking against ontology concepts."""

__version__ = "0.1.0"
