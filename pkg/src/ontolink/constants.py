"""Shared sentinel values and well-known IRIs."""

# Serialized identifier for "no acceptable concept": agents emit it, results carry it.
ABSTAIN = "-1"

OBO_PURL_BASE = "http://purl.obolibrary.org/obo/"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_SUBCLASS_OF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"

OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
SKOS_CONCEPT = "http://www.w3.org/2004/02/skos/core#Concept"

# Synonym annotations, in the order their values are folded into a record.
SYNONYM_PREDICATES = (
    "http://www.geneontology.org/formats/oboInOwl#hasExactSynonym",
    "http://www.geneontology.org/formats/oboInOwl#hasRelatedSynonym",
    "http://www.geneontology.org/formats/oboInOwl#hasBroadSynonym",
    "http://www.geneontology.org/formats/oboInOwl#hasNarrowSynonym",
)

DEFINITION_PREDICATE = "http://purl.obolibrary.org/obo/IAO_0000115"

UNDEFINED_DEFINITION = "Undefined"


def purl_from_curie(curie: str) -> str:
    """OBO persistent URL for a CURIE: colon becomes underscore under the PURL base."""
    return OBO_PURL_BASE + curie.replace(":", "_", 1)
