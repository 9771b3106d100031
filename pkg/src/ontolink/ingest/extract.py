"""Turn a parsed triple stream into validated concept records."""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable

from ..constants import (
    DEFINITION_PREDICATE,
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_SUBCLASS_OF,
    SYNONYM_PREDICATES,
    UNDEFINED_DEFINITION,
)
from .model import EntityRecord, IngestConfig, IngestReport, to_curie, validate_curie
from .ntriples import Literal, Triple

logger = logging.getLogger(__name__)

SKIP_NOT_A_CONCEPT = "not_a_concept"
SKIP_NO_CURIE = "no_curie"
SKIP_INVALID_CURIE = "invalid_curie"
SKIP_MISSING_LABEL = "missing_label"


def extract_entities(
    triples: Iterable[Triple], config: IngestConfig
) -> tuple[list[EntityRecord], IngestReport]:
    """One record per rdf:type'd subject that is a configured concept class,
    CURIE-convertible, pattern-valid, and labeled; everything else is counted
    in the report. Output is sorted by CURIE.
    """
    types: dict[object, set[str]] = defaultdict(set)
    labels: dict[object, set[str]] = defaultdict(set)
    synonyms: dict[object, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))
    definitions: dict[object, set[str]] = defaultdict(set)
    subclass_of: dict[object, set[str]] = defaultdict(set)
    relation_targets: dict[object, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))

    relation_iris: list[tuple[str, str]] = []  # (predicate IRI, human name), config order
    for curie, name in config.relation_curies:
        iri = config.prefix_map.iri_from_curie(curie)
        if iri is None:
            logger.warning("relation %s has no resolvable IRI; skipping it", curie)
            continue
        relation_iris.append((iri, name))
    relation_names = {iri: name for iri, name in relation_iris}

    for subject, predicate, obj in triples:
        if predicate == RDF_TYPE and isinstance(obj, str):
            types[subject].add(obj)
        elif predicate == RDFS_LABEL and isinstance(obj, Literal):
            labels[subject].add(obj.value)
        elif predicate in SYNONYM_PREDICATES and isinstance(obj, Literal):
            synonyms[subject][predicate].add(obj.value)
        elif predicate == DEFINITION_PREDICATE and isinstance(obj, Literal):
            definitions[subject].add(obj.value)
        if predicate == RDFS_SUBCLASS_OF and isinstance(obj, str):
            subclass_of[subject].add(obj)
        if predicate in relation_names and isinstance(obj, str):
            target = to_curie(obj, config.prefix_map)
            if target is not None:
                relation_targets[subject][predicate].add(target)

    report = IngestReport()
    concept_classes = set(config.concept_classes)
    accepted: list[tuple[str, object]] = []  # (curie, subject)

    for subject in sorted(types, key=str):
        report.candidates += 1
        if not (types[subject] & concept_classes):
            report.skip(SKIP_NOT_A_CONCEPT)
            continue
        curie = to_curie(subject, config.prefix_map) if isinstance(subject, str) else None
        if curie is None:
            report.skip(SKIP_NO_CURIE)
            continue
        if not validate_curie(curie, config):
            report.skip(SKIP_INVALID_CURIE)
            continue
        if not labels[subject]:
            report.skip(SKIP_MISSING_LABEL)
            continue
        accepted.append((curie, subject))

    valid_curies = {curie for curie, _ in accepted}

    records: list[EntityRecord] = []
    parent_graph: dict[str, list[str]] = {}
    for curie, subject in sorted(accepted):
        all_labels = sorted(labels[subject])
        label = all_labels[0]
        extra_labels = all_labels[1:]

        # Synonyms keep predicate-class order (exact, related, broad, narrow),
        # sorted within each class; surplus labels trail. Case-insensitive
        # dedup, and the label itself never appears.
        merged: list[str] = []
        seen_lower = {label.lower()}
        for predicate in SYNONYM_PREDICATES:
            for value in sorted(synonyms[subject].get(predicate, ())):
                if value.lower() not in seen_lower:
                    seen_lower.add(value.lower())
                    merged.append(value)
        for value in extra_labels:
            if value.lower() not in seen_lower:
                seen_lower.add(value.lower())
                merged.append(value)

        definition = min(definitions[subject]) if definitions[subject] else UNDEFINED_DEFINITION

        parents = sorted(
            {
                parent_curie
                for parent_iri in subclass_of[subject]
                if (parent_curie := to_curie(parent_iri, config.prefix_map)) in valid_curies
                and parent_curie != curie
            }
        )
        parent_graph[curie] = parents

        relations: dict[str, list[str]] = {}
        for iri, name in relation_iris:
            targets = sorted(relation_targets[subject].get(iri, ()))
            if targets:
                relations[name] = targets

        records.append(
            EntityRecord(
                curie=curie,
                label=label,
                synonyms=merged,
                definition=definition,
                relations=relations,
                parents=parents,
                ancestors=[],
            )
        )

    ancestors = transitive_ancestors(parent_graph)
    for record in records:
        record.ancestors = ancestors[record.curie]

    report.emitted = len(records)
    return records, report


def transitive_ancestors(parents: dict[str, list[str]]) -> dict[str, list[str]]:
    """Reflexive-free reachability over the parent graph, sorted per node.

    Terminates on cycles: every member of a cycle gets the cycle's node union
    (minus itself) plus whatever the cycle reaches.
    """
    order: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comp_of: dict[str, int] = {}
    comp_members: list[list[str]] = []
    counter = 0

    for root in parents:
        if root in order:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            node, child_index = work.pop()
            if child_index == 0:
                order[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            children = parents.get(node, [])
            advanced = False
            for i in range(child_index, len(children)):
                child = children[i]
                if child not in order:
                    work.append((node, i + 1))
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], order[child])
            if advanced:
                continue
            for child in children:
                if comp_of.get(child) is None and child in low:
                    low[node] = min(low[node], low[child])
            if low[node] == order[node]:
                members = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp_of[member] = len(comp_members)
                    members.append(member)
                    if member == node:
                        break
                comp_members.append(members)

    # Components complete in dependency order: everything a component reaches
    # is already numbered, so a single pass accumulates closures.
    comp_reach: list[set[str]] = []
    for comp_id, members in enumerate(comp_members):
        reach: set[str] = set()
        cyclic = len(members) > 1 or any(m in parents.get(m, []) for m in members)
        if cyclic:
            reach.update(members)
        for member in members:
            for parent in parents.get(member, []):
                parent_comp = comp_of[parent]
                if parent_comp != comp_id:
                    reach.add(parent)
                    reach.update(comp_members[parent_comp])
                    reach.update(comp_reach[parent_comp])
        comp_reach.append(reach)

    result: dict[str, list[str]] = {}
    for node in parents:
        reach = comp_reach[comp_of[node]]
        result[node] = sorted(reach - {node})
    return result
