/** Shared types for the Ontology Mapping Comparator. */
export const ABSTAIN = "-1";
export const VERDICT_CHOICES = [
    "A_better",
    "B_better",
    "Both_correct",
    "Both_incorrect",
];
