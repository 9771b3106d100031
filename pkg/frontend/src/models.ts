/** Shared types for the Ontology Mapping Comparator. */

export const ABSTAIN = "-1";

/** One system's mapping for a mention, as displayed on one side of a row. */
export interface MappingSide {
  curie: string;
  label: string | null;
  definition: string | null;
  synonyms: string[];
  purl: string | null;
  /** true when the CURIE was not found in the loaded dump */
  missingFromDump: boolean;
}

export type VerdictChoice = "A_better" | "B_better" | "Both_correct" | "Both_incorrect";

export const VERDICT_CHOICES: VerdictChoice[] = [
  "A_better",
  "B_better",
  "Both_correct",
  "Both_incorrect",
];

export interface Verdict {
  choice: VerdictChoice;
  note?: string;
}

export interface ComparisonRow {
  mention: string;
  sideA: MappingSide;
  sideB: MappingSide;
  verdict: Verdict | null;
}

export interface AlignmentResult {
  rows: ComparisonRow[];
  /** mentions present in exactly one of the two mapping files */
  unalignedA: string[];
  unalignedB: string[];
}

export interface VerdictStats {
  A_better: number;
  B_better: number;
  Both_correct: number;
  Both_incorrect: number;
  /** A_better + Both_correct */
  a_correct: number;
  /** B_better + Both_correct */
  b_correct: number;
}

export interface VerdictExport {
  format: "comparator-verdicts";
  version: 1;
  rows: { mention: string; choice: VerdictChoice; note?: string }[];
  stats: VerdictStats;
}

/** A raw mention -> concept mapping parsed from an uploaded file. */
export interface MappingEntry {
  mention: string;
  curie: string;
  label: string | null;
}

/** One record of the ontology dump. */
export interface DumpEntry {
  curie: string;
  label: string;
  synonyms: string[];
  definition: string;
}
