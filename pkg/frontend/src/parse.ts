/** Input parsing: each mapping slot accepts any of three formats.
 *
 * 1. Linking results: JSON lines, one object per mention with final_id/label.
 * 2. A plain JSON array of {mention, curie, label?} entries.
 * 3. A comparison export ({"format": "ontolink-comparison", rows: [...]}):
 *    loading it in slot A reads side_a, in slot B side_b, so the same file
 *    can be dropped into both pickers.
 *
 * The dump file is the ingest JSON dump (array of concept records).
 */

import { DumpEntry, MappingEntry } from "./models.js";

export type Slot = "A" | "B";

function entryFromResultRow(row: Record<string, unknown>): MappingEntry {
  return {
    mention: String(row.mention ?? ""),
    curie: String(row.final_id ?? ""),
    label: row.label == null ? null : String(row.label),
  };
}

function entryFromPlain(row: Record<string, unknown>): MappingEntry {
  return {
    mention: String(row.mention ?? ""),
    curie: String(row.curie ?? ""),
    label: row.label == null ? null : String(row.label),
  };
}

function entryFromComparisonRow(row: Record<string, unknown>, slot: Slot): MappingEntry {
  const side = (slot === "A" ? row.side_a : row.side_b) as Record<string, unknown> | undefined;
  return {
    mention: String(row.mention ?? ""),
    curie: String(side?.curie ?? ""),
    label: side?.label == null ? null : String(side.label),
  };
}

export function parseMappingFile(text: string, slot: Slot): MappingEntry[] {
  const trimmed = text.trim();
  if (!trimmed) {
    return [];
  }

  let parsed: unknown = null;
  let wholeFileIsJson = true;
  try {
    parsed = JSON.parse(trimmed);
  } catch {
    wholeFileIsJson = false;
  }

  if (wholeFileIsJson) {
    if (Array.isArray(parsed)) {
      return parsed.map((row) => {
        const record = row as Record<string, unknown>;
        return "final_id" in record ? entryFromResultRow(record) : entryFromPlain(record);
      });
    }
    const record = parsed as Record<string, unknown>;
    if (record && Array.isArray(record.rows)) {
      return (record.rows as Record<string, unknown>[]).map((row) =>
        entryFromComparisonRow(row, slot)
      );
    }
    if (record && "mention" in record) {
      // a single-result file: one JSON object
      return ["final_id" in record ? entryFromResultRow(record) : entryFromPlain(record)];
    }
    throw new Error("Unrecognized mapping file shape");
  }

  // JSON lines
  const entries: MappingEntry[] = [];
  for (const line of trimmed.split("\n")) {
    if (!line.trim()) {
      continue;
    }
    let row: unknown;
    try {
      row = JSON.parse(line);
    } catch {
      throw new Error("Mapping file is neither JSON nor JSON lines");
    }
    const record = row as Record<string, unknown>;
    entries.push("final_id" in record ? entryFromResultRow(record) : entryFromPlain(record));
  }
  return entries;
}

export function parseDumpFile(text: string): Map<string, DumpEntry> {
  const parsed = JSON.parse(text);
  if (!Array.isArray(parsed)) {
    throw new Error("Dump must be a JSON array of concept records");
  }
  const byCurie = new Map<string, DumpEntry>();
  for (const row of parsed) {
    const record = row as Record<string, unknown>;
    if (typeof record.curie !== "string" || typeof record.label !== "string") {
      throw new Error("Dump records need curie and label strings");
    }
    byCurie.set(record.curie, {
      curie: record.curie,
      label: record.label,
      synonyms: Array.isArray(record.synonyms) ? record.synonyms.map(String) : [],
      definition: typeof record.definition === "string" ? record.definition : "Undefined",
    });
  }
  return byCurie;
}
