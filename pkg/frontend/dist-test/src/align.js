/** Alignment: join the two mapping files on mention, enrich from the dump. */
import { ABSTAIN, } from "./models.js";
import { purlFromCurie } from "./purl.js";
export function sideFor(entry, dump) {
    if (entry.curie === ABSTAIN || entry.curie === "") {
        return {
            curie: ABSTAIN,
            label: null,
            definition: null,
            synonyms: [],
            purl: null,
            missingFromDump: false,
        };
    }
    const record = dump.get(entry.curie);
    if (record === undefined) {
        return {
            curie: entry.curie,
            label: entry.label,
            definition: null,
            synonyms: [],
            purl: purlFromCurie(entry.curie),
            missingFromDump: true,
        };
    }
    return {
        curie: record.curie,
        label: record.label,
        definition: record.definition,
        synonyms: record.synonyms,
        purl: purlFromCurie(record.curie),
        missingFromDump: false,
    };
}
/** Rows for the mention intersection (A-file order); everything unmatched is
 * reported per side. Duplicate mentions within one file keep the first entry. */
export function alignMappings(entriesA, entriesB, dump) {
    const byMentionA = new Map();
    for (const entry of entriesA) {
        if (!byMentionA.has(entry.mention)) {
            byMentionA.set(entry.mention, entry);
        }
    }
    const byMentionB = new Map();
    for (const entry of entriesB) {
        if (!byMentionB.has(entry.mention)) {
            byMentionB.set(entry.mention, entry);
        }
    }
    const rows = [];
    for (const [mention, entryA] of byMentionA) {
        const entryB = byMentionB.get(mention);
        if (entryB === undefined) {
            continue;
        }
        rows.push({
            mention,
            sideA: sideFor(entryA, dump),
            sideB: sideFor(entryB, dump),
            verdict: null,
        });
    }
    const unalignedA = [...byMentionA.keys()].filter((m) => !byMentionB.has(m));
    const unalignedB = [...byMentionB.keys()].filter((m) => !byMentionA.has(m));
    return { rows, unalignedA, unalignedB };
}
/** Rows where both systems chose the same concept (the "overlap" statistic). */
export function overlapCount(rows) {
    return rows.filter((row) => row.sideA.curie !== ABSTAIN && row.sideA.curie === row.sideB.curie).length;
}
