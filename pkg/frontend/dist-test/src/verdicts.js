/** Verdict recording, summary statistics, and export/import. */
import { VERDICT_CHOICES, } from "./models.js";
export function recordVerdict(row, choice, note) {
    const verdict = note && note.trim() ? { choice, note: note.trim() } : { choice };
    row.verdict = verdict;
    return row;
}
export function clearVerdict(row) {
    row.verdict = null;
    return row;
}
export function computeStats(rows) {
    const stats = {
        A_better: 0,
        B_better: 0,
        Both_correct: 0,
        Both_incorrect: 0,
        a_correct: 0,
        b_correct: 0,
    };
    for (const row of rows) {
        if (row.verdict === null) {
            continue;
        }
        stats[row.verdict.choice] += 1;
    }
    stats.a_correct = stats.A_better + stats.Both_correct;
    stats.b_correct = stats.B_better + stats.Both_correct;
    return stats;
}
export function exportVerdicts(rows) {
    return {
        format: "comparator-verdicts",
        version: 1,
        rows: rows
            .filter((row) => row.verdict !== null)
            .map((row) => ({
            mention: row.mention,
            choice: row.verdict.choice,
            ...(row.verdict.note ? { note: row.verdict.note } : {}),
        })),
        stats: computeStats(rows),
    };
}
/** Restore verdicts from an export onto the current rows, by mention.
 * Returns the number of verdicts applied. */
export function importVerdicts(rows, payload) {
    const data = payload;
    if (!data || data.format !== "comparator-verdicts" || !Array.isArray(data.rows)) {
        throw new Error("Not a verdict export file");
    }
    const byMention = new Map(rows.map((row) => [row.mention, row]));
    let applied = 0;
    for (const entry of data.rows) {
        const row = byMention.get(entry.mention);
        if (row === undefined || !VERDICT_CHOICES.includes(entry.choice)) {
            continue;
        }
        recordVerdict(row, entry.choice, entry.note);
        applied += 1;
    }
    return applied;
}
