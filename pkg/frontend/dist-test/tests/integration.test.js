/** End-to-end check over real fixture files produced by the linking CLI:
 * two 10-row runs plus the ontology dump, aligned and judged. */
import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";
import { alignMappings, overlapCount } from "../src/align.js";
import { parseDumpFile, parseMappingFile } from "../src/parse.js";
import { computeStats, exportVerdicts, importVerdicts, recordVerdict } from "../src/verdicts.js";
const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "tests", "fixtures");
function load(name) {
    return readFileSync(join(FIXTURES, name), "utf-8");
}
test("aligns two real 10-row runs against the dump", () => {
    const entriesA = parseMappingFile(load("run_a.jsonl"), "A");
    const entriesB = parseMappingFile(load("run_b.jsonl"), "B");
    const dump = parseDumpFile(load("dump.json"));
    const aligned = alignMappings(entriesA, entriesB, dump);
    assert.equal(aligned.rows.length, 10);
    assert.deepEqual(aligned.unalignedA, []);
    assert.deepEqual(aligned.unalignedB, []);
    for (const row of aligned.rows) {
        if (row.sideA.curie !== "-1") {
            assert.equal(row.sideA.purl, "http://purl.obolibrary.org/obo/" + row.sideA.curie.replace(":", "_"));
        }
    }
    // run B abstained once and diverted once, so 8 of 10 rows overlap
    assert.equal(overlapCount(aligned.rows), 8);
    const abstained = aligned.rows.find((row) => row.sideB.curie === "-1");
    assert.ok(abstained);
    assert.equal(abstained.sideB.purl, null);
});
test("the comparison export loads into both slots and matches the raw runs", () => {
    const dump = parseDumpFile(load("dump.json"));
    const fromExportA = parseMappingFile(load("comparison.json"), "A");
    const fromExportB = parseMappingFile(load("comparison.json"), "B");
    const fromRuns = alignMappings(parseMappingFile(load("run_a.jsonl"), "A"), parseMappingFile(load("run_b.jsonl"), "B"), dump);
    const fromExport = alignMappings(fromExportA, fromExportB, dump);
    assert.deepEqual(fromExport.rows.map((row) => [row.mention, row.sideA.curie, row.sideB.curie]), fromRuns.rows.map((row) => [row.mention, row.sideA.curie, row.sideB.curie]));
});
test("verdicts over the real rows export, recount, and re-import", () => {
    const dump = parseDumpFile(load("dump.json"));
    const aligned = alignMappings(parseMappingFile(load("run_a.jsonl"), "A"), parseMappingFile(load("run_b.jsonl"), "B"), dump);
    recordVerdict(aligned.rows[0], "Both_correct");
    recordVerdict(aligned.rows[1], "A_better", "B abstained");
    recordVerdict(aligned.rows[5], "A_better");
    const payload = exportVerdicts(aligned.rows);
    assert.equal(payload.rows.length, 3);
    assert.deepEqual(payload.stats, computeStats(aligned.rows));
    assert.equal(payload.stats.a_correct, 3);
    assert.equal(payload.stats.b_correct, 1);
    const fresh = alignMappings(parseMappingFile(load("run_a.jsonl"), "A"), parseMappingFile(load("run_b.jsonl"), "B"), dump);
    assert.equal(importVerdicts(fresh.rows, JSON.parse(JSON.stringify(payload))), 3);
    assert.deepEqual(computeStats(fresh.rows), payload.stats);
});
