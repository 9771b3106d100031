import assert from "node:assert/strict";
import { test } from "node:test";
import { clearVerdict, computeStats, exportVerdicts, importVerdicts, recordVerdict, } from "../src/verdicts.js";
function side(curie) {
    return { curie, label: curie, definition: null, synonyms: [], purl: null, missingFromDump: false };
}
function row(mention) {
    return { mention, sideA: side("FOODON:00000001"), sideB: side("FOODON:00000002"), verdict: null };
}
test("three judged rows produce the documented stats and tallies", () => {
    const rows = [row("m1"), row("m2"), row("m3")];
    recordVerdict(rows[0], "A_better");
    recordVerdict(rows[1], "B_better");
    recordVerdict(rows[2], "Both_correct");
    const stats = computeStats(rows);
    assert.deepEqual(stats, {
        A_better: 1,
        B_better: 1,
        Both_correct: 1,
        Both_incorrect: 0,
        a_correct: 2,
        b_correct: 2,
    });
});
test("export contains only verdict-bearing rows", () => {
    const rows = [row("m1"), row("m2")];
    recordVerdict(rows[0], "Both_incorrect", "neither fits");
    const payload = exportVerdicts(rows);
    assert.equal(payload.rows.length, 1);
    assert.deepEqual(payload.rows[0], { mention: "m1", choice: "Both_incorrect", note: "neither fits" });
    assert.equal(payload.stats.Both_incorrect, 1);
});
test("no verdicts export as empty rows and zero stats", () => {
    const payload = exportVerdicts([row("m1")]);
    assert.deepEqual(payload.rows, []);
    assert.deepEqual(payload.stats, {
        A_better: 0,
        B_better: 0,
        Both_correct: 0,
        Both_incorrect: 0,
        a_correct: 0,
        b_correct: 0,
    });
});
test("export then import round-trips all verdicts", () => {
    const rows = [row("m1"), row("m2"), row("m3")];
    recordVerdict(rows[0], "A_better", "sharper term");
    recordVerdict(rows[2], "Both_correct");
    const payload = JSON.parse(JSON.stringify(exportVerdicts(rows)));
    const fresh = [row("m1"), row("m2"), row("m3")];
    const applied = importVerdicts(fresh, payload);
    assert.equal(applied, 2);
    assert.deepEqual(fresh[0].verdict, { choice: "A_better", note: "sharper term" });
    assert.equal(fresh[1].verdict, null);
    assert.deepEqual(fresh[2].verdict, { choice: "Both_correct" });
    assert.deepEqual(computeStats(fresh), payload.stats);
});
test("import ignores unknown mentions and bad choices", () => {
    const rows = [row("m1")];
    const applied = importVerdicts(rows, {
        format: "comparator-verdicts",
        version: 1,
        rows: [
            { mention: "ghost", choice: "A_better" },
            { mention: "m1", choice: "Definitely_wrong" },
        ],
        stats: {},
    });
    assert.equal(applied, 0);
    assert.equal(rows[0].verdict, null);
});
test("import rejects non-export payloads", () => {
    assert.throws(() => importVerdicts([row("m1")], { hello: "world" }));
});
test("stats always equal a recount after edits", () => {
    const rows = [row("m1"), row("m2")];
    recordVerdict(rows[0], "A_better");
    recordVerdict(rows[1], "A_better");
    recordVerdict(rows[1], "B_better"); // re-judging replaces the verdict
    clearVerdict(rows[0]);
    const stats = computeStats(rows);
    assert.equal(stats.A_better, 0);
    assert.equal(stats.B_better, 1);
    assert.equal(stats.a_correct, 0);
    assert.equal(stats.b_correct, 1);
});
