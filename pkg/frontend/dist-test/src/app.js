/** DOM wiring for the Ontology Mapping Comparator single-page app. */
import { alignMappings, overlapCount } from "./align.js";
import { ABSTAIN, VERDICT_CHOICES } from "./models.js";
import { parseDumpFile, parseMappingFile } from "./parse.js";
import { clearSession, restoreSession, saveSession, sessionKey, } from "./storage.js";
import { clearVerdict, computeStats, exportVerdicts, importVerdicts, recordVerdict } from "./verdicts.js";
const files = { a: null, b: null, dump: null };
let rows = [];
let unalignedA = [];
let unalignedB = [];
let storageKey = null;
let selectedIndex = -1;
const $ = (id) => document.getElementById(id);
const CHOICE_LABELS = {
    A_better: "A better",
    B_better: "B better",
    Both_correct: "Both correct",
    Both_incorrect: "Both incorrect",
};
function readFileInput(input, handler) {
    input.addEventListener("change", async () => {
        const file = input.files?.[0];
        if (!file) {
            return;
        }
        handler(await file.text());
    });
}
function setStatus(message, isError = false) {
    const node = $("status");
    node.textContent = message;
    node.className = isError ? "status error" : "status";
}
function tryAlign() {
    if (files.a === null || files.b === null || files.dump === null) {
        setStatus("Load both mapping files and the ontology dump.");
        return;
    }
    try {
        const entriesA = parseMappingFile(files.a, "A");
        const entriesB = parseMappingFile(files.b, "B");
        const dump = parseDumpFile(files.dump);
        const aligned = alignMappings(entriesA, entriesB, dump);
        rows = aligned.rows;
        unalignedA = aligned.unalignedA;
        unalignedB = aligned.unalignedB;
        storageKey = sessionKey(files.a, files.b, files.dump);
        const restored = restoreSession(window.localStorage, storageKey, rows);
        selectedIndex = rows.length ? 0 : -1;
        setStatus(`${rows.length} aligned mention(s); ${unalignedA.length + unalignedB.length} unaligned` +
            (restored ? `; ${restored} verdict(s) restored from this browser` : ""));
        render();
    }
    catch (error) {
        rows = [];
        render();
        setStatus(`Could not load files: ${error.message}`, true);
    }
}
function persist() {
    if (storageKey !== null) {
        saveSession(window.localStorage, storageKey, rows);
    }
}
function sideHtml(row, which) {
    const side = row[which];
    if (side.curie === ABSTAIN) {
        return `<div class="side abstain"><span class="curie">no mapping (-1)</span></div>`;
    }
    const curie = side.purl
        ? `<a href="${side.purl}" target="_blank" rel="noopener">${side.curie}</a>`
        : side.curie;
    if (side.missingFromDump) {
        return `
      <div class="side missing">
        <span class="curie">${curie}</span>
        <span class="label">${side.label ?? ""}</span>
        <span class="placeholder">no dump entry</span>
      </div>`;
    }
    const synonyms = side.synonyms.length
        ? `<div class="synonyms">synonyms: ${side.synonyms.join(", ")}</div>`
        : "";
    return `
    <div class="side">
      <span class="curie">${curie}</span>
      <span class="label">${side.label ?? ""}</span>
      <div class="definition">${side.definition ?? ""}</div>
      ${synonyms}
    </div>`;
}
function verdictButtons(row, index) {
    return VERDICT_CHOICES.map((choice, i) => {
        const active = row.verdict?.choice === choice ? " active" : "";
        return `<button class="verdict${active}" data-index="${index}" data-choice="${choice}">
      ${i + 1} ${CHOICE_LABELS[choice]}</button>`;
    }).join("");
}
function render() {
    const list = $("rows");
    list.innerHTML = rows
        .map((row, index) => `
    <article class="row${index === selectedIndex ? " selected" : ""}" data-index="${index}">
      <header>
        <span class="mention">${row.mention}</span>
        ${row.verdict ? `<span class="chip">${CHOICE_LABELS[row.verdict.choice]}</span>` : ""}
      </header>
      <div class="sides">
        <div class="col"><h4>System A</h4>${sideHtml(row, "sideA")}</div>
        <div class="col"><h4>System B</h4>${sideHtml(row, "sideB")}</div>
      </div>
      <footer>
        ${verdictButtons(row, index)}
        <input class="note" data-index="${index}" placeholder="note (optional)"
               value="${row.verdict?.note ?? ""}" />
        <button class="clear" data-index="${index}">clear</button>
      </footer>
    </article>`)
        .join("");
    const stats = computeStats(rows);
    $("stats").innerHTML = `
    <dl>
      <dt>Aligned rows</dt><dd>${rows.length}</dd>
      <dt>Same concept (overlap)</dt><dd>${overlapCount(rows)}</dd>
      <dt>A better</dt><dd>${stats.A_better}</dd>
      <dt>B better</dt><dd>${stats.B_better}</dd>
      <dt>Both correct</dt><dd>${stats.Both_correct}</dd>
      <dt>Both incorrect</dt><dd>${stats.Both_incorrect}</dd>
      <dt>A correct total</dt><dd>${stats.a_correct}</dd>
      <dt>B correct total</dt><dd>${stats.b_correct}</dd>
    </dl>`;
    $("unaligned").innerHTML =
        unalignedA.length + unalignedB.length === 0
            ? "<p>none</p>"
            : `
    <h4>Only in A (${unalignedA.length})</h4>
    <ul>${unalignedA.map((m) => `<li>${m}</li>`).join("")}</ul>
    <h4>Only in B (${unalignedB.length})</h4>
    <ul>${unalignedB.map((m) => `<li>${m}</li>`).join("")}</ul>`;
    list.querySelectorAll("button.verdict").forEach((node) => {
        node.addEventListener("click", (event) => {
            const target = event.currentTarget;
            const index = Number(target.dataset.index);
            const note = list.querySelector(`input.note[data-index="${index}"]`).value;
            recordVerdict(rows[index], target.dataset.choice, note);
            selectedIndex = index;
            persist();
            render();
        });
    });
    list.querySelectorAll("button.clear").forEach((node) => {
        node.addEventListener("click", (event) => {
            const index = Number(event.currentTarget.dataset.index);
            clearVerdict(rows[index]);
            persist();
            render();
        });
    });
    list.querySelectorAll("article.row").forEach((node) => {
        node.addEventListener("click", () => {
            selectedIndex = Number(node.dataset.index);
            list.querySelectorAll("article.row").forEach((other) => other.classList.toggle("selected", other === node));
        });
    });
}
function download(filename, text) {
    const blob = new Blob([text], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    anchor.click();
    URL.revokeObjectURL(url);
}
function setupKeyboard() {
    document.addEventListener("keydown", (event) => {
        if (event.target.tagName === "INPUT") {
            return;
        }
        if (event.key === "j" || event.key === "k") {
            if (!rows.length) {
                return;
            }
            selectedIndex =
                event.key === "j"
                    ? Math.min(selectedIndex + 1, rows.length - 1)
                    : Math.max(selectedIndex - 1, 0);
            render();
            document
                .querySelector(`article.row[data-index="${selectedIndex}"]`)
                ?.scrollIntoView({ block: "nearest" });
            return;
        }
        const position = ["1", "2", "3", "4"].indexOf(event.key);
        if (position >= 0 && selectedIndex >= 0 && selectedIndex < rows.length) {
            recordVerdict(rows[selectedIndex], VERDICT_CHOICES[position]);
            persist();
            render();
        }
    });
}
export function init() {
    const slots = [
        ["file-a", "A"],
        ["file-b", "B"],
        ["file-dump", "dump"],
    ];
    for (const [id, slot] of slots) {
        readFileInput($(id), (text) => {
            if (slot === "A") {
                files.a = text;
            }
            else if (slot === "B") {
                files.b = text;
            }
            else {
                files.dump = text;
            }
            tryAlign();
        });
    }
    $("export").addEventListener("click", () => {
        download("verdicts.json", JSON.stringify(exportVerdicts(rows), null, 2));
    });
    readFileInput($("import"), (text) => {
        try {
            const applied = importVerdicts(rows, JSON.parse(text));
            persist();
            render();
            setStatus(`${applied} verdict(s) imported`);
        }
        catch (error) {
            setStatus(`Import failed: ${error.message}`, true);
        }
    });
    $("reset").addEventListener("click", () => {
        rows.forEach(clearVerdict);
        if (storageKey !== null) {
            clearSession(window.localStorage, storageKey);
        }
        render();
    });
    setupKeyboard();
    setStatus("Load both mapping files and the ontology dump.");
}
if (typeof document !== "undefined" && document.readyState !== "loading") {
    init();
}
else if (typeof document !== "undefined") {
    document.addEventListener("DOMContentLoaded", init);
}
