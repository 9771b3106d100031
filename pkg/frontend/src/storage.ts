/** Session persistence: verdicts survive reloads of the same three files.
 *
 * The storage key is a content hash of the loaded file texts, so reloading
 * identical files restores the session and different files never collide.
 * Storage is injectable for tests; the app passes window.localStorage.
 */

import { ComparisonRow, Verdict, VERDICT_CHOICES } from "./models.js";

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

/** FNV-1a over the concatenated texts, as a fixed-width hex string. */
export function contentHash(...texts: string[]): string {
  let hash = 0x811c9dc5;
  for (const text of texts) {
    for (let i = 0; i < text.length; i++) {
      hash ^= text.charCodeAt(i);
      hash = Math.imul(hash, 0x01000193) >>> 0;
    }
    hash ^= 0x1e;  // separator so ("ab","c") differs from ("a","bc")
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash.toString(16).padStart(8, "0");
}

export function sessionKey(fileA: string, fileB: string, dump: string): string {
  return `comparator:${contentHash(fileA, fileB, dump)}`;
}

export function saveSession(store: KeyValueStore, key: string, rows: ComparisonRow[]): void {
  const verdicts: Record<string, Verdict> = {};
  for (const row of rows) {
    if (row.verdict !== null) {
      verdicts[row.mention] = row.verdict;
    }
  }
  store.setItem(key, JSON.stringify(verdicts));
}

/** Apply a saved session to freshly aligned rows; unknown mentions are ignored. */
export function restoreSession(store: KeyValueStore, key: string, rows: ComparisonRow[]): number {
  const raw = store.getItem(key);
  if (raw === null) {
    return 0;
  }
  let verdicts: Record<string, Verdict>;
  try {
    verdicts = JSON.parse(raw);
  } catch {
    return 0;
  }
  let applied = 0;
  for (const row of rows) {
    const verdict = verdicts[row.mention];
    if (verdict && VERDICT_CHOICES.includes(verdict.choice)) {
      row.verdict = verdict.note ? { choice: verdict.choice, note: verdict.note } : { choice: verdict.choice };
      applied += 1;
    }
  }
  return applied;
}

export function clearSession(store: KeyValueStore, key: string): void {
  store.removeItem(key);
}
