import { ABSTAIN } from "./models.js";
const PURL_BASE = "http://purl.obolibrary.org/obo/";
/** OBO PURL for a CURIE: the first colon becomes an underscore. */
export function purlFromCurie(curie) {
    if (!curie || curie === ABSTAIN || !curie.includes(":")) {
        return null;
    }
    return PURL_BASE + curie.replace(":", "_");
}
