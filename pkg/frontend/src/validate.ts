/** Client-side pre-checks for the manual-add form.
 *
 * These mirror the server's lemma invariants so reviewers get instant
 * feedback, but the server stays authoritative: anything that passes
 * here can still come back as a 422 with per-field errors.
 */

import type { FieldError, LemmaPayload } from "./types.js";

export const POS_TAGS = [
  "NOUN", "NOUN_PROP", "ADJ", "ADJ_COMP", "ADJ_NUM",
  "NOUN_NUM", "NOUN_QUANT", "DIGIT", "NOUN_VOICE", "ABBREV",
  "PV", "IV", "CV", "PV_PASS", "IV_PASS",
  "PRON", "DEM_PRON", "EMOJI", "REL_PRON", "REL_ADV",
  "ADV", "INTERROG_PART", "INTERROG_ADV", "PREP", "CONJ",
  "INTERROG_PRON", "PART", "RESTRIC_PART", "PUNC", "INTERJ",
  "FOCUS_PART", "DET", "VERB", "VOC_PART", "PROG_PART",
  "SUB_CONJ", "VERB_PART", "FUT_PART", "EXCLAM_PRON",
  "PSEUDO_VERB", "NEG_PART",
] as const;

const VERB_TAGS = new Set(["PV", "IV", "CV", "PV_PASS", "IV_PASS"]);
const NON_DIALECT_TAGS = new Set(["", "MSA", "Classical"]);

const TATWEEL = 0x0640;
const SHADDA = 0x0651;

function isArabicLetter(cp: number): boolean {
  return (cp >= 0x0621 && cp <= 0x063a) || (cp >= 0x0641 && cp <= 0x064a);
}

function isHarakat(cp: number): boolean {
  return cp >= 0x064b && cp <= 0x0652;
}

// letters standing for long vowels stay bare in fully pointed text
const LONG_VOWEL_CARRIERS = new Set(["ا", "آ", "ى", "و", "ي"]);

export function isArabicWord(text: string): boolean {
  if (!text) return false;
  let letters = 0;
  for (const ch of text) {
    const cp = ch.codePointAt(0)!;
    if (cp === TATWEEL) continue;
    if (isArabicLetter(cp)) letters += 1;
    else if (isHarakat(cp)) {
      if (letters === 0) return false;
    } else return false;
  }
  return letters > 0;
}

/** Every letter vowelled except bare long-vowel carriers, last letter included. */
export function isFullyDiacritized(text: string): boolean {
  let current: { letter: string; shadda: boolean; vowel: boolean } | null = null;
  const flush = () =>
    current === null ||
    current.vowel ||
    (LONG_VOWEL_CARRIERS.has(current.letter) && !current.shadda);
  for (const ch of text) {
    const cp = ch.codePointAt(0)!;
    if (cp === TATWEEL) continue;
    if (isArabicLetter(cp)) {
      if (!flush()) return false;
      current = { letter: ch, shadda: false, vowel: false };
    } else if (cp === SHADDA) {
      if (current) current.shadda = true;
    } else if (isHarakat(cp)) {
      // sukun and tanween count as vowel marks here, matching the server
      if (current) current.vowel = true;
    }
  }
  return flush();
}

/** Pre-check a manual-add payload; returns per-field problems, empty when clean. */
export function validateLemmaPayload(payload: LemmaPayload): FieldError[] {
  const errors: FieldError[] = [];
  const spellings = payload.spellings.map((s) => s.trim()).filter((s) => s.length > 0);
  if (spellings.length === 0) {
    errors.push({ field: "spellings", message: "at least one spelling is required" });
  }
  for (const spelling of spellings) {
    if (/\s/.test(spelling)) {
      errors.push({ field: "spellings", message: `multi-word spellings are not allowed: ${spelling}` });
    } else if (!isArabicWord(spelling)) {
      errors.push({ field: "spellings", message: `not an Arabic word form: ${spelling}` });
    }
  }
  const dialectal = !NON_DIALECT_TAGS.has((payload.dialect ?? "").trim());
  if (!dialectal) {
    for (const spelling of spellings) {
      if (isArabicWord(spelling) && !isFullyDiacritized(spelling)) {
        errors.push({
          field: "spellings",
          message: `must be fully diacritized including the last letter: ${spelling}`,
        });
      }
    }
  }
  if (!POS_TAGS.includes(payload.pos as (typeof POS_TAGS)[number])) {
    errors.push({ field: "pos", message: `unknown POS tag: ${payload.pos || "(empty)"}` });
  }
  const isVerb = VERB_TAGS.has(payload.pos);
  const aspect = (payload.aspect ?? "").trim();
  if (isVerb && !aspect) {
    errors.push({ field: "aspect", message: "verb lemmas must carry an aspect" });
  }
  if (!isVerb && aspect) {
    errors.push({ field: "aspect", message: "only verb lemmas may carry an aspect" });
  }
  if (payload.pos === "NOUN_PROP" && !payload.all_senses_proper) {
    errors.push({
      field: "pos",
      message: "NOUN_PROP requires asserting that all senses are proper nouns",
    });
  }
  if (dialectal && payload.msa_counterpart == null) {
    errors.push({
      field: "msa_counterpart",
      message: "dialect lemmas must name an MSA counterpart",
    });
  }
  for (const root of payload.roots ?? []) {
    const compact = root.replace(/\s+/g, "");
    if (compact && !isArabicWord(compact)) {
      errors.push({ field: "roots", message: `not a valid root: ${root}` });
    }
  }
  return errors;
}
