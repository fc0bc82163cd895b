/** The relation taxonomy with precision badges and keyboard bindings. */

export interface RelationInfo {
  code: string;
  label: string;
  precision: number;
  key: string;
}

// digits pick core relations, then the extended ones; "x" is X5
export const RELATIONS: RelationInfo[] = [
  { code: "R1", label: "Same Exactly", precision: 100, key: "1" },
  { code: "R2", label: "Same, Singular-Plural difference", precision: 90, key: "2" },
  { code: "R3", label: "Same, Singular-Dual difference", precision: 80, key: "3" },
  { code: "R4", label: "Same, Male-Female difference", precision: 70, key: "4" },
  { code: "R5", label: "Same, Case difference", precision: 60, key: "5" },
  { code: "R6", label: "Same, but Proper Noun", precision: 40, key: "6" },
  { code: "X1", label: "Same inflections, some meanings", precision: 50, key: "7" },
  { code: "X2", label: "Different wording, same meaning", precision: 30, key: "8" },
  { code: "X3", label: "Different, same meanings", precision: 30, key: "9" },
  { code: "X4", label: "Different, synonym in some meanings", precision: 20, key: "0" },
  { code: "X5", label: "Different, derivational reference", precision: 10, key: "x" },
];

export const RELATION_BY_KEY = new Map(RELATIONS.map((r) => [r.key, r]));
export const RELATION_BY_CODE = new Map(RELATIONS.map((r) => [r.code, r]));
