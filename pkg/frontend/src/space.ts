/**
 * The boosting tuning box. Every knob lives on a log scale: the optimizer
 * works in a box of natural-log coordinates, and settings are recovered by
 * exponentiation. The tree count is an integer, rounded half-up after the
 * transform. Knobs are cumulative by dimension: 2 tunes nrounds and eta,
 * 3 adds lambda (L2), 5 adds gamma (split threshold) and alpha (L1).
 */

export interface KnobSpec {
  name: string;
  lnLower: number;
  lnUpper: number;
  roundToInt: boolean;
}

const KNOBS: KnobSpec[] = [
  { name: "nrounds", lnLower: Math.log(3), lnUpper: Math.log(2000), roundToInt: true },
  { name: "eta", lnLower: -7, lnUpper: 0, roundToInt: false },
  { name: "lambda", lnLower: -7, lnUpper: 7, roundToInt: false },
  { name: "gamma", lnLower: -10, lnUpper: 2, roundToInt: false },
  { name: "alpha", lnLower: -7, lnUpper: 7, roundToInt: false },
];

export function tuningSpace(dim: number): KnobSpec[] {
  if (dim !== 2 && dim !== 3 && dim !== 5) {
    throw new Error(`dim must be 2, 3 or 5, got ${dim}`);
  }
  return KNOBS.slice(0, dim);
}

export function internalBox(knobs: KnobSpec[]): { lower: number[]; upper: number[] } {
  return {
    lower: knobs.map((k) => k.lnLower),
    upper: knobs.map((k) => k.lnUpper),
  };
}

/** Map a point in the log box to named settings; throws outside the box. */
export function toSettings(knobs: KnobSpec[], z: number[]): Record<string, number> {
  if (z.length !== knobs.length) {
    throw new Error(`expected ${knobs.length} coordinates, got ${z.length}`);
  }
  const settings: Record<string, number> = {};
  for (let i = 0; i < knobs.length; i++) {
    const k = knobs[i];
    if (z[i] < k.lnLower - 1e-9 || z[i] > k.lnUpper + 1e-9) {
      throw new Error(`${k.name}: ${z[i]} outside [${k.lnLower}, ${k.lnUpper}]`);
    }
    const value = Math.exp(z[i]);
    settings[k.name] = k.roundToInt ? Math.floor(value + 0.5) : value;
  }
  return settings;
}
