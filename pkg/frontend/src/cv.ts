/**
 * Fixed-fold cross-validation of the boosted-tree learner.
 *
 * The fold assignment is a pure function of (n, folds, seed): rows are
 * shuffled once and dealt round-robin. Callers compute it at startup and
 * reuse it for every evaluation, which is what makes repeated requests at
 * the same point return the same loss.
 */

import { Dataset } from "./csv";
import { BoostParams, logloss, predictProba, trainBoost } from "./gbt";
import { mulberry32, shuffled } from "./prng";

export function foldAssignment(n: number, folds: number, seed: number): Int32Array {
  if (folds < 2) throw new Error(`need at least 2 folds, got ${folds}`);
  if (n < folds) throw new Error(`cannot split ${n} rows into ${folds} folds`);
  const order = shuffled(n, mulberry32(seed));
  const assign = new Int32Array(n);
  order.forEach((row, pos) => {
    assign[row] = pos % folds;
  });
  return assign;
}

/** Mean held-out logloss over the folds. */
export function cvLogloss(
  data: Dataset,
  assign: Int32Array,
  folds: number,
  params: BoostParams,
): number {
  const g = data.classNames.length;
  let total = 0;
  for (let f = 0; f < folds; f++) {
    const trainX: number[][] = [];
    const trainY: number[] = [];
    const testIdx: number[] = [];
    for (let i = 0; i < data.rows.length; i++) {
      if (assign[i] === f) {
        testIdx.push(i);
      } else {
        trainX.push(data.rows[i]);
        trainY.push(data.labels[i]);
      }
    }
    const model = trainBoost(trainX, trainY, g, params);
    const probs = testIdx.map((i) => predictProba(model, data.rows[i]));
    total += logloss(probs, testIdx.map((i) => data.labels[i]));
  }
  return total / folds;
}
