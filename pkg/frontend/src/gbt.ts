/**
 * Regularized gradient-boosted trees for multiclass classification.
 *
 * Each boosting round fits one depth-limited regression tree per class to
 * the softmax cross-entropy gradients, using histogram splits over 16
 * equal-width bins of the training range. Leaf weights minimize the
 * second-order objective with an L2 penalty (lambda) and an L1 penalty
 * (alpha, soft-thresholding the gradient sum); a split is taken only when
 * it improves that objective by more than gamma. Training is deterministic:
 * no subsampling anywhere, and ties pick the lowest feature index, then the
 * lowest threshold.
 */

export interface BoostParams {
  nrounds: number;
  eta: number;
  lambda: number;
  gamma: number;
  alpha: number;
}

export interface TreeNode {
  feature: number; // -1 marks a leaf
  threshold: number; // route left when x[feature] < threshold
  left: number;
  right: number;
  weight: number; // leaf value before eta scaling
}

export interface BoostModel {
  trees: TreeNode[][][]; // [round][class] -> flat node array, root at 0
  classCount: number;
  eta: number;
}

const BINS = 16;
const MAX_DEPTH = 3;

// argmin_w of 1/2 (h + lambda) w^2 + g w + alpha |w|
function leafWeight(g: number, h: number, lambda: number, alpha: number): number {
  if (g > alpha) return -(g - alpha) / (h + lambda);
  if (g < -alpha) return -(g + alpha) / (h + lambda);
  return 0;
}

// objective reduction a node can achieve; the split gain compares children
// against their parent on this score
function leafScore(g: number, h: number, lambda: number, alpha: number): number {
  const t = Math.max(Math.abs(g) - alpha, 0);
  return (t * t) / (h + lambda);
}

interface BinnedDesign {
  bins: Uint8Array; // n x p bin indices, row-major
  mins: Float64Array;
  widths: Float64Array; // bin width per feature; 0 for constant features
  n: number;
  p: number;
}

function binDesign(X: number[][]): BinnedDesign {
  const n = X.length;
  const p = n > 0 ? X[0].length : 0;
  const mins = new Float64Array(p);
  const widths = new Float64Array(p);
  const bins = new Uint8Array(n * p);
  for (let f = 0; f < p; f++) {
    let lo = Infinity;
    let hi = -Infinity;
    for (let i = 0; i < n; i++) {
      const v = X[i][f];
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    mins[f] = lo;
    const width = (hi - lo) / BINS;
    widths[f] = width;
    if (width === 0) continue; // constant feature: every row stays in bin 0
    for (let i = 0; i < n; i++) {
      const b = Math.floor((X[i][f] - lo) / width);
      bins[i * p + f] = b < 0 ? 0 : b > BINS - 1 ? BINS - 1 : b;
    }
  }
  return { bins, mins, widths, n, p };
}

function buildNode(
  design: BinnedDesign,
  rows: number[],
  grad: Float64Array,
  hess: Float64Array,
  depth: number,
  params: BoostParams,
  nodes: TreeNode[],
  onLeaf: (rows: number[], weight: number) => void,
): number {
  const { bins, p } = design;
  let G = 0;
  let H = 0;
  for (const r of rows) {
    G += grad[r];
    H += hess[r];
  }

  let bestGain = 0; // a split must strictly beat the unsplit node
  let bestF = -1;
  let bestB = -1;
  if (depth < MAX_DEPTH && rows.length >= 2) {
    const parentScore = leafScore(G, H, params.lambda, params.alpha);
    const hg = new Float64Array(BINS);
    const hh = new Float64Array(BINS);
    for (let f = 0; f < p; f++) {
      if (design.widths[f] === 0) continue;
      hg.fill(0);
      hh.fill(0);
      for (const r of rows) {
        const b = bins[r * p + f];
        hg[b] += grad[r];
        hh[b] += hess[r];
      }
      let gl = 0;
      let hl = 0;
      for (let b = 0; b < BINS - 1; b++) {
        gl += hg[b];
        hl += hh[b];
        const gain =
          0.5 *
            (leafScore(gl, hl, params.lambda, params.alpha) +
              leafScore(G - gl, H - hl, params.lambda, params.alpha) -
              parentScore) -
          params.gamma;
        if (gain > bestGain) {
          bestGain = gain;
          bestF = f;
          bestB = b;
        }
      }
    }
  }

  if (bestF < 0) {
    const w = leafWeight(G, H, params.lambda, params.alpha);
    nodes.push({ feature: -1, threshold: 0, left: -1, right: -1, weight: w });
    onLeaf(rows, w);
    return nodes.length - 1;
  }

  const leftRows: number[] = [];
  const rightRows: number[] = [];
  for (const r of rows) {
    (bins[r * p + bestF] <= bestB ? leftRows : rightRows).push(r);
  }
  if (leftRows.length === 0 || rightRows.length === 0) {
    // unreachable with gamma > 0, kept as a hard stop against recursion
    const w = leafWeight(G, H, params.lambda, params.alpha);
    nodes.push({ feature: -1, threshold: 0, left: -1, right: -1, weight: w });
    onLeaf(rows, w);
    return nodes.length - 1;
  }

  const threshold = design.mins[bestF] + design.widths[bestF] * (bestB + 1);
  const id = nodes.length;
  nodes.push({ feature: bestF, threshold, left: -1, right: -1, weight: 0 });
  nodes[id].left = buildNode(design, leftRows, grad, hess, depth + 1, params, nodes, onLeaf);
  nodes[id].right = buildNode(design, rightRows, grad, hess, depth + 1, params, nodes, onLeaf);
  return id;
}

function softmaxInto(raw: Float64Array, offset: number, g: number, out: Float64Array): void {
  let max = -Infinity;
  for (let k = 0; k < g; k++) max = Math.max(max, raw[offset + k]);
  let sum = 0;
  for (let k = 0; k < g; k++) {
    const e = Math.exp(raw[offset + k] - max);
    out[k] = e;
    sum += e;
  }
  for (let k = 0; k < g; k++) out[k] /= sum;
}

export function trainBoost(
  X: number[][],
  labels: number[],
  classCount: number,
  params: BoostParams,
): BoostModel {
  const n = X.length;
  const g = classCount;
  if (n === 0) throw new Error("cannot train on zero rows");
  if (g < 2) throw new Error("need at least two classes");
  if (!Number.isInteger(params.nrounds) || params.nrounds < 0) {
    throw new Error(`nrounds must be a nonnegative integer, got ${params.nrounds}`);
  }

  const design = binDesign(X);
  const F = new Float64Array(n * g); // raw scores, uniform start
  const prob = new Float64Array(g);
  const grad = new Float64Array(n);
  const hess = new Float64Array(n);
  const probs = new Float64Array(n * g);
  const allRows = Array.from({ length: n }, (_, i) => i);

  const trees: TreeNode[][][] = [];
  for (let round = 0; round < params.nrounds; round++) {
    for (let i = 0; i < n; i++) {
      softmaxInto(F, i * g, g, prob);
      for (let k = 0; k < g; k++) probs[i * g + k] = prob[k];
    }
    const roundTrees: TreeNode[][] = [];
    for (let k = 0; k < g; k++) {
      for (let i = 0; i < n; i++) {
        const pik = probs[i * g + k];
        grad[i] = pik - (labels[i] === k ? 1 : 0);
        hess[i] = pik * (1 - pik);
      }
      const nodes: TreeNode[] = [];
      buildNode(design, allRows, grad, hess, 0, params, nodes, (rows, w) => {
        for (const r of rows) F[r * g + k] += params.eta * w;
      });
      roundTrees.push(nodes);
    }
    trees.push(roundTrees);
  }
  return { trees, classCount: g, eta: params.eta };
}

function treeValue(nodes: TreeNode[], x: number[]): number {
  let i = 0;
  while (nodes[i].feature >= 0) {
    i = x[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].weight;
}

export function predictProba(model: BoostModel, x: number[]): number[] {
  const g = model.classCount;
  const raw = new Float64Array(g);
  for (const roundTrees of model.trees) {
    for (let k = 0; k < g; k++) raw[k] += model.eta * treeValue(roundTrees[k], x);
  }
  const out = new Float64Array(g);
  softmaxInto(raw, 0, g, out);
  return Array.from(out);
}

const P_CLAMP = 1e-15;

/** Mean negative log-likelihood with the usual probability clamp. */
export function logloss(probs: number[][], labels: number[]): number {
  if (probs.length !== labels.length) throw new Error("probs and labels must align");
  if (probs.length === 0) throw new Error("need at least one observation");
  let total = 0;
  for (let i = 0; i < labels.length; i++) {
    const p = Math.min(Math.max(probs[i][labels[i]], P_CLAMP), 1 - P_CLAMP);
    total -= Math.log(p);
  }
  return total / labels.length;
}
