#!/usr/bin/env node
/**
 * Reference tuning evaluator: answers line-JSON requests on stdio with the
 * mean 10-fold cross-validated logloss of a gradient-boosted tree classifier
 * trained on a bundled CSV data set.
 *
 * Usage: node evaluator.js --data <csv> --dim {2|3|5} --seed <n>
 *
 * Data responses go to stdout, one JSON object per line; diagnostics go to
 * stderr. Folds are drawn once at startup from the seed and reused for every
 * request, and the learner itself is deterministic, so a given x always maps
 * to the same y. Knobs outside the active subspace stay at their defaults
 * (lambda 1, gamma 0, alpha 0).
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";
import { stdin, stdout } from "node:process";
import * as readline from "node:readline";
import { parseArgs } from "node:util";

import { prepareDataset } from "./csv";
import { cvLogloss, foldAssignment } from "./cv";
import { EvaluatorCore, handleLine } from "./protocol";
import { internalBox, toSettings, tuningSpace } from "./space";

const FOLDS = 10;
const DEFAULTS = { lambda: 1, gamma: 0, alpha: 0 };

function fail(message: string): never {
  console.error(`evaluator: ${message}`);
  process.exit(2);
}

export function buildCore(argv: string[]): EvaluatorCore {
  let values: { data?: string; dim?: string; seed?: string };
  try {
    values = parseArgs({
      args: argv,
      options: {
        data: { type: "string" },
        dim: { type: "string" },
        seed: { type: "string" },
      },
    }).values;
  } catch (err) {
    fail(err instanceof Error ? err.message : String(err));
  }
  if (values.data === undefined || values.dim === undefined || values.seed === undefined) {
    fail("usage: evaluator --data <csv> --dim {2|3|5} --seed <n>");
  }
  const dim = Number(values.dim);
  const seed = Number(values.seed);
  if (!Number.isInteger(seed)) fail(`seed must be an integer, got ${values.seed}`);

  const knobs = tuningSpace(dim); // rejects anything outside {2, 3, 5}
  const data = prepareDataset(readFileSync(values.data, "utf-8"));
  const assign = foldAssignment(data.rows.length, FOLDS, seed);
  const box = internalBox(knobs);

  return {
    name: `${basename(values.data).replace(/\.csv$/, "")}_gbt_d${dim}`,
    lower: box.lower,
    upper: box.upper,
    evaluate: (z) => {
      const s: Record<string, number> = { ...DEFAULTS, ...toSettings(knobs, z) };
      return cvLogloss(data, assign, FOLDS, {
        nrounds: s.nrounds,
        eta: s.eta,
        lambda: s.lambda,
        gamma: s.gamma,
        alpha: s.alpha,
      });
    },
  };
}

async function main(): Promise<void> {
  let core: EvaluatorCore;
  try {
    core = buildCore(process.argv.slice(2));
  } catch (err) {
    fail(err instanceof Error ? err.message : String(err));
  }
  console.error(`evaluator: serving ${core.name} over a ${core.lower.length}-knob box`);
  for await (const line of readline.createInterface({ input: stdin })) {
    const reply = handleLine(line, core);
    if ("quit" in reply) break;
    stdout.write(reply.line + "\n");
  }
}

if (require.main === module) {
  main().then(
    () => process.exit(0),
    (err) => {
      console.error(`evaluator: ${err instanceof Error ? err.message : err}`);
      process.exit(1);
    },
  );
}
