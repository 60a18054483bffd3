/**
 * Request dispatch for the line-JSON evaluator loop.
 *
 * One JSON object per line in, one per line out. A bad line never kills the
 * loop: it is answered with {"error": <message>} and the caller reads on.
 * Only a quit request (or end of input) ends the session.
 */

export interface EvaluatorCore {
  name: string;
  lower: number[];
  upper: number[];
  evaluate: (z: number[]) => number;
}

export type Reply = { line: string } | { quit: true };

function errorLine(message: string): Reply {
  return { line: JSON.stringify({ error: message }) };
}

export function handleLine(raw: string, core: EvaluatorCore): Reply {
  let msg: unknown;
  try {
    msg = JSON.parse(raw);
  } catch {
    return errorLine("request is not valid JSON");
  }
  if (typeof msg !== "object" || msg === null || Array.isArray(msg)) {
    return errorLine("request must be a JSON object");
  }
  const op = (msg as Record<string, unknown>).op;

  if (op === "info") {
    return {
      line: JSON.stringify({
        dim: core.lower.length,
        lower: core.lower,
        upper: core.upper,
        name: core.name,
      }),
    };
  }

  if (op === "eval") {
    const x = (msg as Record<string, unknown>).x;
    const dim = core.lower.length;
    if (
      !Array.isArray(x) ||
      x.length !== dim ||
      !x.every((v) => typeof v === "number" && Number.isFinite(v))
    ) {
      return errorLine(`eval needs x as an array of ${dim} finite numbers`);
    }
    try {
      return { line: JSON.stringify({ y: core.evaluate(x as number[]) }) };
    } catch (err) {
      return errorLine(err instanceof Error ? err.message : String(err));
    }
  }

  if (op === "quit") return { quit: true };

  return errorLine(`unknown op ${JSON.stringify(op)}`);
}
