"""Client for out-of-process objective evaluators.

Wire protocol, one JSON object per line over the child's stdin/stdout:

    -> {"op": "info"}
    <- {"dim": 2, "lower": [...], "upper": [...], "name": "..."}
    -> {"op": "eval", "x": [1.0, 2.0]}
    <- {"y": 0.693}
    -> {"op": "quit"}

An evaluator signals a bad request with {"error": "..."} and keeps serving;
anything else that breaks the exchange (dead process, malformed JSON, a
missing field, a timeout) raises here. Evaluator diagnostics belong on
stderr, which is passed through.
"""
from __future__ import annotations

import json
import select
import subprocess
from typing import Sequence

import numpy as np

from ..domains import BoxDomain, Problem

DEFAULT_TIMEOUT = 120.0


class ProtocolError(RuntimeError):
    """The evaluator replied, but not with what the protocol requires."""


class EvaluatorRequestError(ProtocolError):
    """The evaluator reported an error for this request and is still alive."""


class BrokenEvaluatorError(ProtocolError):
    """The evaluator died or stopped speaking the protocol."""


class ExternalEvaluator:
    """Line-JSON stdio client around a child evaluator process."""

    def __init__(self, cmd: Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        self.cmd = list(cmd)
        self.timeout = timeout
        try:
            self._proc = subprocess.Popen(
                self.cmd,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise BrokenEvaluatorError(f"could not start evaluator: {exc}") from exc
        self._info = self._request({"op": "info"})
        for field in ("dim", "lower", "upper", "name"):
            if field not in self._info:
                raise ProtocolError(f"info response lacks {field!r}")
        if len(self._info["lower"]) != self._info["dim"] or len(
            self._info["upper"]
        ) != self._info["dim"]:
            raise ProtocolError("info bounds do not match the declared dim")

    @property
    def info(self) -> dict:
        return dict(self._info)

    def _request(self, payload: dict) -> dict:
        proc = self._proc
        if proc.poll() is not None:
            raise BrokenEvaluatorError(
                f"evaluator exited with code {proc.returncode}"
            )
        try:
            proc.stdin.write(json.dumps(payload) + "\n")
            proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise BrokenEvaluatorError(f"evaluator pipe closed: {exc}") from exc

        ready, _, _ = select.select([proc.stdout], [], [], self.timeout)
        if not ready:
            proc.kill()
            raise BrokenEvaluatorError(
                f"no response within {self.timeout:.0f} s; evaluator killed"
            )
        line = proc.stdout.readline()
        if line == "":
            raise BrokenEvaluatorError("evaluator closed its output stream")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise BrokenEvaluatorError(f"unparseable response: {line!r}") from exc
        if not isinstance(response, dict):
            raise ProtocolError(f"expected a JSON object, got: {line!r}")
        if "error" in response:
            raise EvaluatorRequestError(str(response["error"]))
        return response

    def evaluate(self, x: Sequence[float]) -> float:
        response = self._request({"op": "eval", "x": [float(v) for v in x]})
        if "y" not in response:
            raise ProtocolError("eval response lacks 'y'")
        y = float(response["y"])
        if not np.isfinite(y):
            raise ProtocolError(f"evaluator returned a non-finite value: {y}")
        return y

    def close(self):
        proc = self._proc
        if proc.poll() is None:
            try:
                proc.stdin.write(json.dumps({"op": "quit"}) + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError):
                pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class ExternalProblem(Problem):
    """Problem facade over a running external evaluator; the domain is the
    box announced by the evaluator's info handshake."""

    def __init__(self, cmd: Sequence[str], timeout: float = DEFAULT_TIMEOUT):
        self.evaluator = ExternalEvaluator(cmd, timeout=timeout)
        info = self.evaluator.info
        super().__init__(
            problem_id=f"external_{info['name']}",
            domain=BoxDomain(
                np.asarray(info["lower"], dtype=float),
                np.asarray(info["upper"], dtype=float),
            ),
            problem_class="hpo",
            metadata={"cmd": list(cmd), "evaluator_name": info["name"]},
        )

    def evaluate(self, x: np.ndarray) -> float:
        return self.evaluator.evaluate(np.asarray(x, dtype=float).ravel())

    def close(self):
        self.evaluator.close()
