"""Acceptance gate: one test per shipping criterion, in order.

Each test computes its evidence, records a single PASS/FAIL line with the
measured values and tolerances (replayed in the terminal summary), and then
asserts. The expensive inputs (the 360-problem feature matrix and the
reduced-grid optimizer campaign) are session fixtures shared by every
criterion that needs them.
"""
import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import record_criterion
from oracles import brute_disp, brute_nbc, pair_entropy_base6

from optscape.analysis import build_feature_matrix, cart_trainer, repeated_stratified_cv
from optscape.bbob import (
    SUITE_DIMS,
    VALID_FIDS,
    VALID_IIDS,
    instance_seed,
    make_instance,
    rotation_matrix,
)
from optscape.campaign import (
    ResultStore,
    parse_config,
    run_analyze,
    run_campaign,
    run_features,
)
from optscape.campaign.features import load_features_csv
from optscape.cli import main as cli_main
from optscape.ela import FEATURE_NAMES, features_disp, features_ic, features_meta, features_nbc
from optscape.ela.ic import default_epsilons, nearest_neighbour_tour
from optscape.metrics import (
    aggregate_ratios_by_dim,
    ert,
    ert_ratio_table,
    first_success,
    friedman,
    normalized_regret,
    rank_by_final,
)
from optscape.optimizers import Trace

pytestmark = pytest.mark.acceptance

BASE_SEED = 20260815
BENCHED_ARMS = ("random", "grid", "cmaes", "gensa", "mbo")


def check(num, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    record_criterion(f"[{status}] criterion {num:02d} {name}: {detail}")
    assert ok, f"criterion {num:02d} {name}: {detail}"


# ------------------------------------------------------------ fixtures


@pytest.fixture(scope="session")
def work_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


@pytest.fixture(scope="session")
def bbob_features(work_dir):
    """Feature matrix over the full 360-problem BBOB grid, timed."""
    cfg = parse_config(
        {
            "problems": {"bbob": {
                "fids": sorted(VALID_FIDS),
                "iids": sorted(VALID_IIDS),
                "dims": sorted(SUITE_DIMS),
            }},
            "optimizers": [{"name": "random"}],
            "base_seed": BASE_SEED,
            "output_dir": "unused_store",
        },
        base_dir=str(work_dir),
    )
    out = work_dir / "bbob_features.csv"
    t0 = time.perf_counter()
    summary = run_features(cfg, out)
    elapsed = time.perf_counter() - t0
    assert summary["rows"] == 360 and not summary["excluded"]
    return cfg, out, elapsed


@pytest.fixture(scope="session")
def ranking_store(work_dir):
    """Reduced-grid optimizer campaign: 60 problems x 6 arms x 10 seeds.

    Arms are the five benchmarked optimizers plus a second random arm on an
    independent seed stream, used by the ERT self-ratio criterion.
    """
    cfg = parse_config(
        {
            "problems": {"bbob": {
                "fids": [1, 2, 8, 12, 15, 21],
                "iids": [1, 2, 3, 4, 5],
                "dims": [2, 5],
            }},
            "optimizers": [
                {"name": "random"},
                {"name": "random", "id": "random_b"},
                {"name": "grid"},
                {"name": "cmaes"},
                {"name": "gensa"},
                {"name": "mbo"},
            ],
            "budget_multiplier": 50,
            "replications": 10,
            "base_seed": BASE_SEED,
            "output_dir": "ranking_store",
        },
        base_dir=str(work_dir),
    )
    t0 = time.perf_counter()
    summary = run_campaign(cfg)
    elapsed = time.perf_counter() - t0
    assert not summary["failed"], summary["failed"]
    records = ResultStore.open(cfg.output_dir).iter_records()
    assert len(records) == 60 * 6 * 10
    return cfg, records, elapsed


# ------------------------------------------------------------ criteria


def test_criterion_01_bbob_correctness():
    """All 360 instances: f(xopt)=fopt within 1e-9, f >= fopt on 1e4 random
    points, rotations orthogonal within 1e-10, in under 2 minutes."""
    t0 = time.perf_counter()
    worst_opt = 0.0
    worst_orth = 0.0
    floor_ok = True
    for fid in sorted(VALID_FIDS):
        for iid in sorted(VALID_IIDS):
            for dim in sorted(SUITE_DIMS):
                prob = make_instance(fid, iid, dim)
                at_opt = float(prob.evaluate_many(prob.xopt[None, :])[0])
                worst_opt = max(worst_opt, abs(at_opt - prob.fopt))

                rng = np.random.default_rng(instance_seed(fid, iid, dim))
                pts = rng.uniform(-5.0, 5.0, size=(10_000, dim))
                vals = prob.evaluate_many(pts)
                floor_ok = floor_ok and bool((vals >= prob.fopt).all())

                # rebuild this instance's rotations from its seed stream
                rng = np.random.default_rng(instance_seed(fid, iid, dim))
                rng.uniform(-4.0, 4.0, size=dim)
                rng.standard_normal(2)
                for M in (rotation_matrix(rng, dim), rotation_matrix(rng, dim)):
                    dev = float(np.abs(M.T @ M - np.eye(dim)).max())
                    worst_orth = max(worst_orth, dev)
    elapsed = time.perf_counter() - t0
    ok = worst_opt <= 1e-9 and floor_ok and worst_orth <= 1e-10 and elapsed < 120
    check(
        1, "bbob correctness", ok,
        f"max |f(xopt)-fopt| = {worst_opt:.2e} (tol 1e-9), "
        f"f >= fopt on 10^4 points/instance: {floor_ok}, "
        f"max rotation deviation = {worst_orth:.2e} (tol 1e-10), "
        f"{elapsed:.1f}s (limit 120s)",
    )


def test_criterion_02_ela_oracle_equivalence():
    """nbc/disp match brute-force oracles within 1e-12 on 100 small samples;
    every information-content entropy lies in [0,1]; exact-model-class
    samples give adjusted R^2 = 1 within 1e-9. Under 1 minute."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(77)
    worst_nbc = 0.0
    worst_disp = 0.0
    h_lo, h_hi = math.inf, -math.inf
    worst_hmax_gap = 0.0
    for _ in range(100):
        n = int(rng.integers(6, 13))
        d = int(rng.integers(1, 4))
        X = rng.uniform(size=(n, d))
        z = rng.normal(size=n)

        got = features_nbc(X, z)
        want, _, _ = brute_nbc(X.tolist(), z.tolist())
        for k, v in want.items():
            worst_nbc = max(worst_nbc, abs(got[k] - v))

        got = features_disp(X, z)
        want = brute_disp(X.tolist(), z.tolist())
        for k, v in want.items():
            worst_disp = max(worst_disp, abs(got[k] - v))

        # reconstruct the full entropy curve the ic features summarize
        eps = default_epsilons()
        order = nearest_neighbour_tour(X)
        steps = np.sqrt(((X[order][1:] - X[order][:-1]) ** 2).sum(axis=1))
        slopes = (z[order][1:] - z[order][:-1]) / steps
        symbols = (slopes[None, :] > eps[:, None]).astype(int) - (
            slopes[None, :] < -eps[:, None]
        ).astype(int)
        H = np.array([pair_entropy_base6(row.tolist()) for row in symbols])
        h_lo, h_hi = min(h_lo, float(H.min())), max(h_hi, float(H.max()))
        got_ic = features_ic(X, z)
        worst_hmax_gap = max(worst_hmax_gap, abs(got_ic["ic.h.max"] - H.max()))

    # exact model classes: the fitted family contains the generator
    worst_r2 = 0.0
    for trial in range(20):
        n = int(rng.integers(30, 60))
        d = int(rng.integers(2, 4))
        X = rng.uniform(size=(n, d))
        lin = X @ rng.normal(size=d) + rng.normal()
        meta = features_meta(X, lin)
        worst_r2 = max(worst_r2, abs(meta["ela_meta.lin_simple.adj_r2"] - 1.0))
        quad = lin + (X ** 2) @ rng.normal(size=d)
        meta = features_meta(X, quad)
        worst_r2 = max(worst_r2, abs(meta["ela_meta.quad_simple.adj_r2"] - 1.0))
    elapsed = time.perf_counter() - t0
    ok = (
        worst_nbc <= 1e-12 and worst_disp <= 1e-12
        and 0.0 <= h_lo and h_hi <= 1.0 and worst_hmax_gap <= 1e-12
        and worst_r2 <= 1e-9 and elapsed < 60
    )
    check(
        2, "ela oracle equivalence", ok,
        f"nbc dev = {worst_nbc:.2e}, disp dev = {worst_disp:.2e} (tol 1e-12), "
        f"H range = [{h_lo:.3f}, {h_hi:.3f}] in [0,1], "
        f"adj R^2 dev = {worst_r2:.2e} (tol 1e-9), {elapsed:.1f}s (limit 60s)",
    )


def test_criterion_03_feature_pipeline_smoke(work_dir, bbob_features):
    """38 features finite and deterministic on the 360-problem grid with
    50*dim LHS designs, within the 15-minute budget."""
    cfg, out, elapsed = bbob_features
    entries, names = load_features_csv(out)
    finite = all(
        np.isfinite(list(feats.values())).all() for _, feats, _, _ in entries
    )
    second = work_dir / "bbob_features_repeat.csv"
    run_features(cfg, second)
    identical = out.read_bytes() == second.read_bytes()
    ok = (
        len(entries) == 360 and names == FEATURE_NAMES and len(names) == 38
        and finite and identical and elapsed < 900
    )
    check(
        3, "feature pipeline smoke", ok,
        f"360 rows x 38 features, all finite: {finite}, "
        f"rerun byte-identical: {identical}, {elapsed:.1f}s (limit 900s)",
    )


def test_criterion_04_dimensionality_classifier(bbob_features):
    """10x10 stratified CV error of the depth-4 tree predicting the sampling
    dimension from the BBOB feature matrix is at most 15%."""
    _, out, _ = bbob_features
    entries, names = load_features_csv(out)
    matrix, excluded = build_feature_matrix(entries, feature_names=names)
    assert not excluded
    t0 = time.perf_counter()
    err = repeated_stratified_cv(
        matrix.values,
        [str(d) for d in matrix.dims],
        cart_trainer(),
        folds=10,
        repeats=10,
        seed=BASE_SEED,
    )
    elapsed = time.perf_counter() - t0
    ok = err <= 0.15 and elapsed < 300
    check(
        4, "dimensionality classifier", ok,
        f"10x10 stratified CV error = {err:.4f} (limit 0.15), "
        f"{elapsed:.1f}s (limit 300s)",
    )


def test_criterion_05_optimizer_ranking_direction(ranking_store):
    """On the reduced grid, the Friedman test over the five optimizers is
    significant and the model-based and CMA-ES arms outrank random and grid."""
    _, records, elapsed = ranking_store
    table = rank_by_final([r for r in records if r.optimizer in BENCHED_ARMS])
    stat, df, p = friedman(table)
    means = dict(zip(table.optimizers, table.ranks.mean(axis=0)))
    direction = (
        means["mbo"] < means["random"] and means["mbo"] < means["grid"]
        and means["cmaes"] < means["random"] and means["cmaes"] < means["grid"]
    )
    ok = p < 0.05 and direction and elapsed < 1800
    mean_str = ", ".join(f"{k} {means[k]:.2f}" for k in BENCHED_ARMS)
    check(
        5, "optimizer ranking direction", ok,
        f"Friedman chi2({df}) = {stat:.1f}, p = {p:.2e} (< 0.05), "
        f"mean ranks: {mean_str}, campaign {elapsed:.0f}s (limit 1800s)",
    )


def test_criterion_06_ert_machinery(ranking_store):
    """The ERT formula is exact on the worked example, zero-success arms pay
    ten times the worst finite ERT, and a second random arm's per-dimension
    geometric aggregate ERT ratio against random is 1 within 0.2."""
    # worked example: 10 replications x 100 evaluations, 5 reach the target
    target = 0.5
    evals_used, successes = [], []
    for rep in range(10):
        y = np.ones(100)
        if rep < 5:
            y[-1] = 0.0  # success on the final evaluation
        trace = Trace(problem_id="ex", optimizer="o", seed=rep,
                      X=np.zeros((100, 2)), y=y)
        hit = first_success(trace, target)
        successes.append(hit is not None)
        evals_used.append(hit if hit is not None else len(trace))
    example = ert(evals_used, successes)
    example_ok = example == 200.0

    # zero-success penalty: build one problem where an arm never succeeds
    def rec(optimizer, seed, y):
        y = np.asarray(y, dtype=float)
        trace = Trace(problem_id="p", optimizer=optimizer, seed=seed,
                      X=np.zeros((len(y), 1)), y=y)
        from optscape.metrics import RunRecord
        return RunRecord.from_trace(trace)

    records = [
        rec("random", 0, [3.0, 1.0]),     # target 2.0, hit at eval 2
        rec("random", 1, [5.0, 3.0]),     # never: spends both evals
        rec("never", 0, [9.0, 8.0]),
        rec("never", 1, [9.0, 7.0]),
    ]
    table = ert_ratio_table(records, baseline="random")
    i = table.problems.index("p") if isinstance(table.problems, list) else 0
    erts = dict(zip(table.optimizers, np.asarray(table.erts)[i]))
    penalty_ok = erts["never"] == 10.0 * erts["random"]

    # random vs random on the reduced grid. A ratio of two noisy ERTs is
    # right-skewed (its arithmetic mean sits above 1 even for identical
    # arms), so the identity check uses the log-domain aggregate.
    _, campaign_records, _ = ranking_store
    pair = [r for r in campaign_records if r.optimizer in ("random", "random_b")]
    pair_table = ert_ratio_table(pair, baseline="random")
    dims = {pid: int(pid.rsplit("_d", 1)[1]) for pid in pair_table.problems}
    geo = aggregate_ratios_by_dim(pair_table, dims, method="geometric")
    arith = aggregate_ratios_by_dim(pair_table, dims, method="arithmetic")
    aggs = {dim: row["random_b"] for dim, row in geo.items()}
    agg_ok = all(0.8 <= v <= 1.2 for v in aggs.values())
    agg_str = ", ".join(f"d{dim}={v:.3f}" for dim, v in sorted(aggs.items()))
    arith_str = ", ".join(
        f"d{dim}={row['random_b']:.2f}" for dim, row in sorted(arith.items())
    )

    ok = example_ok and penalty_ok and agg_ok
    check(
        6, "ert machinery", ok,
        f"worked example ERT = {example} (exact 200), "
        f"zero-success ERT = {erts['never']:.0f} = 10 x {erts['random']:.0f}, "
        f"random-vs-random geometric aggregate ratio {agg_str} (1 +/- 0.2; "
        f"arithmetic {arith_str} reflects ratio skew)",
    )


def test_criterion_07_regret_curves(ranking_store):
    """Every normalized regret curve is non-increasing inside [0,1], and the
    model-based arm ends at or below random on mean final regret."""
    _, records, _ = ranking_store
    by_problem = {}
    for r in records:
        by_problem.setdefault(r.problem_id, []).append(r)

    monotone = True
    bounded = True
    finals = {"mbo": [], "random": []}
    for pid, recs in by_problem.items():
        pooled = np.concatenate([r.trace.y for r in recs])
        best, rng = float(pooled.min()), float(np.ptp(pooled))
        for r in recs:
            curve = normalized_regret(r.trace, best, rng)
            bounded = bounded and bool(
                (curve >= 0.0).all() and (curve <= 1.0).all()
            )
            monotone = monotone and bool((np.diff(curve) <= 0.0).all())
            if r.optimizer in finals:
                finals[r.optimizer].append(float(curve[-1]))
    mbo_mean = float(np.mean(finals["mbo"]))
    random_mean = float(np.mean(finals["random"]))
    direction = mbo_mean <= random_mean
    ok = monotone and bounded and direction
    check(
        7, "regret curves", ok,
        f"all curves non-increasing: {monotone}, inside [0,1]: {bounded}, "
        f"mean final regret mbo = {mbo_mean:.4f} <= random = {random_mean:.4f}",
    )


def test_criterion_08_toy_hpo_end_to_end(work_dir, bbob_features, ranking_store):
    """features + analyze complete over 9 toy HPO problems plus the 360 BBOB
    problems; the class classifier CV error is reported deterministically and
    every HPO problem gets a nearest-BBOB neighbour."""
    _, bbob_csv, _ = bbob_features
    cfg = parse_config(
        {
            "problems": {"toy_hpo": True},
            "optimizers": [{"name": "random"}],
            "base_seed": BASE_SEED,
            "output_dir": "unused_store",
        },
        base_dir=str(work_dir),
    )
    toy_csv = work_dir / "toy_features.csv"
    summary = run_features(cfg, toy_csv)
    assert summary["rows"] == 9 and not summary["excluded"]

    # one matrix over both classes; rows are seed-stable so concatenation
    # equals a joint run
    combined = work_dir / "combined_features.csv"
    bbob_lines = bbob_csv.read_text(encoding="utf-8").rstrip("\n").split("\n")
    toy_lines = toy_csv.read_text(encoding="utf-8").rstrip("\n").split("\n")
    assert toy_lines[0] == bbob_lines[0]
    combined.write_text(
        "\n".join(bbob_lines + toy_lines[1:]) + "\n", encoding="utf-8"
    )

    store_dir = ranking_store[0].output_dir
    bundle_a = run_analyze(store_dir, combined, work_dir / "bundle_a")
    bundle_b = run_analyze(store_dir, combined, work_dir / "bundle_b")
    names = sorted(p.name for p in bundle_a.iterdir())
    deterministic = all(
        (bundle_a / n).read_bytes() == (bundle_b / n).read_bytes() for n in names
    )

    tasks = {}
    for line in (bundle_a / "classifiers.csv").read_text().strip().split("\n")[1:]:
        task, folds, repeats, err = line.split(",")
        tasks[task] = float(err)
    cv_reported = "class_hpo_vs_bbob" in tasks and 0.0 <= tasks["class_hpo_vs_bbob"] <= 1.0

    nn_lines = (bundle_a / "nearest_bbob.csv").read_text().strip().split("\n")[1:]
    nn = dict(line.split(",")[:2] for line in nn_lines)
    mapping_ok = len(nn) == 9 and all(
        pid.startswith("hpo_") and target.startswith("bbob_")
        for pid, target in nn.items()
    )

    ok = deterministic and cv_reported and mapping_ok
    check(
        8, "toy hpo end-to-end", ok,
        f"analyze over 369 problems completed; HPO-vs-BBOB CV error = "
        f"{tasks.get('class_hpo_vs_bbob', float('nan')):.4f} (reported, "
        f"deterministic: {deterministic}); nearest-BBOB mapped 9/9: {mapping_ok}",
    )


def test_criterion_09_pipeline_determinism(work_dir):
    """Two full pipeline runs (bench, features, analyze, report) with the
    identical config produce byte-identical report bundles."""
    bundles = []
    for tag in ("one", "two"):
        root = work_dir / f"determinism_{tag}"
        root.mkdir()
        config = root / "config.json"
        config.write_text(json.dumps({
            "problems": {"bbob": {"fids": [1, 8, 15], "iids": [1, 2], "dims": [2, 3]}},
            "optimizers": [{"name": "random"}, {"name": "grid"}, {"name": "cmaes"}],
            "budget_multiplier": 10,
            "replications": 3,
            "base_seed": BASE_SEED,
            "output_dir": "store",
        }), encoding="utf-8")
        store = root / "store"
        features = root / "features.csv"
        bundle = root / "bundle"
        assert cli_main(["bench", "--config", str(config)]) == 0
        assert cli_main(["features", "--config", str(config),
                         "--out", str(features)]) == 0
        assert cli_main(["analyze", "--store", str(store),
                         "--features", str(features), "--out", str(bundle)]) == 0
        assert cli_main(["report", "--bundle", str(bundle)]) == 0
        bundles.append(bundle)

    a = {p.relative_to(bundles[0]): p.read_bytes()
         for p in sorted(bundles[0].rglob("*")) if p.is_file()}
    b = {p.relative_to(bundles[1]): p.read_bytes()
         for p in sorted(bundles[1].rglob("*")) if p.is_file()}
    identical = set(a) == set(b) and all(a[k] == b[k] for k in a)
    check(
        9, "pipeline determinism", ok := identical,
        f"two pipeline runs, {len(a)} bundle files each "
        f"(figures included), byte-identical: {identical}",
    )


EVALUATOR = Path(__file__).resolve().parent.parent / "frontend" / "dist" / "evaluator.js"


@pytest.mark.skipif(not EVALUATOR.exists(), reason="reference evaluator not built")
def test_criterion_10_protocol_integration():
    """The reference evaluator completes 100 random evaluations over the
    protocol with zero errors, repeats requests deterministically, and its
    2-D handshake box equals the log-transformed nrounds/eta ranges."""
    from optscape.hpo import ExternalProblem

    data = EVALUATOR.parent.parent / "data" / "assay.csv"
    cmd = ["node", str(EVALUATOR), "--data", str(data), "--dim", "2", "--seed", "7"]
    prob = ExternalProblem(cmd)
    try:
        lower_ok = np.allclose(prob.domain.lower, [math.log(3.0), -7.0], atol=1e-9)
        upper_ok = np.allclose(prob.domain.upper, [math.log(2000.0), 0.0], atol=1e-9)

        rng = np.random.default_rng(4)
        pts = prob.domain.lower + rng.uniform(size=(100, 2)) * (
            prob.domain.upper - prob.domain.lower
        )
        values = [prob.evaluate(p) for p in pts]
        evals_ok = all(np.isfinite(v) for v in values)
        repeat_ok = all(
            prob.evaluate(pts[i]) == values[i] for i in range(0, 100, 10)
        )
    finally:
        prob.close()
    ok = lower_ok and upper_ok and evals_ok and repeat_ok
    check(
        10, "protocol integration", ok,
        f"100 evaluations, zero protocol errors: {evals_ok}, "
        f"repeat determinism on 10 probes: {repeat_ok}, "
        f"2-D box = [ln 3, -7]..[ln 2000, 0]: {lower_ok and upper_ok}",
    )
