"""Report bundle generation: statistics and meta-analysis over a store.

Everything written here is a deterministic function of the store contents
and the feature CSV: rows are sorted, floats use shortest round-trip repr,
and no timestamps enter the bundle, so regeneration is byte-identical.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..analysis import (
    build_feature_matrix,
    cart_train,
    cart_trainer,
    cart_predict_many,
    drop_zero_variance,
    kmeans,
    pca_fit,
    repeated_stratified_cv,
    nearest_bbob_neighbor,
    select_rows,
    silhouette_select,
    silhouette_widths,
    tree_to_dict,
)
from ..metrics import (
    IncompleteDataError,
    MissingBaselineError,
    aggregate_ratios_by_dim,
    ert_ratio_table,
    friedman,
    nemenyi_cd,
    normalized_regret,
    rank_by_final,
    regret_curve_stats,
)
from .features import load_features_csv
from .runner import stable_seed
from .store import ResultStore

ANALYSIS_PARAMS = {
    "pca_components": 2,
    "kmeans_k_range": [2, 8],
    "kmeans_restarts": 25,
    "cart_max_depth": 4,
    "cart_min_leaf": 5,
    "cv_folds": 10,
    "cv_repeats": 10,
    "ert_baseline": "random",
    "ratio_aggregation": "arithmetic",
}


class AnalyzeError(RuntimeError):
    """Inputs are missing, incomplete, or schema-invalid."""


def _write(path: Path, lines) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)


def _f(v) -> str:
    # shortest round-trip repr; numpy scalars must not leak their type name
    return repr(float(v))


def _ranking_section(records, dims, out: Path, notes):
    table = rank_by_final(records)
    lines = ["problem_id," + ",".join(table.optimizers)]
    for i, pid in enumerate(table.problems):
        lines.append(pid + "," + ",".join(_f(v) for v in table.ranks[i]))
    _write(out / "rank_table.csv", lines)

    k = len(table.optimizers)
    by_dim = {}
    for i, pid in enumerate(table.problems):
        by_dim.setdefault(dims[pid], []).append(i)

    fried_lines = ["dim,n_problems,statistic,df,p_value,critical_difference"]
    mean_lines = ["dim,optimizer,mean_rank"]
    for dim in sorted(by_dim):
        idx = by_dim[dim]
        sub = table.ranks[idx]
        means = sub.mean(axis=0)
        for opt, m in zip(table.optimizers, means):
            mean_lines.append(f"{dim},{opt},{_f(m)}")
        if len(idx) >= 2 and k >= 2:
            sub_table = type(table)(
                problems=tuple(table.problems[i] for i in idx),
                optimizers=table.optimizers,
                ranks=sub,
            )
            stat, df, p = friedman(sub_table)
            cd = nemenyi_cd(k, len(idx)) if 2 <= k <= 10 else float("nan")
            fried_lines.append(f"{dim},{len(idx)},{_f(stat)},{df},{_f(p)},{_f(cd)}")
        else:
            notes.append(f"dim {dim}: too few problems for a Friedman test")
    _write(out / "friedman_by_dim.csv", fried_lines)
    _write(out / "mean_ranks_by_dim.csv", mean_lines)
    return table


def _ert_section(records, dims, arm_ids, out: Path, notes):
    if ANALYSIS_PARAMS["ert_baseline"] not in arm_ids:
        notes.append("no random baseline arm; ERT ratio tables skipped")
        return
    table = ert_ratio_table(records, baseline=ANALYSIS_PARAMS["ert_baseline"])
    lines = ["problem_id,optimizer,target,ert,ratio"]
    for i, pid in enumerate(table.problems):
        for j, opt in enumerate(table.optimizers):
            lines.append(
                f"{pid},{opt},{_f(table.targets[pid])},"
                f"{_f(table.erts[i, j])},{_f(table.ratios[i, j])}"
            )
    _write(out / "ert_table.csv", lines)

    agg = aggregate_ratios_by_dim(table, dims, method="arithmetic")
    geo = aggregate_ratios_by_dim(table, dims, method="geometric")
    lines = ["dim,optimizer,mean_ratio,geometric_mean_ratio"]
    for dim in sorted(agg):
        for opt in table.optimizers:
            lines.append(f"{dim},{opt},{_f(agg[dim][opt])},{_f(geo[dim][opt])}")
    _write(out / "ert_ratio_by_dim.csv", lines)


def _regret_section(records, out: Path, notes):
    by_problem = {}
    for rec in records:
        by_problem.setdefault(rec.problem_id, []).append(rec)
    lines = ["problem_id,optimizer,eval_index,mean_regret,stderr"]
    for pid in sorted(by_problem):
        recs = by_problem[pid]
        pooled = np.concatenate([r.trace.y for r in recs])
        best, rng = float(pooled.min()), float(np.ptp(pooled))
        if rng == 0.0:
            notes.append(f"{pid}: constant observed values; regret skipped")
            continue
        arms = sorted({r.optimizer for r in recs})
        for opt in arms:
            curves = [
                normalized_regret(r.trace, best, rng)
                for r in recs if r.optimizer == opt
            ]
            mean, se = regret_curve_stats(curves)
            for t in range(mean.size):
                lines.append(f"{pid},{opt},{t + 1},{_f(mean[t])},{_f(se[t])}")
    _write(out / "regret_curves.csv", lines)


def _feature_section(features_csv, out: Path, seed, notes):
    entries, names = load_features_csv(features_csv)
    matrix, excluded = build_feature_matrix(entries, feature_names=names)
    for pid, reason in sorted(excluded.items()):
        notes.append(f"{pid}: excluded from analysis: {reason}")
    if len(matrix) < 3:
        raise AnalyzeError("need at least 3 feature rows for the meta-analysis")
    matrix, dropped = drop_zero_variance(matrix)
    for name in dropped:
        notes.append(f"column {name}: zero variance, dropped")
    if matrix.values.shape[1] < 2:
        raise AnalyzeError("fewer than 2 informative feature columns")

    model, scores = pca_fit(matrix, ANALYSIS_PARAMS["pca_components"])
    lines = ["feature," + ",".join(
        f"pc{j + 1}" for j in range(model.loadings.shape[1])
    )]
    for f, name in enumerate(matrix.feature_names):
        lines.append(name + "," + ",".join(_f(v) for v in model.loadings[f]))
    _write(out / "pca_loadings.csv", lines)
    _write(out / "pca_summary.csv", ["component,explained_variance_ratio"] + [
        f"pc{j + 1},{_f(v)}"
        for j, v in enumerate(model.explained_variance_ratio)
    ])

    lo, hi = ANALYSIS_PARAMS["kmeans_k_range"]
    k = silhouette_select(
        scores, k_range=range(lo, hi + 1),
        seed=stable_seed("analyze", "kmeans", seed),
        restarts=ANALYSIS_PARAMS["kmeans_restarts"],
    )
    assign, _ = kmeans(
        scores, k, seed=stable_seed("analyze", "kmeans", seed),
        restarts=ANALYSIS_PARAMS["kmeans_restarts"],
    )
    width = float(silhouette_widths(scores, assign).mean())
    lines = ["problem_id,class,dim,pc1,pc2,cluster"]
    for i, pid in enumerate(matrix.problem_ids):
        lines.append(
            f"{pid},{matrix.classes[i]},{matrix.dims[i]},"
            f"{_f(scores[i, 0])},{_f(scores[i, 1])},{assign[i]}"
        )
    _write(out / "pca_scores.csv", lines)
    notes.append(f"k-means selected k={k}, mean silhouette width {_f(width)}")
    return matrix, scores


def _classifier_section(matrix, scores, out: Path, seed, notes):
    trainer = cart_trainer(
        max_depth=ANALYSIS_PARAMS["cart_max_depth"],
        min_leaf=ANALYSIS_PARAMS["cart_min_leaf"],
    )
    folds = ANALYSIS_PARAMS["cv_folds"]
    repeats = ANALYSIS_PARAMS["cv_repeats"]
    lines = ["task,folds,repeats,error"]

    classes = list(matrix.classes)
    class_counts = {c: classes.count(c) for c in set(classes)}
    if len(class_counts) >= 2 and min(class_counts.values()) < 2:
        notes.append("a problem class has a single member; "
                     "HPO-vs-BBOB task skipped")
    elif len(class_counts) >= 2:
        # the HPO side is small, so folds adapt to the smallest class
        f_cls = min(folds, min(class_counts.values()))
        err = repeated_stratified_cv(
            matrix.values, classes, trainer, folds=f_cls, repeats=repeats,
            seed=stable_seed("analyze", "cv-class", seed),
        )
        lines.append(f"class_hpo_vs_bbob,{f_cls},{repeats},{_f(err)}")
        full_tree = cart_train(
            matrix.values, classes,
            max_depth=ANALYSIS_PARAMS["cart_max_depth"],
            min_leaf=ANALYSIS_PARAMS["cart_min_leaf"],
        )
        _write(out / "class_tree.json", [json.dumps(
            tree_to_dict(full_tree, feature_names=matrix.feature_names),
            sort_keys=True, indent=2,
        )])
    else:
        notes.append("single problem class; HPO-vs-BBOB task skipped")

    bbob_idx = [i for i, c in enumerate(matrix.classes) if c == "BBOB"]
    hpo_idx = [i for i, c in enumerate(matrix.classes) if c == "HPO"]
    if len(bbob_idx) >= 2 * folds:
        bbob = select_rows(matrix, bbob_idx)
        dim_labels = [str(d) for d in bbob.dims]
        if len(set(dim_labels)) >= 2:
            err = repeated_stratified_cv(
                bbob.values, dim_labels, trainer, folds=folds, repeats=repeats,
                seed=stable_seed("analyze", "cv-dim", seed),
            )
            lines.append(f"dim_bbob_cv,{folds},{repeats},{_f(err)}")
            dim_tree = cart_train(
                bbob.values, dim_labels,
                max_depth=ANALYSIS_PARAMS["cart_max_depth"],
                min_leaf=ANALYSIS_PARAMS["cart_min_leaf"],
            )
            _write(out / "dim_tree.json", [json.dumps(
                tree_to_dict(dim_tree, feature_names=bbob.feature_names),
                sort_keys=True, indent=2,
            )])
            if hpo_idx:
                hpo = select_rows(matrix, hpo_idx)
                preds = cart_predict_many(dim_tree, hpo.values)
                truth = [str(d) for d in hpo.dims]
                holdout = sum(p != t for p, t in zip(preds, truth)) / len(truth)
                lines.append(f"dim_hpo_holdout,,,{_f(holdout)}")
        else:
            notes.append("single BBOB dimension; dim tasks skipped")
    else:
        notes.append("too few BBOB rows for the dim classifier; skipped")
    _write(out / "classifiers.csv", lines)

    if hpo_idx and bbob_idx:
        hpo_scores = {matrix.problem_ids[i]: scores[i] for i in hpo_idx}
        bbob_scores = {matrix.problem_ids[i]: scores[i] for i in bbob_idx}
        nn = nearest_bbob_neighbor(hpo_scores, bbob_scores)
        lines = ["problem_id,nearest_bbob,distance"]
        for pid in sorted(nn):
            d = float(np.linalg.norm(
                np.asarray(hpo_scores[pid]) - np.asarray(bbob_scores[nn[pid]])
            ))
            lines.append(f"{pid},{nn[pid]},{_f(d)}")
        _write(out / "nearest_bbob.csv", lines)
    else:
        notes.append("nearest-BBOB mapping needs both classes; skipped")


def run_analyze(store_dir, features_csv, out_dir) -> Path:
    """Emit the full report bundle; returns the bundle directory."""
    store = ResultStore.open(store_dir)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base_seed = int(store.config_identity()["base_seed"])
    notes = []

    records = store.iter_records()
    if not records:
        raise AnalyzeError(f"store at {store_dir} holds no completed cells")
    dims = {r.problem_id: r.trace.X.shape[1] for r in records}
    arm_ids = sorted({r.optimizer for r in records})

    try:
        _ranking_section(records, dims, out, notes)
        _ert_section(records, dims, arm_ids, out, notes)
    except (IncompleteDataError, MissingBaselineError) as exc:
        raise AnalyzeError(f"store is incomplete: {exc}") from exc
    _regret_section(records, out, notes)
    matrix, scores = _feature_section(features_csv, out, base_seed, notes)
    _classifier_section(matrix, scores, out, base_seed, notes)

    manifest = {
        "params": ANALYSIS_PARAMS,
        "config_hash": json.loads(
            store.manifest_path.read_text(encoding="utf-8")
        )["config_hash"],
        "n_records": len(records),
        "optimizers": arm_ids,
        "notes": sorted(notes),
    }
    _write(out / "analyze_manifest.json",
           [json.dumps(manifest, sort_keys=True, indent=2)])
    return out
