"""Regenerate the bundled classification datasets (fixed seeds, small CSVs).

Run from the repository root:  python tools/make_datasets.py
"""
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "src/optscape/hpo/data"


def write_csv(path, X, y):
    cols = [f"x{i+1}" for i in range(X.shape[1])]
    with open(path, "w") as fh:
        fh.write(",".join(cols + ["label"]) + "\n")
        for row, lab in zip(X, y):
            fh.write(",".join(f"{v:.6f}" for v in row) + f",{int(lab)}\n")
    print(path, X.shape, "classes:", len(np.unique(y)))


def linsep2(rng):
    # two classes, separable by a hyperplane with margin 0.3
    w = np.array([1.0, -2.0])
    rows, labels = [], []
    while len(rows) < 240:
        x = rng.uniform(-2, 2, size=2)
        m = x @ w / np.linalg.norm(w)
        if abs(m) < 0.3:
            continue
        noise = rng.normal(scale=0.8, size=4)
        rows.append(np.concatenate([x, noise]))
        labels.append(1 if m > 0 else 0)
    return np.array(rows), np.array(labels)


def blobs3(rng):
    centers = np.array(
        [
            [0.0, 0.0, 1.0, -1.0, 0.5],
            [2.0, 1.5, -0.5, 0.5, -1.0],
            [-1.5, 2.0, 0.5, 1.5, 1.0],
        ]
    )
    X, y = [], []
    for c in range(3):
        pts = rng.normal(loc=centers[c], scale=1.1, size=(100, 5))
        X.append(pts)
        y.extend([c] * 100)
    return np.vstack(X), np.array(y)


def rings6(rng):
    # six classes: three radial rings split by half-plane, plus 2 noise dims
    X, y = [], []
    for c in range(6):
        radius = 1.0 + (c // 2) * 1.5
        side = c % 2
        n = 60
        theta = rng.uniform(side * np.pi, (side + 1) * np.pi, size=n)
        r = radius + rng.normal(scale=0.18, size=n)
        pts = np.column_stack(
            [
                r * np.cos(theta),
                r * np.sin(theta),
                rng.normal(scale=1.0, size=n),
                rng.normal(scale=1.0, size=n),
            ]
        )
        X.append(pts)
        y.extend([c] * n)
    return np.vstack(X), np.array(y)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    X, y = linsep2(np.random.default_rng(20240601))
    write_csv(OUT / "linsep2.csv", X, y)
    X, y = blobs3(np.random.default_rng(20240602))
    write_csv(OUT / "blobs3.csv", X, y)
    X, y = rings6(np.random.default_rng(20240603))
    write_csv(OUT / "rings6.csv", X, y)


if __name__ == "__main__":
    main()
