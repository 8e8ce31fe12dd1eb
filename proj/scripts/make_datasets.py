#!/usr/bin/env python3
"""Regenerates the CSV bundles under data/datasets/.

breast_cancer.csv is the real WDBC data exported from scikit-learn's bundled
copy. cardio.csv and redwine.csv are deterministic synthetic stand-ins with
the original tasks' shape (rows x features, class counts) for offline use;
point the CLI at real UCI exports to reproduce on the original data.
"""

import os

import numpy as np

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "datasets")


def write_csv(path, X, y, prefix):
    header = ",".join(f"{prefix}{i}" for i in range(X.shape[1])) + ",label"
    with open(path, "w") as f:
        f.write(header + "\n")
        for row, label in zip(X, y):
            f.write(",".join(f"{v:.6g}" for v in row) + f",{int(label)}\n")


def breast_cancer():
    from sklearn.datasets import load_breast_cancer

    data = load_breast_cancer()
    write_csv(os.path.join(OUT, "breast_cancer.csv"), data.data, data.target, "f")


def blobs(rng, rows, features, classes, informative, sep, noise, label_noise):
    centers = rng.normal(0.0, sep, size=(classes, informative))
    counts = rng.multinomial(rows, np.full(classes, 1.0 / classes))
    X, y = [], []
    for cls, count in enumerate(counts):
        pts = centers[cls] + rng.normal(0.0, 1.0, size=(count, informative))
        pad = rng.normal(0.0, 1.0, size=(count, features - informative))
        X.append(np.hstack([pts, pad]))
        y.append(np.full(count, cls))
    X = np.vstack(X)
    y = np.concatenate(y)
    order = rng.permutation(rows)
    X, y = X[order], y[order]
    X += rng.normal(0.0, noise, size=X.shape)
    flip = rng.random(rows) < label_noise
    y[flip] = rng.integers(0, classes, size=flip.sum())
    # shift/scale into positive sensor-like ranges
    X = (X - X.min(axis=0)) * rng.uniform(1.0, 20.0, size=features) + rng.uniform(
        0.0, 5.0, size=features
    )
    return X, y


def cardio():
    rng = np.random.default_rng(2025031)
    X, y = blobs(rng, rows=2126, features=21, classes=3, informative=12, sep=1.6,
                 noise=0.35, label_noise=0.04)
    write_csv(os.path.join(OUT, "cardio.csv"), X, y, "c")


def redwine():
    rng = np.random.default_rng(2025032)
    X, y = blobs(rng, rows=1599, features=11, classes=6, informative=7, sep=0.85,
                 noise=0.55, label_noise=0.10)
    write_csv(os.path.join(OUT, "redwine.csv"), X, y, "w")


def toy():
    rng = np.random.default_rng(2025033)
    rows = 50
    X = rng.uniform(0.0, 1.0, size=(rows, 2))
    y = (X[:, 0] >= 0.5).astype(int)
    write_csv(os.path.join(OUT, "toy.csv"), X, y, "t")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    breast_cancer()
    cardio()
    redwine()
    toy()
    print("datasets written to", OUT)
