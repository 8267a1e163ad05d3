#!/usr/bin/env python3
"""Writes the bundled synthetic logistic-regression dataset.

Features are standard normal; labels are Bernoulli draws from the logistic
model with a fixed parameter vector, so the classes overlap and the maximum
likelihood estimate exists.
"""
import argparse

import numpy as np


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--features", type=int, default=3)
    parser.add_argument("--seed", type=int, default=20240617)
    parser.add_argument("--out", default="data/synthetic_logistic_100.csv")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    features = rng.standard_normal((args.samples, args.features))
    weights = np.linspace(-1.0, 1.5, args.features)
    logits = 0.25 + features @ weights
    labels = (rng.random(args.samples) < 1.0 / (1.0 + np.exp(-logits))).astype(int)

    with open(args.out, "w", encoding="ascii") as out:
        for row, label in zip(features, labels):
            out.write(",".join(f"{v:.6f}" for v in row) + f",{label}\n")


if __name__ == "__main__":
    main()
