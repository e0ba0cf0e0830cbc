#!/usr/bin/env python3
"""Regenerate the checked-in dataset CSVs under data/.

iris and bcw come from scikit-learn's bundled copies of the UCI files and are
written with full precision. The cats dataset (144 cats: body weight in kg,
heart weight in g, plus sex) is not redistributable from here; export it from
R with

    write.csv(MASS::cats, "cats_raw.csv", row.names = FALSE)

and pass the file via --cats to convert it into data/cats.csv. Tests that
need cats skip themselves while the file is absent.
"""

import argparse
import csv
import os

OUT_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def write_iris(out_dir):
    from sklearn.datasets import load_iris

    ds = load_iris()
    path = os.path.join(out_dir, "iris.csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for row, label in zip(ds.data, ds.target):
            w.writerow([repr(float(v)) for v in row] + [int(label)])
    print("wrote", path)


def write_bcw(out_dir):
    from sklearn.datasets import load_breast_cancer

    ds = load_breast_cancer()
    path = os.path.join(out_dir, "bcw.csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow([name.replace(" ", "_") for name in ds.feature_names] + ["diagnosis"])
        for row, label in zip(ds.data, ds.target):
            w.writerow([repr(float(v)) for v in row] + [int(label)])
    print("wrote", path)


def convert_cats(raw_path, out_dir):
    path = os.path.join(out_dir, "cats.csv")
    with open(raw_path, newline="") as f:
        rows = list(csv.reader(f))
    header = [h.strip().strip('"') for h in rows[0]]
    sex_i, bwt_i, hwt_i = header.index("Sex"), header.index("Bwt"), header.index("Hwt")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["sex", "body_weight_kg", "heart_weight_g"])
        for row in rows[1:]:
            if not row:
                continue
            w.writerow([row[sex_i].strip().strip('"'), row[bwt_i], row[hwt_i]])
    print("wrote", path)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cats", help="path to an R export of MASS::cats (see module docstring)")
    ap.add_argument("--out", default=OUT_DIR)
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    write_iris(args.out)
    write_bcw(args.out)
    if args.cats:
        convert_cats(args.cats, args.out)


if __name__ == "__main__":
    main()
