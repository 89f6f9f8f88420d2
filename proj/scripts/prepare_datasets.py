#!/usr/bin/env python3
"""Build the binary benchmark CSVs under data/ from the UCI copies bundled in
the `common_datasets` wheel (pip download --no-deps common_datasets).

    python3 scripts/prepare_datasets.py path/to/common_datasets-*.whl data/

Binarization (minority class listed first):
    balance    B        vs L,R      (49 / 576)
    ionosphere b        vs g        (126 / 225)
    pima       positive vs negative (268 / 500)
    satimage   4        vs rest     (626 / 5809), train+test files merged

The bundled ionosphere copy drops the second UCI attribute (constant 0); it is
re-inserted so the file carries the original 34 attributes.
"""
import csv
import io
import sys
import zipfile

ROOT = "common_datasets/data/classification/"


def keel_rows(text):
    names, rows = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("@attribute"):
            names.append(line.split()[1])
        elif not line.startswith("@"):
            rows.append([c.strip() for c in line.split(",")])
    return names, rows


def write(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main(wheel, out):
    z = zipfile.ZipFile(wheel)
    read = lambda p: z.read(ROOT + p).decode()

    names, rows = keel_rows(read("balance/balance.dat"))
    write(f"{out}/balance.csv", names[:-1] + ["class"],
          [r[:-1] + ["minority" if r[-1] == "B" else "majority"] for r in rows])

    names, rows = keel_rows(read("pima/pima.dat"))
    write(f"{out}/pima.csv", names[:-1] + ["class"],
          [r[:-1] + ["minority" if r[-1] == "positive" else "majority"] for r in rows])

    names, rows = keel_rows(read("ionosphere/ionosphere.dat"))
    header = ["a01", "a02"] + [f"a{i:02d}" for i in range(3, 35)] + ["class"]
    write(f"{out}/ionosphere.csv", header,
          [[r[0], "0"] + r[1:-1] + ["minority" if r[-1] == "b" else "majority"] for r in rows])

    rows = []
    for part in ("satimage/sat.trn.txt", "satimage/sat.tst.txt"):
        for line in read(part).splitlines():
            cells = line.split()
            if cells:
                rows.append(cells[:-1] + ["minority" if cells[-1] == "4" else "majority"])
    write(f"{out}/satimage.csv", [f"s{i:02d}" for i in range(1, 37)] + ["class"], rows)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "data")
