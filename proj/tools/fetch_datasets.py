#!/usr/bin/env python3
"""Fetch the real-world evaluation datasets and convert them to pplr CSV.

The CSV layout is the one `pplr` reads: UTF-8, comma separated, a header row
and the binary label in the final column.

Sources (downloaded as Python source distributions through pip, nothing is
installed):

  lbw.csv   MASS::birthwt (189 records) from the `pydataset` package.
            features: age, lwt, race, smoke, ptl, ht, ui, ftv; label: low.
            race is kept as its numeric code (1/2/3) and bwt is dropped
            because it defines the label.
  uis.csv   quantreg::uis (575 records) from the `pydataset` package.
            features: age, beck, hercoc, ivhx, ndrugtx, race, treat, site;
            label: drug free at end of follow-up (1 - CENSOR). The original
            DFREE indicator is not shipped with this copy, so this label is a
            stand-in and coefficients are not comparable with DFREE fits.
  pima.csv  Pima Indians diabetes (768 records) from the
            `imbalanced-databases` package (KEEL format).
            label: 1 = positive.

The prostate cancer study (PCS, 380 records) has no redistributable copy in
any package index we can reach; drop a file named pcs.csv with the layout
described above into the output directory to enable it.

Usage: tools/fetch_datasets.py [--out data]
"""

import argparse
import csv
import io
import pathlib
import subprocess
import sys
import tarfile
import tempfile
import zipfile


def pip_download(package: str, dest: pathlib.Path) -> pathlib.Path:
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "--no-deps", "--quiet",
         "--dest", str(dest), package],
        check=True,
    )
    matches = sorted(p for p in dest.iterdir()
                     if p.name.lower().replace("-", "_").startswith(
                         package.lower().replace("-", "_")))
    if not matches:
        raise RuntimeError(f"pip download produced nothing for {package}")
    return matches[-1]


def read_member(archive: pathlib.Path, suffix: str) -> bytes:
    if archive.suffix == ".whl" or archive.suffix == ".zip":
        with zipfile.ZipFile(archive) as zf:
            for name in zf.namelist():
                if name.endswith(suffix):
                    return zf.read(name)
    else:
        with tarfile.open(archive) as tf:
            for member in tf.getmembers():
                if member.name.endswith(suffix):
                    return tf.extractfile(member).read()
    raise RuntimeError(f"{suffix} not found in {archive.name}")


def pydataset_csv(archive: pathlib.Path, relpath: str) -> list[dict]:
    resources = read_member(archive, "pydataset/resources.tar.gz")
    with tarfile.open(fileobj=io.BytesIO(resources)) as tf:
        for member in tf.getmembers():
            if member.name.endswith(relpath) and "/._" not in member.name:
                text = tf.extractfile(member).read().decode("utf-8")
                return list(csv.DictReader(io.StringIO(text)))
    raise RuntimeError(f"{relpath} not found in pydataset resources")


def write_csv(path: pathlib.Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} records, {len(header) - 1} features)")


def fetch_lbw_uis(tmp: pathlib.Path, out: pathlib.Path) -> None:
    archive = pip_download("pydataset", tmp)
    birthwt = pydataset_csv(archive, "csv/MASS/birthwt.csv")
    cols = ["age", "lwt", "race", "smoke", "ptl", "ht", "ui", "ftv"]
    write_csv(out / "lbw.csv", cols + ["low"],
              [[r[c] for c in cols] + [r["low"]] for r in birthwt])

    uis = pydataset_csv(archive, "csv/quantreg/uis.csv")
    src = ["AGE", "BECK", "HC", "IV", "NDT", "RACE", "TREAT", "SITE"]
    names = ["age", "beck", "hercoc", "ivhx", "ndrugtx", "race", "treat",
             "site"]
    write_csv(out / "uis.csv", names + ["dfree"],
              [[r[c] for c in src] + [str(1 - int(r["CENSOR"]))]
               for r in uis])


def fetch_pima(tmp: pathlib.Path, out: pathlib.Path) -> None:
    archive = pip_download("imbalanced-databases", tmp)
    text = read_member(archive, "data/pima/pima.dat").decode("utf-8")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        fields = [f.strip() for f in line.split(",")]
        label = "1" if fields[-1] == "positive" else "0"
        rows.append(fields[:-1] + [label])
    header = ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age",
              "class"]
    write_csv(out / "pima.csv", header, rows)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(
        pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp = pathlib.Path(tmpdir)
        fetch_lbw_uis(tmp, out)
        fetch_pima(tmp, out)
    if not (out / "pcs.csv").exists():
        print("pcs.csv: no public source available; see the module docstring",
              file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
