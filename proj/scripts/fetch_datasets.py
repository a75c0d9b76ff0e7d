#!/usr/bin/env python3
"""Collect a benchmark image set into a flat directory and check it against datasets.json.

  fetch_datasets.py set5 --source <url|archive|directory> --dest data/set5

Files whose digest is pinned in the manifest are verified; unpinned ones are
listed with their observed SHA-256 so they can be pinned.
"""
import argparse
import hashlib
import json
import shutil
import sys
import tarfile
import tempfile
import urllib.request
import zipfile
from pathlib import Path

EXTENSIONS = {".png", ".bmp", ".jpg", ".jpeg", ".tif", ".tiff"}
MANIFEST = Path(__file__).with_name("datasets.json")


def sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def materialize(source, work):
    if source.startswith(("http://", "https://")):
        target = work / Path(source.split("?")[0]).name
        with urllib.request.urlopen(source) as r, open(target, "wb") as f:
            shutil.copyfileobj(r, f)
        source = str(target)
    path = Path(source)
    if path.is_dir():
        return path
    out = work / "unpacked"
    if zipfile.is_zipfile(path):
        zipfile.ZipFile(path).extractall(out)
    elif tarfile.is_tarfile(path):
        with tarfile.open(path) as t:
            t.extractall(out, filter="data")
    else:
        sys.exit(f"error: {source} is neither a directory nor a zip/tar archive")
    return out


def main():
    manifest = json.loads(MANIFEST.read_text())
    ap = argparse.ArgumentParser()
    ap.add_argument("dataset", choices=sorted(manifest))
    ap.add_argument("--source", required=True, help="URL, archive or directory holding the images")
    ap.add_argument("--dest", required=True, type=Path)
    args = ap.parse_args()
    entry = manifest[args.dataset]

    with tempfile.TemporaryDirectory() as tmp:
        root = materialize(args.source, Path(tmp))
        images = sorted(p for p in root.rglob("*") if p.suffix.lower() in EXTENSIONS and not p.name.startswith("."))
        if "files" in entry:
            wanted = set(entry["files"])
            chosen = {}
            for p in images:
                if p.stem.lower() in wanted:
                    chosen.setdefault(p.stem.lower(), p)
            missing = wanted - set(chosen)
            if missing:
                sys.exit(f"error: missing {', '.join(sorted(missing))}")
            images = [chosen[k] for k in sorted(chosen)]
        elif len(images) != entry["count"]:
            sys.exit(f"error: expected {entry['count']} images, found {len(images)}")

        args.dest.mkdir(parents=True, exist_ok=True)
        bad = 0
        for p in images:
            digest = sha256(p)
            pinned = entry["sha256"].get(p.name)
            if pinned and pinned != digest:
                print(f"MISMATCH  {p.name}  {digest}  expected {pinned}")
                bad += 1
                continue
            shutil.copy2(p, args.dest / p.name)
            print(f"{'ok' if pinned else 'unpinned':9} {p.name}  {digest}")
    if bad:
        sys.exit(f"error: {bad} checksum mismatches")
    print(f"{len(images)} images in {args.dest}")


if __name__ == "__main__":
    main()
