"""Locations of the public edge lists used for the summary tables."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

SNAP = "https://snap.stanford.edu/data/"


@dataclass(frozen=True)
class Dataset:
    name: str
    filename: str
    n: int
    m: int

    @property
    def url(self):
        return SNAP + self.filename


DATASETS = {
    "facebook": Dataset("Facebook", "facebook_combined.txt.gz", 4039, 88234),
    "grqc": Dataset("General Relativity", "ca-GrQc.txt.gz", 5242, 14496),
    "hepph": Dataset("High Energy Physics", "ca-HepPh.txt.gz", 12008, 118521),
    "enron": Dataset("Enron email", "email-Enron.txt.gz", 36692, 183831),
    "orkut": Dataset("Orkut", "bigdata/communities/com-orkut.ungraph.txt.gz", 3072441, 117185083),
    "livejournal": Dataset("LiveJournal", "bigdata/communities/com-lj.ungraph.txt.gz", 3997962, 34681189),
}


def cache_dir() -> Path:
    """Download cache: $EGOSTAT_CACHE_DIR, else ~/.cache/egostat."""
    env = os.environ.get("EGOSTAT_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "egostat"


def find_dataset(key: str) -> Path | None:
    """Path of a cached copy (gzipped or not), or None."""
    ds = DATASETS[key]
    base = Path(ds.filename).name
    dirs = [cache_dir()]
    if os.environ.get("EGOSTAT_DATA_DIR"):
        dirs.insert(0, Path(os.environ["EGOSTAT_DATA_DIR"]))
    for d in dirs:
        for cand in (base, base.removesuffix(".gz")):
            p = d / cand
            if p.is_file():
                return p
    return None
