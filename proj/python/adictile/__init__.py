"""ce tilings of the plane: generation, palettes, decoding and exhaustive checks."""

import json

from . import _adictile
from ._adictile import Error, Patch, aperiodicity, count_boxes, generate, parity_matchings, render

__all__ = [
    "Error",
    "Patch",
    "aperiodicity",
    "bars",
    "count_boxes",
    "crosses",
    "generate",
    "infer_pose",
    "lemma1",
    "levitsky",
    "palette",
    "parity_matchings",
    "remark1",
    "render",
    "run_cli",
    "torus",
    "verify",
]


def verify(patch, palette="ce"):
    return json.loads(_adictile.verify_json(patch, palette))


def palette(radius=256, alphabet="base"):
    return json.loads(_adictile.palette_json(radius, alphabet))


def infer_pose(patch):
    return json.loads(_adictile.infer_pose_json(patch))


def bars(patch):
    return json.loads(_adictile.bars_json(patch))


def crosses(patch):
    return json.loads(_adictile.crosses_json(patch))


def lemma1(patch, k):
    return json.loads(_adictile.lemma1_json(patch, k))


def remark1(k, i, lo, hi):
    return json.loads(_adictile.remark1_json(k, i, lo, hi))


def torus():
    return json.loads(_adictile.torus_json())


def levitsky(w, threads=1):
    return json.loads(_adictile.levitsky_json(w, threads))


def run_cli(*args):
    """Runs the command-line tool in process; returns (exit code, stdout, stderr)."""
    return _adictile.run_cli([str(a) for a in args])
