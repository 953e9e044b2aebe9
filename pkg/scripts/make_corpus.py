"""Regenerate the packaged curve corpus.

Random members are kept when the apparatus preconditions hold with margin
on a 101-point grid: every grid point valid, principal normal and first
binormal far from lightlike, torsion and third curvature away from zero,
and one causal type along the whole curve.
"""

import random
import sys

import numpy as np

from pg4curves import corpus
from pg4curves.frenet import _iso_dot, _deriv
from pg4curves.special import sample_curve

SEED = 20240501
RANDOM_COUNT = 7


def _unit_margin(v) -> float:
    q = _iso_dot(v, v).d[0]
    e2 = sum(c.d[0] ** 2 for c in v[1:])
    return abs(q) / e2


def acceptable(curve) -> bool:
    cs = sample_curve(curve, 101)
    if cs.failures:
        return False
    signs = {p.app.signs for p in cs.samples}
    if len(signs) != 1:
        return False
    for p in cs.samples:
        fj = p.app.jets
        if _unit_margin(_deriv(fj.T)) < 0.05 or _unit_margin(_deriv(fj.N)) < 0.05:
            return False
        if p.app.tau < 0.1 or abs(p.app.sigma) < 0.05:
            return False
    return True


def main(out=None):
    out = corpus.PACKAGED if out is None else out
    for c in corpus.fixed_curves():
        corpus.write_curve(c, out)
    rng = random.Random(SEED)
    kept = tries = 0
    while kept < RANDOM_COUNT:
        tries += 1
        c = corpus.random_curve(rng, f"random_{kept + 1:02d}")
        if acceptable(c):
            corpus.write_curve(c, out)
            kept += 1
    print(f"kept {kept} random curves out of {tries} draws", file=sys.stderr)


if __name__ == "__main__":
    main(*sys.argv[1:])
