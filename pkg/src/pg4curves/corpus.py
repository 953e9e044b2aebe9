"""Built-in test curves.

The corpus is a directory of JSON curve files (``PG4_CORPUS`` overrides the
packaged one).  Random members were drawn once with :func:`random_curve`
and frozen as text, so the suite never depends on the RNG at run time.
"""

from __future__ import annotations

import json
import os
import random
from pathlib import Path

from .dsl import CurveDef, curve_from_json, parse_curve

CORPUS_ENV = "PG4_CORPUS"
PACKAGED = Path(__file__).with_name("corpus")

# Hand-picked members: (file stem, curve text).
FIXED = [
    ("cosh_sinh", "x=s; y=cosh(s); z=sinh(s); w=0 on [0, 1]"),
    ("helix_b0", "x=s; y=0; z=cos(s); w=sin(s) on [0, 3]"),
    ("helix_b1", "x=s; y=s; z=cos(s); w=sin(s) on [0, 3]"),
    # closed-form solutions of the Frenet system with constant (kappa, tau, sigma),
    # signs (-1, 1, 1) and the coordinate-axis initial frame at the origin
    ("wcurve_1_1_2",
     "x=s; y=2/3*s^2+(cos(sqrt(3)*s)-1)/9; z=s/3-sin(sqrt(3)*s)/(3*sqrt(3));"
     " w=s^2/3+2*(cos(sqrt(3)*s)-1)/9 on [0, 1]"),
    ("wcurve_1_2_4",
     "x=s; y=2/3*s^2+(cos(sqrt(12)*s)-1)/36; z=s/6-sin(sqrt(12)*s)/(6*sqrt(12));"
     " w=s^2/3+(cos(sqrt(12)*s)-1)/18 on [0, 1]"),
]


def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else PACKAGED


def load_corpus(path=None) -> list:
    """All curves of the corpus directory, sorted by file name."""
    d = Path(path) if path else corpus_dir()
    out = []
    for f in sorted(d.glob("*.json")):
        obj = json.loads(f.read_text())
        out.append(curve_from_json(obj))
    return out


def _poly(rng: random.Random, scale: float) -> str:
    deg = rng.randint(2, 5)
    terms = []
    for k in range(deg + 1):
        c = round(rng.uniform(-scale, scale), 3)
        if c == 0:
            continue
        terms.append(f"{c}*s^{k}" if k > 1 else (f"{c}*s" if k == 1 else f"{c}"))
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _trig(rng: random.Random) -> str:
    fn = rng.choice(["sin", "cos"])
    a = round(rng.uniform(0.2, 1.0), 3)
    b = round(rng.uniform(0.5, 3.0), 3)
    return f"{a}*{fn}({b}*s)"


def random_curve(rng: random.Random, label: str) -> CurveDef:
    """Degree <= 5 polynomial coordinates, each plus one trigonometric term."""
    y = f"{_poly(rng, 1.0)} + {_trig(rng)}"
    z = f"{_poly(rng, 1.0)} + {_trig(rng)}"
    w = f"{_poly(rng, 1.0)} + {_trig(rng)}"
    text = f"x=s; y={y}; z={z}; w={w} on [0, 1]"
    return parse_curve(text.replace("+ -", "- "), label)


def fixed_curves() -> list:
    return [parse_curve(text, stem) for stem, text in FIXED]


def write_curve(curve: CurveDef, directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    p = directory / f"{curve.label}.json"
    p.write_text(json.dumps(curve.to_json(), indent=2, sort_keys=True) + "\n")
    return p
