import random
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from nicehf.diagram import load
from nicehf.nicing import perturb

DATA = Path(__file__).resolve().parents[1] / "src" / "nicehf" / "data"
FIXTURES = sorted(p.stem for p in DATA.glob("*.hd"))
CORPUS = sorted(DATA.glob("corpus/*.hd"))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# small diagrams that make cheap seeds for random perturbation
SEEDS = ["s3_genus1", "s3_cancelling", "lens_3_1", "trefoil_origin", "trefoil_nice",
         "s3_two_basepoints", "corpus/random_g2_04", "corpus/random_g2_08", "corpus/random_g3_03"]


def fixture(name: str):
    return load(DATA / f"{name}.hd")


@pytest.fixture
def data_dir() -> Path:
    return DATA


@st.composite
def perturbed_diagrams(draw, max_moves: int = 3):
    """A seed diagram with a few random finger moves applied."""
    base = fixture(draw(st.sampled_from(SEEDS)))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    d, _ = perturb(base, rng, draw(st.integers(0, max_moves)), handleslides=False)
    return d
