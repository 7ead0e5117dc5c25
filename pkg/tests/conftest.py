from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from e7forge.config import HAMILTON_FIXTURE, SPLIT_FIXTURE
from e7forge.fano import load_labeling
from e7forge.lts_gift import faulkner_data, grade_at_point, lts_extract
from e7forge.manivel_e7 import assemble


@pytest.fixture(scope="session")
def split_labeling():
    return load_labeling(SPLIT_FIXTURE)


@pytest.fixture(scope="session")
def hamilton_labeling():
    return load_labeling(HAMILTON_FIXTURE)


@pytest.fixture(scope="session")
def split_assembly(split_labeling):
    return assemble(split_labeling, certify=True, seed=0)


@pytest.fixture(scope="session")
def hamilton_assembly(hamilton_labeling):
    return assemble(hamilton_labeling, certify=True, seed=0)


@pytest.fixture(scope="session")
def split_graded(split_assembly):
    return grade_at_point(split_assembly, "Q")


@pytest.fixture(scope="session")
def split_lts(split_graded):
    return lts_extract(split_graded)


@pytest.fixture(scope="session")
def split_gift(split_lts):
    return faulkner_data(split_lts)


@pytest.fixture(scope="session")
def hamilton_graded(hamilton_assembly):
    return grade_at_point(hamilton_assembly, "Q")


@pytest.fixture(scope="session")
def hamilton_lts(hamilton_graded):
    return lts_extract(hamilton_graded)


@pytest.fixture(scope="session")
def hamilton_gift(hamilton_lts):
    return faulkner_data(hamilton_lts)
