from __future__ import annotations

from pathlib import Path

import pytest

from linhyp.classify import classify
from linhyp.permgroup import closure, parse_cycles

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


def build_group(words, degree):
    return closure([parse_cycles(w, degree) for w in words])


@pytest.fixture(scope="session")
def s4():
    return build_group(["(1 2)", "(1 2 3 4)"], 4)


@pytest.fixture(scope="session")
def s4xz2():
    return build_group(["(1 2)", "(1 2 3 4)", "(5 6)"], 6)


@pytest.fixture(scope="session")
def a5xz2():
    return build_group(["(1 2 3 4 5)", "(1 2 3)", "(6 7)"], 7)


@pytest.fixture(scope="session")
def s4_classes(s4):
    return classify(s4, "s4")


@pytest.fixture(scope="session")
def s4xz2_classes(s4xz2):
    return classify(s4xz2, "s4xz2")


@pytest.fixture(scope="session")
def a5xz2_classes(a5xz2):
    return classify(a5xz2, "a5xz2")


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
