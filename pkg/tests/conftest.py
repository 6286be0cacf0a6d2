from pathlib import Path

import pytest

from mauakit import parse_problem

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    return parse_problem((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def treatment_plans():
    return load_fixture("treatment-plans.json")


@pytest.fixture
def investment_options():
    return load_fixture("investment-options.json")


@pytest.fixture
def university_programs():
    return load_fixture("university-programs.json")


@pytest.fixture
def smartphones():
    return load_fixture("smartphones.json")


@pytest.fixture
def vehicles():
    return load_fixture("vehicles.json")
