import os

import pytest

from eqpi1.documents import parse_path

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "eqpi1", "data")


def data_file(name):
    return os.path.normpath(os.path.join(DATA, name))


@pytest.fixture(scope="session")
def torus_doc():
    return parse_path(data_file("torus_z2.eqp"))


@pytest.fixture(scope="session")
def reflection_doc():
    return parse_path(data_file("reflection_circle_z2.eqp"))


@pytest.fixture(scope="session")
def free_doc():
    return parse_path(data_file("free_s0_z2.eqp"))
