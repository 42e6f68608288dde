"""
Configuration for pytest.
"""
import os

import pytest

from app.erd.info import build_parser_info
from app.erd.parser import read_erd
from app.erd.transform import transform
from app.test.support.data import UNI_ROWS, create_database

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "app", "test", "fixtures")


def pytest_addoption(parser):
    """
    Controls rewriting of golden files.
    """
    parser.addoption("--update-golden", action="store_true",
                     help="Rewrite golden files instead of comparing against them.")


@pytest.fixture
def uni_erd_path():
    """ Path of the Uni model source. """
    return os.path.join(FIXTURES, "uni.erd")


@pytest.fixture
def uni_model(uni_erd_path):
    """ The parsed Uni model. """
    return read_erd(uni_erd_path)


@pytest.fixture
def uni_schema(uni_model):
    """ The relational schema of the Uni model. """
    return transform(uni_model)


@pytest.fixture
def uni_info(uni_model, uni_schema):
    """ Parser info for the Uni model. """
    return build_parser_info(uni_model, uni_schema, "Uni.db")


@pytest.fixture
def uni_db(tmp_path, uni_schema, uni_info):
    """ Path of a Uni database filled with the fixture rows. """
    return create_database(str(tmp_path / "Uni.db"), uni_schema, uni_info, UNI_ROWS)


@pytest.fixture
def golden(request):
    """
    Compares text against app/test/fixtures/golden/<name>, or rewrites the
    file when --update-golden is given.
    """
    update = request.config.getoption("--update-golden")

    def check(name, text):
        path = os.path.join(FIXTURES, "golden", name)
        text = text.rstrip("\n") + "\n"
        if update:
            with open(path, "w", encoding="utf-8") as golden_file:
                golden_file.write(text)
            return
        with open(path, "r", encoding="utf-8") as golden_file:
            expected = golden_file.read().rstrip("\n") + "\n"
        assert text == expected

    return check
