from pathlib import Path

import pytest

from stpakit import corpus, index_model

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = corpus.corpus_dir()
GOLDEN_DIR = CORPUS_DIR / corpus.GOLDEN_DIR


@pytest.fixture(scope="session")
def pdmp():
    return corpus.load("pdmp")


@pytest.fixture(scope="session")
def cjfr():
    return corpus.load("cjfr")


@pytest.fixture(scope="session")
def pdmp_idx(pdmp):
    return index_model(pdmp)


@pytest.fixture(scope="session")
def cjfr_idx(cjfr):
    return index_model(cjfr)


@pytest.fixture(params=corpus.NAMES)
def corpus_name(request):
    return request.param
