import pytest

from landuse.bundled import data_path, default_resources
from landuse.ingest import load_labels, load_posts
from landuse.pipeline import prepare_corpus

SEED = 42


@pytest.fixture(scope="session")
def resources():
    return default_resources()


@pytest.fixture(scope="session")
def corpus(resources):
    posts = load_posts(data_path("corpus_posts.jsonl"))
    labels = load_labels(data_path("corpus_labels.jsonl"))
    return prepare_corpus(posts, labels, resources, 0.2, SEED)


# acceptance results, filled in by test_acceptance.py and printed at the end
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
