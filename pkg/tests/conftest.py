import os
from pathlib import Path

import pytest

from morphotok import TokenizerConfig, load_vocab

DATA_DIR = Path(__file__).parent / "data"

# Published-data files (real vocab files, shared-task data). Not shipped with
# the repository; scripts/fetch_published_vocabs.py downloads the vocabularies
# on a machine with network access, or point MORPHOTOK_DATA at a directory
# holding them. Tests that need them skip when absent.
PUBLISHED_DIR = Path(os.environ.get("MORPHOTOK_DATA", DATA_DIR / "published"))
BERT_VOCAB_FILE = PUBLISHED_DIR / "bert-base-uncased-vocab.txt"
PUBMED_VOCAB_FILE = PUBLISHED_DIR / "pubmedbert-vocab.txt"
SIGMORPHON_DEV_FILE = PUBLISHED_DIR / "eng.word.dev.tsv"
BIOMED_LEXICON_FILE = PUBLISHED_DIR / "biomed_lexicon.tsv"


def require_published(*paths: Path) -> None:
    missing = [str(p) for p in paths if not p.exists()]
    if missing:
        pytest.skip(
            "published data not available: "
            + ", ".join(missing)
            + " (run scripts/fetch_published_vocabs.py or set MORPHOTOK_DATA)"
        )


@pytest.fixture(scope="session")
def mini_bert_vocab():
    return load_vocab(DATA_DIR / "mini_bert_vocab.txt")


@pytest.fixture(scope="session")
def mini_pubmed_vocab():
    return load_vocab(DATA_DIR / "mini_pubmed_vocab.txt")


@pytest.fixture
def cfg():
    return TokenizerConfig()


_acceptance_results: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): exit-criterion test, reported in the summary"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    if report.when == "call":
        _acceptance_results[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_results[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results.items():
        label = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome)
        terminalreporter.write_line(f"{label:6} {name}")
