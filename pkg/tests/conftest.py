"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

from baserates.facts import FactKey, MonthlyFacts

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
GOLDEN = FIXTURES / "golden"
SLOC_DIR = FIXTURES / "sloc"

# Hand-counted (code, comment, blank) for every line-classification fixture.
SLOC_MANIFEST = {
    "hello.c": (5, 3, 2),
    "strings.c": (3, 1, 0),
    "block.c": (2, 4, 1),
    "nested.c": (2, 0, 0),
    "empty.txt": (0, 0, 0),
    "blanks.py": (2, 2, 2),
    "hash_strings.py": (3, 1, 0),
    "notes.txt": (3, 0, 1),
    "no_newline.c": (2, 0, 0),
    "crlf.c": (1, 1, 1),
    "only_comment.c": (0, 2, 0),
    "mixed.sh": (2, 2, 0),
    "unclosed.c": (0, 2, 0),
}


def load_corpus():
    """Metadata and joined monthly facts of the committed 10-project corpus."""
    from baserates.facts import join_facts
    from baserates.ingest import read_facts, read_metadata

    metas, _ = read_metadata(CORPUS / "metadata.jsonl")
    size, activity, _ = read_facts(CORPUS / "facts.csv")
    monthly, diagnostics = join_facts(size, activity)
    assert diagnostics == []
    return metas, monthly


def make_month(
    project: str,
    year: int,
    month: int,
    loc: int,
    comments: int = 0,
    blanks: int = 0,
    loc_added: int = 0,
    loc_removed: int = 0,
    commits: int = 0,
    contributors: int = 0,
) -> MonthlyFacts:
    return MonthlyFacts(
        FactKey(project, year, month),
        loc,
        comments,
        blanks,
        loc_added,
        loc_removed,
        commits,
        contributors,
    )


def month_run(project: str, year: int, locs, start_month: int = 1):
    """MonthlyFacts for consecutive months of one year with the given loc values."""
    return [
        make_month(project, year, start_month + offset, loc)
        for offset, loc in enumerate(locs)
    ]
