from __future__ import annotations

import csv
from pathlib import Path

import pytest

from polytope_eval import Corpus, IssueType, Sample, Severity, SyntacticLabel

DATA_DIR = Path(__file__).parent / "data"


def load_matrix_fixture() -> dict[tuple[IssueType, SyntacticLabel], Severity | None]:
    """Independently transcribed severity cells, keyed by (issue, label)."""
    cells: dict[tuple[IssueType, SyntacticLabel], Severity | None] = {}
    with open(DATA_DIR / "severity_matrix.tsv", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter="\t")
        header = next(reader)
        labels = [SyntacticLabel(name) for name in header[1:]]
        for row in reader:
            issue = IssueType(row[0])
            for label, cell in zip(labels, row[1:]):
                cells[(issue, label)] = None if cell == "N/A" else Severity(cell)
    return cells


@pytest.fixture(scope="session")
def matrix_fixture():
    return load_matrix_fixture()


def make_sample(
    sample_id: str = "s1",
    source: str = "First sentence here. Second sentence there. Third one closes.",
    reference: str = "A reference summary of the document.",
    outputs: dict[str, str] | None = None,
) -> Sample:
    if outputs is None:
        outputs = {"sysA": "The quick brown fox jumps over the lazy dog today."}
    return Sample(id=sample_id, source=source, reference=reference, system_outputs=outputs)


@pytest.fixture
def sample() -> Sample:
    return make_sample()


@pytest.fixture
def corpus(sample) -> Corpus:
    return Corpus([sample])
