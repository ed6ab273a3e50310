"""Rule-based sentence boundary detection.

Splits on sentence-final punctuation (., !, ?) followed by whitespace and an
opener (uppercase letter, digit or quote). A short abbreviation list guards
the usual false boundaries ("Mr. Smith").
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof rev sr jr st mt no vs etc inc ltd co corp dept est
    fig gen gov col sgt capt lt cmdr adm maj sen rep hon jan feb mar apr
    jun jul aug sep sept oct nov dec mon tue wed thu fri sat sun approx
    """.split()
)

_BOUNDARY = re.compile(r"([.!?]+)(\s+)")
_OPENER = re.compile(r"""["'“”‘’(\[]?[A-Z0-9]""")
_TRAILING_WORD = re.compile(r"([A-Za-z]+)\.?$")


@dataclass(frozen=True)
class Sentence:
    text: str
    position: int  # 1-based index within the document


def _is_abbreviation(prefix: str) -> bool:
    m = _TRAILING_WORD.search(prefix.rstrip(".!?"))
    return m is not None and m.group(1).lower() in ABBREVIATIONS


def split_sentences(text: str) -> list[Sentence]:
    """Split text into sentences with contiguous 1-based positions."""
    if not text.strip():
        return []
    boundaries: list[int] = []
    for m in _BOUNDARY.finditer(text):
        after = text[m.end():]
        if not after or not _OPENER.match(after):
            continue
        if m.group(1) == "." and _is_abbreviation(text[: m.end(1)]):
            continue
        boundaries.append(m.end(1))  # split after the punctuation run
    sentences: list[Sentence] = []
    start = 0
    for cut in boundaries:
        chunk = text[start:cut].strip()
        if chunk:
            sentences.append(Sentence(chunk, len(sentences) + 1))
        start = cut
    tail = text[start:].strip()
    if tail:
        sentences.append(Sentence(tail, len(sentences) + 1))
    return sentences
