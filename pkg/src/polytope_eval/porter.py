"""Self-contained Porter stemmer (the classic 1980 suffix-stripping algorithm).

Within each step the longest matching suffix wins; if its condition fails, no
other rule of that step applies. Words of length <= 2 are left alone, matching
the reference implementation's behavior.
"""

from __future__ import annotations

_VOWELS = "aeiou"


def _is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in the stem's condensed consonant/vowel form."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_consonant(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(stem: str) -> bool:
    return (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and _is_consonant(stem, len(stem) - 1)
    )


def _ends_cvc(stem: str) -> bool:
    # consonant-vowel-consonant where the final consonant is not w, x or y
    return (
        len(stem) >= 3
        and _is_consonant(stem, len(stem) - 3)
        and not _is_consonant(stem, len(stem) - 2)
        and _is_consonant(stem, len(stem) - 1)
        and stem[-1] not in "wxy"
    )


def _apply_rules(word: str, rules, condition) -> str:
    """Apply the longest-matching rule whose condition holds on the base."""
    best = None
    for suffix, replacement in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, replacement)
    if best is None:
        return word
    suffix, replacement = best
    base = word[: len(word) - len(suffix)]
    if condition(base):
        return base + replacement
    return word


def _step1a(word: str) -> str:
    return _apply_rules(
        word,
        [("sses", "ss"), ("ies", "i"), ("ss", "ss"), ("s", "")],
        lambda base: True,
    )


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        base = word[:-3]
        return base + "ee" if _measure(base) > 0 else word
    if word.endswith("ed"):
        base, stripped = word[:-2], _has_vowel(word[:-2])
    elif word.endswith("ing"):
        base, stripped = word[:-3], _has_vowel(word[:-3])
    else:
        return word
    if not stripped:
        return word
    if base.endswith(("at", "bl", "iz")):
        return base + "e"
    if _ends_double_consonant(base) and base[-1] not in "lsz":
        return base[:-1]
    if _measure(base) == 1 and _ends_cvc(base):
        return base + "e"
    return base


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


_STEP2_RULES = [
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
]

_STEP3_RULES = [
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
]

_STEP4_SUFFIXES = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _step2(word: str) -> str:
    return _apply_rules(word, _STEP2_RULES, lambda base: _measure(base) > 0)


def _step3(word: str) -> str:
    return _apply_rules(word, _STEP3_RULES, lambda base: _measure(base) > 0)


def _step4(word: str) -> str:
    best = None
    for suffix in _STEP4_SUFFIXES:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    if best is None:
        return word
    base = word[: len(word) - len(best)]
    if _measure(base) <= 1:
        return word
    if best == "ion" and not base.endswith(("s", "t")):
        return word
    return base


def _step5a(word: str) -> str:
    if not word.endswith("e"):
        return word
    base = word[:-1]
    m = _measure(base)
    if m > 1 or (m == 1 and not _ends_cvc(base)):
        return base
    return word


def _step5b(word: str) -> str:
    if _measure(word) > 1 and _ends_double_consonant(word) and word.endswith("l"):
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Stem a single lowercase-insensitive word."""
    word = word.lower()
    if len(word) <= 2:
        return word
    for step in (
        _step1a, _step1b, _step1c, _step2, _step3, _step4, _step5a, _step5b
    ):
        word = step(word)
    return word
