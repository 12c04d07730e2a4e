"""Annotated-corpus ingestion and verb/object pair extraction.

The corpus format is UTF-8 TSV with one ``surface<TAB>lemma<TAB>pos`` token
per line, a blank line after each sentence and ``#`` comment lines. Tagging
and lemmatisation happen upstream, in whatever tool produced the file.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .errors import InputError, ParseError
from .fca import FormalContext

TAGS = frozenset({"VERB", "NOUN", "PRON", "DET", "ADJ", "ADV", "ADP", "PUNCT", "OTHER"})

# A pending object search ends at these; PRON means the object was a pronoun.
_BARRIERS = frozenset({"VERB", "ADP", "PUNCT", "PRON"})


@dataclass(frozen=True)
class AnnotatedToken:
    surface: str
    lemma: str
    pos: str

    def __post_init__(self) -> None:
        if not self.lemma:
            raise InputError("token lemma must be non-empty")
        if self.pos not in TAGS:
            raise InputError(f"unknown POS tag {self.pos!r}")


@dataclass(frozen=True)
class AnnotatedCorpus:
    """Sentences of tokens. Sentence numbers used elsewhere are 1-based."""

    sentences: tuple[tuple[AnnotatedToken, ...], ...]

    def __post_init__(self) -> None:
        if not self.sentences:
            raise InputError("corpus must contain at least one sentence")
        if any(not s for s in self.sentences):
            raise InputError("corpus sentences must be non-empty")

    def __len__(self) -> int:
        return len(self.sentences)

    def sentence(self, index: int) -> tuple[AnnotatedToken, ...]:
        if not 1 <= index <= len(self.sentences):
            raise InputError(f"sentence index {index} out of range 1..{len(self.sentences)}")
        return self.sentences[index - 1]


@dataclass(frozen=True, order=True)
class VerbNounPair:
    verb_lemma: str
    noun_lemma: str
    sentence_index: int

    def __post_init__(self) -> None:
        if not self.verb_lemma or not self.noun_lemma:
            raise InputError("pair lemmas must be non-empty")


def parse_corpus(stream: TextIO | Iterable[str], source: str | None = None) -> AnnotatedCorpus:
    sentences: list[tuple[AnnotatedToken, ...]] = []
    current: list[AnnotatedToken] = []
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if line.startswith("#"):
            continue
        if not line.strip():
            if current:
                sentences.append(tuple(current))
                current = []
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError(f"expected 3 tab-separated columns, got {len(cols)}", lineno, source)
        surface, lemma, pos = (c.strip() for c in cols)
        if pos not in TAGS:
            raise ParseError(f"unknown POS tag {pos!r}", lineno, source)
        if not lemma:
            raise ParseError("empty lemma", lineno, source)
        current.append(AnnotatedToken(surface, lemma.lower(), pos))
    if current:
        sentences.append(tuple(current))
    if not sentences:
        raise ParseError("corpus contains no sentences", lineno or None, source)
    return AnnotatedCorpus(tuple(sentences))


def read_corpus(path: str | Path) -> AnnotatedCorpus:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return parse_corpus(fh, source=str(path))


def _object_of(sentence: Sequence[AnnotatedToken], verb_at: int, window: int) -> str | None:
    last_noun = None
    for tok in sentence[verb_at + 1 : verb_at + 1 + window]:
        if tok.pos == "NOUN":
            last_noun = tok.lemma
        elif last_noun is not None or tok.pos in _BARRIERS:
            break
    return last_noun


def extract_pairs(corpus: AnnotatedCorpus, window: int = 5) -> list[VerbNounPair]:
    """Pair each verb with the head of the first noun run that follows it.

    Determiners, adjectives, adverbs and OTHER tokens before the run are
    skipped; a verb, adposition, punctuation mark or pronoun ends the search.
    The head is the last noun of the run, and the run is cut at ``window``
    tokens after the verb.
    """
    if window < 1:
        raise InputError(f"window must be >= 1, got {window}")
    pairs = []
    for s_idx, sentence in enumerate(corpus.sentences, start=1):
        for t_idx, tok in enumerate(sentence):
            if tok.pos != "VERB":
                continue
            noun = _object_of(sentence, t_idx, window)
            if noun is not None:
                pairs.append(VerbNounPair(tok.lemma, noun, s_idx))
    return pairs


def filter_frequent(
    pairs: Sequence[VerbNounPair], min_freq: int = 2
) -> tuple[frozenset[str], frozenset[str], list[VerbNounPair]]:
    """Return ``(verbs, nouns, kept_pairs)`` for terms occurring in >= ``min_freq`` pairs."""
    if min_freq < 1:
        raise InputError(f"min_freq must be >= 1, got {min_freq}")
    verb_counts = Counter(p.verb_lemma for p in pairs)
    noun_counts = Counter(p.noun_lemma for p in pairs)
    verbs = frozenset(v for v, c in verb_counts.items() if c >= min_freq)
    nouns = frozenset(n for n, c in noun_counts.items() if c >= min_freq)
    kept = [p for p in pairs if p.verb_lemma in verbs and p.noun_lemma in nouns]
    return verbs, nouns, kept


def build_context(
    pairs: Iterable[VerbNounPair], nouns: Iterable[str], verbs: Iterable[str]
) -> FormalContext:
    """Nouns become objects, verbs attributes; both sorted lexicographically."""
    objects = tuple(sorted(set(nouns)))
    attributes = tuple(sorted(set(verbs)))
    incidence = set()
    for p in pairs:
        incidence.add((p.noun_lemma, p.verb_lemma))
    return FormalContext.from_pairs(objects, attributes, incidence)


def write_pairs(pairs: Iterable[VerbNounPair]) -> str:
    return "".join(f"{p.verb_lemma}\t{p.noun_lemma}\t{p.sentence_index}\n" for p in pairs)


def parse_pairs(stream: TextIO | Iterable[str], source: str | None = None) -> list[VerbNounPair]:
    pairs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError(f"expected verb, noun and sentence index, got {len(cols)} columns", lineno, source)
        try:
            index = int(cols[2])
        except ValueError:
            raise ParseError(f"sentence index {cols[2]!r} is not an integer", lineno, source) from None
        if index < 1 or not cols[0] or not cols[1]:
            raise ParseError("pair needs two lemmas and a positive sentence index", lineno, source)
        pairs.append(VerbNounPair(cols[0], cols[1], index))
    return pairs


def read_pairs(path: str | Path) -> list[VerbNounPair]:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return parse_pairs(fh, source=str(path))
