"""Text analysis: tokenization, Turkish case folding, stopwords, stemming.

One analyzer configuration is shared between indexing and query
processing, so the same text always produces the same terms.  All
operations are pure; an :class:`Analyzer` is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .turkish_affix import TurkishAffixStemmer

CASEFOLD_MODES = ("turkish", "ascii")
APOSTROPHE_POLICIES = ("truncate-after", "keep-whole")
STEMMERS = ("none", "affix", "lemma")

# runs of letters, digits and apostrophes; everything else separates tokens
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+")

# str.lower() maps I to i and İ to i + combining dot, both wrong for Turkish
_TURKISH_LOWER = str.maketrans({"I": "ı", "İ": "i"})
_ASCII_LOWER = str.maketrans({"I": "i", "İ": "i"})


def turkish_fold(text: str) -> str:
    """Lowercase with Turkish rules: I becomes ı and İ becomes i."""
    return text.translate(_TURKISH_LOWER).lower()


def ascii_fold(text: str) -> str:
    """Lowercase with plain rules; both I and İ become a dotted i."""
    return text.translate(_ASCII_LOWER).lower()


def fold(text: str, mode: str = "turkish") -> str:
    if mode == "turkish":
        return turkish_fold(text)
    if mode == "ascii":
        return ascii_fold(text)
    raise ValueError(f"unknown casefold mode {mode!r}")


class LemmaTable:
    """Exact-match lookup from folded surface form to lemma.

    Words missing from the table pass through unchanged.  Immutable
    after load and shareable between threads.
    """

    def __init__(self, entries: dict[str, str]):
        self._entries = dict(entries)

    @classmethod
    def load(cls, path: str | Path, casefold_mode: str = "turkish") -> "LemmaTable":
        """Load ``surface<TAB>lemma`` lines; duplicate surfaces, last wins."""
        entries: dict[str, str] = {}
        with open(path, encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.rstrip("\n")
                if not line.strip():
                    continue
                if "\t" not in line:
                    raise ValueError(
                        f"{path}: line {lineno}: expected surface<TAB>lemma"
                    )
                surface, lemma = line.split("\t", 1)
                entries[fold(surface.strip(), casefold_mode)] = lemma.strip()
        return cls(entries)

    def lemma(self, word: str) -> str:
        return self._entries.get(word, word)

    def __len__(self) -> int:
        return len(self._entries)

    def content_digest(self) -> str:
        payload = json.dumps(sorted(self._entries.items()), ensure_ascii=False)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def stem_lemma(word: str, table: LemmaTable) -> str:
    """Dictionary lemma for *word*, or the word itself on a miss."""
    return table.lemma(word)


def load_stopwords(path: str | Path, casefold_mode: str = "turkish") -> frozenset[str]:
    """Read a stopword file (one word per line), folding on load."""
    words = set()
    with open(path, encoding="utf-8") as f:
        for raw in f:
            word = raw.strip()
            if word:
                words.add(fold(word, casefold_mode))
    return frozenset(words)


@dataclass(frozen=True)
class AnalyzerConfig:
    """Normalization pipeline configuration.

    ``stopwords`` holds the folded stopword set itself (not a path), so
    a config fully determines analyzer behavior.  ``lemma_dict`` is the
    dictionary path and is only consulted when ``stemmer == "lemma"``.
    """

    casefold: str = "turkish"
    apostrophes: str = "truncate-after"
    stopwords: frozenset[str] = field(default_factory=frozenset)
    stemmer: str = "none"
    lemma_dict: str | None = None

    def __post_init__(self) -> None:
        if self.casefold not in CASEFOLD_MODES:
            raise ValueError(f"casefold must be one of {CASEFOLD_MODES}")
        if self.apostrophes not in APOSTROPHE_POLICIES:
            raise ValueError(f"apostrophes must be one of {APOSTROPHE_POLICIES}")
        if self.stemmer not in STEMMERS:
            raise ValueError(f"stemmer must be one of {STEMMERS}")
        if self.stemmer == "lemma" and not self.lemma_dict:
            raise ValueError("stemmer 'lemma' requires lemma_dict path")


def tokenize(text: str, config: AnalyzerConfig) -> list[str]:
    """Split, fold, and apply the apostrophe policy; drops empty tokens."""
    tokens = []
    truncate = config.apostrophes == "truncate-after"
    for match in _TOKEN_RE.finditer(text):
        token = fold(match.group(), config.casefold)
        if truncate:
            token = token.split("'", 1)[0]
        if token:
            tokens.append(token)
    return tokens


class Analyzer:
    """A resolved analysis pipeline: tokenize, filter stopwords, stem."""

    def __init__(self, config: AnalyzerConfig):
        self.config = config
        self._lemmas: LemmaTable | None = None
        self._affix: TurkishAffixStemmer | None = None
        if config.stemmer == "lemma":
            self._lemmas = LemmaTable.load(config.lemma_dict, config.casefold)
        elif config.stemmer == "affix":
            self._affix = TurkishAffixStemmer()

    def _stem(self, token: str) -> str:
        if any(ch.isdigit() for ch in token):
            return token  # numbers are index terms, never stemmed
        if self._affix is not None:
            return self._affix.stem(token)
        if self._lemmas is not None:
            return self._lemmas.lemma(token)
        return token

    def analyze(self, text: str) -> list[str]:
        """Terms for *text*: tokenize, drop stopwords, then stem."""
        stopwords = self.config.stopwords
        return [
            self._stem(token)
            for token in tokenize(text, self.config)
            if token not in stopwords
        ]

    def fingerprint(self) -> str:
        """Digest of everything that can change this analyzer's output.

        Stored inside indexes so the search layer can reject queries
        analyzed with a different pipeline.
        """
        payload = {
            "casefold": self.config.casefold,
            "apostrophes": self.config.apostrophes,
            "stopwords": sorted(self.config.stopwords),
            "stemmer": self.config.stemmer,
        }
        if self._lemmas is not None:
            payload["lemmas"] = self._lemmas.content_digest()
        if self._affix is not None:
            payload["affix_rules"] = self._affix.rules.version
        blob = json.dumps(payload, ensure_ascii=False, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def analyze(text: str, config: AnalyzerConfig) -> list[str]:
    """One-shot :meth:`Analyzer.analyze` for callers without an Analyzer."""
    return Analyzer(config).analyze(text)
