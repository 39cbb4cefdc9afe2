"""The three per-pair similarity scores and the threshold judgement.

A candidate pair is scored by cosine similarity between, per method:

* word similarity: the two lexeme embeddings themselves;
* definition similarity: the summed embeddings of each lexeme's first
  definition;
* definition content similarity: the same definition sums after stop-word
  filtering.

Low similarity signals non-compositionality, so a score strictly below the
threshold is judged a compound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .definitions import ALL_OOV, ALL_STOPWORDS, NO_DEFINITION, DefinitionLexicon, definition_embedding
from .embeddings import EmbeddingTable, cosine
from .errors import ZeroNormError
from .pairs import LexemePair

LEFT_OOV = "left-oov"
RIGHT_OOV = "right-oov"
ZERO_NORM = "zero-norm"

UNSCORABLE_REASONS = frozenset(
    {LEFT_OOV, RIGHT_OOV, NO_DEFINITION, ALL_OOV, ALL_STOPWORDS, ZERO_NORM}
)


class ScoreMethod(enum.Enum):
    WORD_SIMILARITY = "word"
    DEFINITION_SIMILARITY = "definition"
    DEFINITION_CONTENT_SIMILARITY = "definition-content"


class Judgement(enum.Enum):
    COMPOUND = "compound"
    NOT_COMPOUND = "not-compound"
    UNSCORABLE = "unscorable"


@dataclass(frozen=True)
class ScoreOutcome:
    """Either a similarity value in [-1, 1] or a reason it could not be computed."""

    value: float | None = None
    unscorable_reason: str | None = None

    def __post_init__(self) -> None:
        if (self.value is None) == (self.unscorable_reason is None):
            raise ValueError("exactly one of value / unscorable_reason must be set")
        if self.value is not None and not -1.0 <= self.value <= 1.0:
            raise ValueError(f"similarity value {self.value} outside [-1, 1]")
        if self.unscorable_reason is not None and self.unscorable_reason not in UNSCORABLE_REASONS:
            raise ValueError(f"unknown unscorable reason: {self.unscorable_reason!r}")

    @classmethod
    def scored(cls, value: float) -> ScoreOutcome:
        return cls(value=value)

    @classmethod
    def unscorable(cls, reason: str) -> ScoreOutcome:
        return cls(unscorable_reason=reason)

    @property
    def is_scorable(self) -> bool:
        return self.value is not None


def word_similarity(table: EmbeddingTable, pair: LexemePair) -> ScoreOutcome:
    """Cosine similarity of the two lexeme embeddings."""
    left = table.lookup(pair.left)
    if left is None:
        return ScoreOutcome.unscorable(LEFT_OOV)
    right = table.lookup(pair.right)
    if right is None:
        return ScoreOutcome.unscorable(RIGHT_OOV)
    try:
        return ScoreOutcome.scored(cosine(left, right))
    except ZeroNormError:
        return ScoreOutcome.unscorable(ZERO_NORM)


def definition_similarity(
    table: EmbeddingTable,
    lexicon: DefinitionLexicon,
    pair: LexemePair,
) -> ScoreOutcome:
    """Cosine similarity of the two unfiltered definition embeddings."""
    return _definition_cosine(table, lexicon, pair, stopwords=None)


def definition_content_similarity(
    table: EmbeddingTable,
    lexicon: DefinitionLexicon,
    stopwords: frozenset[str] | set[str],
    pair: LexemePair,
) -> ScoreOutcome:
    """Cosine similarity of the two stop-word-filtered definition embeddings."""
    return _definition_cosine(table, lexicon, pair, stopwords=stopwords)


def _definition_cosine(table, lexicon, pair, stopwords) -> ScoreOutcome:
    left, reason = definition_embedding(lexicon, table, pair.left, stopwords)
    if left is None:
        return ScoreOutcome.unscorable(reason)
    right, reason = definition_embedding(lexicon, table, pair.right, stopwords)
    if right is None:
        return ScoreOutcome.unscorable(reason)
    try:
        return ScoreOutcome.scored(cosine(left, right))
    except ZeroNormError:
        return ScoreOutcome.unscorable(ZERO_NORM)


def score_pair(
    method: ScoreMethod,
    table: EmbeddingTable,
    lexicon: DefinitionLexicon | None,
    stopwords: frozenset[str] | set[str] | None,
    pair: LexemePair,
) -> ScoreOutcome:
    """Dispatch to the scorer for ``method``.

    ``lexicon`` is required for the definition-based methods; a missing
    stop-word set for definition content similarity degrades to the empty
    set, which makes it identical to definition similarity.
    """
    if method is ScoreMethod.WORD_SIMILARITY:
        return word_similarity(table, pair)
    if lexicon is None:
        raise ValueError(f"method {method.value!r} needs a definition lexicon")
    if method is ScoreMethod.DEFINITION_SIMILARITY:
        return definition_similarity(table, lexicon, pair)
    return definition_content_similarity(table, lexicon, stopwords or frozenset(), pair)


def classify(outcome: ScoreOutcome, threshold: float) -> Judgement:
    """Strictly-below-threshold rule: value < threshold means compound.

    The boundary value itself is NOT_COMPOUND; an absent value is
    UNSCORABLE. The threshold must lie in [-1, 1].
    """
    if not -1.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [-1, 1]")
    if outcome.value is None:
        return Judgement.UNSCORABLE
    return Judgement.COMPOUND if outcome.value < threshold else Judgement.NOT_COMPOUND


__all__ = [
    "LexemePair",
    "ScoreMethod",
    "Judgement",
    "ScoreOutcome",
    "word_similarity",
    "definition_similarity",
    "definition_content_similarity",
    "score_pair",
    "classify",
    "LEFT_OOV",
    "RIGHT_OOV",
    "ZERO_NORM",
    "UNSCORABLE_REASONS",
]
