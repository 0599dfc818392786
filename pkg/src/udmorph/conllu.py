"""CoNLL-U parsing, serialization and validation.

The data model keeps the morpheme-segmented LEMMA and XPOS columns as raw
`+`-joined strings (the serialization authority) and derives aligned
(surface, tag) morpheme pairs on demand.  Multiword-token ranges (`1-2`)
and empty nodes (`1.1`) are carried verbatim and excluded from the token
list and from all structural checks.
"""

from __future__ import annotations

import io
import logging
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple, TextIO

logger = logging.getLogger("udmorph")

COLUMN_COUNT = 10

# Sejong morpheme tag inventory (closed set).
SEJONG_TAGS = frozenset(
    """
    NNG NNP NNB NP NR VV VA VX VCP VCN MM MAG MAJ IC
    JKS JKC JKG JKO JKB JKV JKQ JX JC
    EP EF EC ETN ETM XPN XSN XSV XSA XR
    SF SP SS SE SO SW SL SH SN NA
    """.split()
)

UPOS_TAGS = frozenset(
    "NOUN PROPN VERB ADJ ADV PRON DET NUM AUX CCONJ SCONJ ADP PART INTJ PUNCT SYM X".split()
)

# UPOS derived from the word's lexical base morpheme.  Derivational suffixes
# (XSN/XSV/XSA) shift the category of whatever they attach to, so the scan in
# canonical_upos() folds them in after the base is found.  XR behaves as a
# noun fragment and therefore seeds a NOUN base.
CANONICAL_UPOS = {
    "NNG": "NOUN",
    "NNB": "NOUN",
    "NR": "NOUN",
    "NNP": "PROPN",
    "NP": "PRON",
    "VV": "VERB",
    "VA": "ADJ",
    "VX": "AUX",
    "VCP": "ADJ",
    "VCN": "ADJ",
    "MM": "DET",
    "MAG": "ADV",
    "MAJ": "ADV",
    "IC": "INTJ",
    "SN": "NUM",
    "SF": "PUNCT",
    "SP": "PUNCT",
    "SS": "PUNCT",
    "SE": "PUNCT",
    "SO": "PUNCT",
    "SW": "SYM",
    "SL": "X",
    "SH": "X",
    "XR": "NOUN",
}

_DERIVED_UPOS = {"XSN": "NOUN", "XSV": "VERB", "XSA": "ADJ"}

_FEAT_KEY_RE = re.compile(r"[A-Za-z][A-Za-z0-9\[\]]*\Z")
_FEAT_VALUE_RE = re.compile(r"[A-Za-z0-9]+\Z")
_WORD_ID_RE = re.compile(r"[1-9][0-9]*\Z")
_RANGE_ID_RE = re.compile(r"[0-9]+-[0-9]+\Z")
_EMPTY_ID_RE = re.compile(r"[0-9]+\.[0-9]+\Z")


class ConlluError(ValueError):
    """Malformed CoNLL-U input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FeatureBag:
    """Immutable set of feature key -> values assignments.

    Values are stored deduplicated and canonically sorted, so serialization
    is a fixed point: keys in case-insensitive alphabetical order joined by
    `|`, multiple values per key joined by `,`, the empty bag as `_`.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: dict[str, Iterable[str]] | None = None):
        items = []
        for key in sorted(entries or (), key=lambda k: (k.lower(), k)):
            values = tuple(sorted(set(entries[key]), key=lambda v: (v.lower(), v)))
            if values:
                items.append((key, values))
        object.__setattr__(self, "_entries", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("FeatureBag is immutable")

    def __reduce__(self):
        return (FeatureBag, (dict(self._entries),))

    def items(self) -> tuple[tuple[str, tuple[str, ...]], ...]:
        return self._entries

    def keys(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self._entries)

    def get(self, key: str) -> tuple[str, ...]:
        for k, values in self._entries:
            if k == key:
                return values
        return ()

    def __contains__(self, key: str) -> bool:
        return any(k == key for k, _ in self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, FeatureBag) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"FeatureBag({dict((k, list(v)) for k, v in self._entries)!r})"

    def to_conllu(self) -> str:
        if not self._entries:
            return "_"
        return "|".join(f"{k}={','.join(v)}" for k, v in self._entries)

    @classmethod
    def from_conllu(cls, text: str, line: int | None = None) -> "FeatureBag":
        if text in ("", "_"):
            return cls()
        entries: dict[str, list[str]] = {}
        for item in text.split("|"):
            key, sep, value = item.partition("=")
            if not sep or not key or not value:
                raise ConlluError(f"invalid FEATS syntax: {item!r}", line)
            if not _FEAT_KEY_RE.match(key):
                raise ConlluError(f"invalid FEATS key: {key!r}", line)
            for v in value.split(","):
                if not _FEAT_VALUE_RE.match(v):
                    raise ConlluError(f"invalid FEATS value: {v!r}", line)
                entries.setdefault(key, []).append(v)
        return cls(entries)


class Morpheme(NamedTuple):
    surface: str
    tag: str


def _split_plus(raw: str) -> tuple[str, ...]:
    if raw == "":
        return ()
    if raw == "+":
        # a literal plus-sign token cannot be a segment boundary
        return ("+",)
    return tuple(raw.split("+"))


@dataclass(frozen=True)
class Token:
    """One syntactic word.  `lemma` and `xpos` hold raw `+`-joined columns."""

    id: int
    form: str
    lemma: str
    xpos: str
    upos: str
    feats: FeatureBag = field(default_factory=FeatureBag)
    head: int | None = None
    deprel: str = ""
    deps: str = "_"
    misc: str = "_"

    @property
    def lemma_segments(self) -> tuple[str, ...]:
        return _split_plus(self.lemma)

    @property
    def tag_codes(self) -> tuple[str, ...]:
        return _split_plus(self.xpos)

    @property
    def morphemes(self) -> tuple[Morpheme, ...]:
        segments = self.lemma_segments
        tags = self.tag_codes
        if len(segments) != len(tags):
            raise ValueError(
                f"morpheme/tag misalignment: {len(segments)} lemma segment(s) "
                f"vs {len(tags)} XPOS tag(s) in token {self.id} ({self.form!r})"
            )
        return tuple(Morpheme(s, t) for s, t in zip(segments, tags))


@dataclass(frozen=True)
class Sentence:
    """Comments (verbatim), syntactic words, and passthrough rows.

    `extras` holds multiword-token / empty-node lines as (index, raw line)
    where index is the position in `tokens` before which the line sits.
    """

    comments: tuple[str, ...] = ()
    tokens: tuple[Token, ...] = ()
    extras: tuple[tuple[int, str], ...] = ()

    def _comment_value(self, key: str) -> str | None:
        prefix = f"# {key} ="
        for line in self.comments:
            if line.startswith(prefix):
                return line[len(prefix):].strip()
        return None

    @property
    def sent_id(self) -> str | None:
        return self._comment_value("sent_id")

    @property
    def text(self) -> str | None:
        return self._comment_value("text")


@dataclass(frozen=True)
class Diagnostic:
    sent_id: str
    token_id: int | None
    rule: str
    message: str

    def __str__(self) -> str:
        where = self.sent_id if self.token_id is None else f"{self.sent_id}:{self.token_id}"
        return f"[{self.rule}] {where}: {self.message}"


def canonical_upos(morphemes: Iterable[Morpheme]) -> str | None:
    """UPOS of the word's lexical base, folding in derivational suffixes."""
    base = None
    for m in morphemes:
        if base is None:
            base = CANONICAL_UPOS.get(m.tag) or _DERIVED_UPOS.get(m.tag)
        elif m.tag in _DERIVED_UPOS:
            base = _DERIVED_UPOS[m.tag]
    return base


def _parse_token(columns: list[str], lineno: int, expected_id: int, lenient: bool) -> Token:
    raw_id, form, lemma, upos, xpos, feats, head, deprel, deps, misc = columns
    token_id = int(raw_id)
    if token_id != expected_id:
        raise ConlluError(
            f"non-contiguous token ids: expected {expected_id}, got {token_id}", lineno
        )

    lemma = "" if lemma == "_" else lemma
    xpos = "" if xpos == "_" else xpos
    tags = []
    for code in _split_plus(xpos):
        if code not in SEJONG_TAGS:
            if not lenient:
                raise ConlluError(f"unknown XPOS tag {code!r}", lineno)
            logger.warning("line %d: unknown XPOS tag %r mapped to NA", lineno, code)
            code = "NA"
        tags.append(code)
    xpos = "+".join(tags)

    n_segments = len(_split_plus(lemma))
    if n_segments != len(tags) and not (lenient and (n_segments == 0 or not tags)):
        raise ConlluError(
            f"morpheme/tag misalignment: {n_segments} lemma segment(s) "
            f"vs {len(tags)} XPOS tag(s)",
            lineno,
        )

    if head == "_":
        head_value: int | None = None
    elif head.isdigit():
        head_value = int(head)
    else:
        raise ConlluError(f"invalid HEAD value {head!r}", lineno)

    return Token(
        id=token_id,
        form=form,
        lemma=lemma,
        xpos=xpos,
        upos="" if upos == "_" else upos,
        feats=FeatureBag.from_conllu(feats, lineno),
        head=head_value,
        deprel="" if deprel == "_" else deprel,
        deps=deps,
        misc=misc,
    )


def iter_sentences(
    source: str | TextIO, *, lenient: bool = False, strip_bom: bool = False
) -> Iterator[Sentence]:
    """Stream sentences from CoNLL-U text; memory stays bounded per sentence."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    comments: list[str] = []
    tokens: list[Token] = []
    extras: list[tuple[int, str]] = []

    def flush(lineno: int) -> Sentence:
        if not tokens:
            raise ConlluError("sentence without token lines", lineno)
        sentence = Sentence(tuple(comments), tuple(tokens), tuple(extras))
        comments.clear()
        tokens.clear()
        extras.clear()
        return sentence

    lineno = 0
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if lineno == 1 and strip_bom and line.startswith("﻿"):
            line = line.lstrip("﻿")
        if line == "":
            if comments or tokens or extras:
                yield flush(lineno)
            continue
        if line.startswith("#"):
            if tokens or extras:
                raise ConlluError("comment line inside a sentence", lineno)
            comments.append(line)
            continue
        columns = line.split("\t")
        if len(columns) != COLUMN_COUNT:
            raise ConlluError(
                f"expected {COLUMN_COUNT} tab-separated columns, got {len(columns)}", lineno
            )
        raw_id = columns[0]
        if _RANGE_ID_RE.match(raw_id) or _EMPTY_ID_RE.match(raw_id):
            extras.append((len(tokens), line))
        elif _WORD_ID_RE.match(raw_id):
            tokens.append(_parse_token(columns, lineno, len(tokens) + 1, lenient))
        else:
            raise ConlluError(f"invalid token id {raw_id!r}", lineno)

    if comments or tokens or extras:
        yield flush(lineno + 1)


def parse_conllu(
    source: str | TextIO, *, lenient: bool = False, strip_bom: bool = False
) -> list[Sentence]:
    return list(iter_sentences(source, lenient=lenient, strip_bom=strip_bom))


def token_to_line(token: Token) -> str:
    return "\t".join(
        (
            str(token.id),
            token.form,
            token.lemma or "_",
            token.upos or "_",
            token.xpos or "_",
            token.feats.to_conllu(),
            "_" if token.head is None else str(token.head),
            token.deprel or "_",
            token.deps,
            token.misc,
        )
    )


def sentence_to_lines(sentence: Sentence) -> Iterator[str]:
    yield from sentence.comments
    extras = dict()
    for index, raw in sentence.extras:
        extras.setdefault(index, []).append(raw)
    for i, token in enumerate(sentence.tokens):
        yield from extras.get(i, ())
        yield token_to_line(token)
    yield from extras.get(len(sentence.tokens), ())


def serialize_conllu(sentences: Iterable[Sentence]) -> str:
    out = io.StringIO()
    write_conllu(sentences, out)
    return out.getvalue()


def write_conllu(sentences: Iterable[Sentence], sink: TextIO) -> None:
    for sentence in sentences:
        for line in sentence_to_lines(sentence):
            sink.write(line + "\n")
        sink.write("\n")


def _check_token(sid: str, token: Token, report) -> None:
    segments = token.lemma_segments
    tags = token.tag_codes
    if len(segments) != len(tags):
        report(
            token.id,
            "morph-alignment",
            f"morpheme/tag misalignment: {len(segments)} lemma segment(s) "
            f"vs {len(tags)} XPOS tag(s)",
        )
    for code in tags:
        if code not in SEJONG_TAGS:
            report(token.id, "xpos-tag", f"unknown XPOS tag {code!r}")
    for surface in segments:
        if surface == "" or "+" in surface or "\t" in surface:
            report(token.id, "morpheme-surface", f"invalid morpheme surface {surface!r}")
    if token.upos not in UPOS_TAGS:
        report(token.id, "upos-value", f"invalid UPOS {token.upos!r}")
    for key, values in token.feats.items():
        if not _FEAT_KEY_RE.match(key):
            report(token.id, "feats-syntax", f"invalid feature key {key!r}")
        for v in values:
            if not _FEAT_VALUE_RE.match(v):
                report(token.id, "feats-syntax", f"invalid feature value {v!r}")


def validate(sentences: Iterable[Sentence]) -> list[Diagnostic]:
    """Check every sentence/token/feature invariant; diagnostics, not raises."""
    diagnostics: list[Diagnostic] = []
    for index, sentence in enumerate(sentences, start=1):
        sid = sentence.sent_id or str(index)

        def report(token_id: int | None, rule: str, message: str, _sid=sid):
            diagnostics.append(Diagnostic(_sid, token_id, rule, message))

        n = len(sentence.tokens)
        for position, token in enumerate(sentence.tokens, start=1):
            if token.id != position:
                report(token.id, "id-sequence", f"expected id {position}, got {token.id}")
            _check_token(sid, token, report)

        roots = [t for t in sentence.tokens if t.head == 0]
        if n and not roots:
            report(None, "root-count", "no root token (head == 0)")
        elif len(roots) > 1:
            report(None, "root-count", f"multiple roots: tokens {[t.id for t in roots]}")

        for token in sentence.tokens:
            if token.head is None:
                report(token.id, "head-missing", "missing HEAD value")
            elif token.head > n:
                report(token.id, "head-range", f"head {token.head} outside 0..{n}")
            if token.head == 0 and token.deprel != "root":
                report(token.id, "root-deprel", f"head 0 requires deprel 'root', got {token.deprel!r}")
            if token.head not in (0, None) and token.deprel == "root":
                report(token.id, "root-deprel", f"deprel 'root' requires head 0, got {token.head}")
            if token.head not in (0, None) and not token.deprel:
                report(token.id, "deprel-missing", "missing DEPREL value")

        heads = {t.id: t.head for t in sentence.tokens}
        for token in sentence.tokens:
            seen = set()
            node: int | None = token.id
            while node not in (0, None):
                if node in seen:
                    report(token.id, "head-cycle", f"head cycle through token {node}")
                    break
                seen.add(node)
                node = heads.get(node)
    return diagnostics
