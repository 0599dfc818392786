"""Deterministic morpheme-pattern rules assigning morphosyntactic features.

Rules live in a line-oriented pack file (see `load_rule_pack`) and fire on
(surface, tag) morpheme evidence only, never on existing features, which
makes feature assignment a pure, idempotent function of the sentence and
the pack.  Application runs in two passes:

pass 1 - word-internal rules (no cross-token context); per feature key the
         highest-priority matching rule wins.
pass 2 - periphrastic rules with a lookahead window of two syntactic words;
         their emissions extend the pass-1 bag and never displace it (a key
         already present gains values instead of being overwritten).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from importlib import resources
from typing import Iterable, TextIO

from .conllu import (
    CANONICAL_UPOS,
    SEJONG_TAGS,
    FeatureBag,
    Morpheme,
    Sentence,
    Token,
)
from .romanize import romanize

PACK_HEADER = "#unidive-rules v1"

FEATURE_KEYS = frozenset(
    (
        "Aspect",
        "Case",
        "Evident",
        "Mood",
        "NumType",
        "Number",
        "Person",
        "Person[psor]",
        "Polite",
        "PronType",
        "Tense",
        "VerbForm",
        "Voice",
    )
)

POSITIONS = ("any", "initial", "final")

_VOICE_PRIORITY_BASE = 9000


class RulePackError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class MorphPattern:
    """Matches one morpheme by surface alternation and/or tag alternation."""

    surfaces: frozenset[str] | None = None  # None matches any surface
    tags: frozenset[str] | None = None      # None matches any tag

    def matches(self, morpheme: Morpheme) -> bool:
        if self.surfaces is not None and morpheme.surface not in self.surfaces:
            return False
        if self.tags is not None and morpheme.tag not in self.tags:
            return False
        return True


@dataclass(frozen=True)
class Rule:
    id: str
    priority: int
    tags: frozenset[str]
    surfaces: frozenset[str] | None = None
    position: str = "any"
    prev: MorphPattern | None = None
    context: tuple[MorphPattern, ...] = ()
    emits: tuple[tuple[str, str], ...] = ()

    @property
    def pattern_key(self):
        return (self.tags, self.surfaces, self.position, self.prev, self.context)

    def matches_word(self, morphemes: tuple[Morpheme, ...]) -> bool:
        last = len(morphemes) - 1
        for i, m in enumerate(morphemes):
            if m.tag not in self.tags:
                continue
            if self.surfaces is not None and m.surface not in self.surfaces:
                continue
            if self.position == "initial" and i != 0:
                continue
            if self.position == "final" and i != last:
                continue
            if self.prev is not None and (i == 0 or not self.prev.matches(morphemes[i - 1])):
                continue
            return True
        return False


@dataclass(frozen=True)
class RulePack:
    language: str
    rules: tuple[Rule, ...]
    functional_words: dict[str, frozenset[str]]
    voice_lexicon: dict[str, str]
    conjunctive_adverbs: frozenset[str]


def _parse_alternation(text: str) -> frozenset[str] | None:
    if text == "*":
        return None
    return frozenset(text.split("|"))


def _parse_morph_pattern(text: str, line: int) -> MorphPattern:
    surface, sep, tag = text.partition("/")
    if not sep:
        raise RulePackError(f"context pattern {text!r} must be <surface>/<tag>", line)
    tags = _parse_alternation(tag)
    if tags is not None:
        for code in tags:
            if code not in SEJONG_TAGS:
                raise RulePackError(f"unknown tag code {code!r}", line)
    return MorphPattern(_parse_alternation(surface), tags)


def _parse_rule_line(body: str, line: int) -> Rule:
    head, sep, emit_text = body.partition("=>")
    if not sep:
        raise RulePackError("rule line missing '=>'", line)
    fields = head.split()
    if len(fields) < 3:
        raise RulePackError("rule line needs '<id> <priority> <field>...'", line)
    rule_id = fields[0]
    try:
        priority = int(fields[1])
    except ValueError:
        raise RulePackError(f"priority must be an integer, got {fields[1]!r}", line)

    tags = surfaces = None
    position = "any"
    prev = None
    context: tuple[MorphPattern, ...] = ()
    for item in fields[2:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise RulePackError(f"malformed field {item!r}", line)
        if key == "tag":
            tags = _parse_alternation(value)
            if tags is None:
                raise RulePackError("anchor tag may not be '*'", line)
            for code in tags:
                if code not in SEJONG_TAGS:
                    raise RulePackError(f"unknown tag code {code!r}", line)
        elif key == "surface":
            surfaces = _parse_alternation(value)
        elif key == "pos":
            if value not in POSITIONS:
                raise RulePackError(f"position must be one of {POSITIONS}, got {value!r}", line)
            position = value
        elif key == "prev":
            prev = _parse_morph_pattern(value, line)
        elif key == "next":
            slots = value.split(",")
            if len(slots) > 2:
                raise RulePackError("lookahead limited to two tokens", line)
            context = tuple(_parse_morph_pattern(slot, line) for slot in slots)
        else:
            raise RulePackError(f"unknown rule field {key!r}", line)
    if tags is None:
        raise RulePackError("rule is missing the required tag= field", line)

    emits = []
    for item in emit_text.split(","):
        item = item.strip()
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise RulePackError(f"malformed emission {item!r}", line)
        if key not in FEATURE_KEYS:
            raise RulePackError(f"unknown feature key {key!r}", line)
        emits.append((key, value))
    if not emits:
        raise RulePackError("rule emits nothing", line)

    return Rule(
        id=rule_id,
        priority=priority,
        tags=tags,
        surfaces=surfaces,
        position=position,
        prev=prev,
        context=context,
        emits=tuple(emits),
    )


def _compile_voice_rules(voice_lexicon: dict[str, str]) -> list[Rule]:
    rules = []
    for i, (key, value) in enumerate(sorted(voice_lexicon.items())):
        priority = _VOICE_PRIORITY_BASE + i
        if "+" in key:
            stem, suffix = key.split("+", 1)
            rule = Rule(
                id=f"voice:{key}",
                priority=priority,
                tags=frozenset({"XSV", "XSA"}),
                surfaces=frozenset({suffix}),
                prev=MorphPattern(frozenset({stem}), frozenset({"VV", "VA", "VX", "NNG"})),
                emits=(("Voice", value),),
            )
        else:
            rule = Rule(
                id=f"voice:{key}",
                priority=priority,
                tags=frozenset({"VV", "VX"}),
                surfaces=frozenset({key}),
                position="initial",
                emits=(("Voice", value),),
            )
        rules.append(rule)
    return rules


def load_rule_pack(source: str | TextIO) -> RulePack:
    """Parse and statically check a rule-pack file."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    language = ""
    rules: list[Rule] = []
    functional: dict[str, set[str]] = {}
    voice: dict[str, str] = {}
    conjadv: set[str] = set()

    first = stream.readline().rstrip("\n")
    if first.strip() != PACK_HEADER:
        raise RulePackError(f"missing header {PACK_HEADER!r}", 1)

    for line_no, raw in enumerate(stream, start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        directive, _, body = line.partition(" ")
        body = body.strip()
        if directive == "language":
            language = body
        elif directive == "rule":
            rules.append(_parse_rule_line(body, line_no))
        elif directive == "func":
            parts = body.split()
            if len(parts) < 2:
                raise RulePackError("func needs '<class> <word>...'", line_no)
            functional.setdefault(parts[0], set()).update(parts[1:])
        elif directive == "voice":
            parts = body.split()
            if len(parts) != 2:
                raise RulePackError("voice needs '<stem[+suffix]> <value>'", line_no)
            if parts[0] in voice:
                raise RulePackError(f"duplicate voice entry {parts[0]!r}", line_no)
            voice[parts[0]] = parts[1]
        elif directive == "conjadv":
            conjadv.update(body.split())
        else:
            raise RulePackError(f"unknown directive {directive!r}", line_no)

    rules.extend(_compile_voice_rules(voice))
    if not rules:
        raise RulePackError("no rules")

    seen_ids: dict[str, Rule] = {}
    by_pattern: dict[tuple, list[Rule]] = {}
    for rule in rules:
        if rule.id in seen_ids:
            raise RulePackError(f"duplicate rule id {rule.id!r}")
        seen_ids[rule.id] = rule
        by_pattern.setdefault(rule.pattern_key, []).append(rule)
    for group in by_pattern.values():
        priorities: dict[int, Rule] = {}
        for rule in group:
            clash = priorities.get(rule.priority)
            if clash is not None:
                raise RulePackError(
                    f"rules {clash.id!r} and {rule.id!r} share a pattern and priority {rule.priority}"
                )
            priorities[rule.priority] = rule

    return RulePack(
        language=language,
        rules=tuple(rules),
        functional_words={k: frozenset(v) for k, v in functional.items()},
        voice_lexicon=dict(voice),
        conjunctive_adverbs=frozenset(conjadv),
    )


def load_default_pack(language: str = "ko") -> RulePack:
    text = resources.files("udmorph.data").joinpath(f"{language}.rules").read_text("utf-8")
    return load_rule_pack(text)


def _first_morpheme(token: Token) -> Morpheme | None:
    morphemes = token.morphemes
    return morphemes[0] if morphemes else None


def _context_matches(rule: Rule, tokens: tuple[Token, ...], index: int) -> bool:
    window = [
        m for m in (_first_morpheme(t) for t in tokens[index + 1 : index + 3]) if m is not None
    ]
    if len(rule.context) == 1:
        return any(rule.context[0].matches(m) for m in window)
    if len(rule.context) == 2:
        return (
            len(window) == 2
            and rule.context[0].matches(window[0])
            and rule.context[1].matches(window[1])
        )
    return True


def _resolve(fired: list[Rule]) -> dict[str, tuple[str, ...]]:
    """Per feature key, the highest-priority rule wins (ties break on id)."""
    winners: dict[str, Rule] = {}
    for rule in sorted(fired, key=lambda r: (-r.priority, r.id)):
        for key, _ in rule.emits:
            winners.setdefault(key, rule)
    return {
        key: tuple(v for k, v in rule.emits if k == key)
        for key, rule in winners.items()
    }


def assign_token_features(token: Token, pack: RulePack, sentence: Sentence, index: int) -> FeatureBag:
    morphemes = token.morphemes
    fired_internal = [
        r for r in pack.rules if not r.context and r.matches_word(morphemes)
    ]
    bag = {k: set(v) for k, v in _resolve(fired_internal).items()}

    fired_context = [
        r
        for r in pack.rules
        if r.context and r.matches_word(morphemes) and _context_matches(r, sentence.tokens, index)
    ]
    for key, values in _resolve(fired_context).items():
        bag.setdefault(key, set()).update(values)
    return FeatureBag(bag)


def assign_features(sentence: Sentence, pack: RulePack) -> Sentence:
    """Replace every token's feature bag with the rules' verdict."""
    tokens = tuple(
        replace(token, feats=assign_token_features(token, pack, sentence, i))
        for i, token in enumerate(sentence.tokens)
    )
    return replace(sentence, tokens=tokens)


def transcribe_ending(token: Token) -> tuple[str, str] | None:
    """Surface transcription for otherwise featureless conjunctive endings."""
    morphemes = token.morphemes
    if not morphemes or morphemes[-1].tag != "EC":
        return None
    if token.feats:
        return None
    return ("Case", romanize(morphemes[-1].surface))


def tag_functional(token: Token, pack: RulePack) -> bool:
    """True iff the token is a bare functional word from the pack's lists."""
    morphemes = token.morphemes
    if len(morphemes) != 1:
        return False
    upos_class = CANONICAL_UPOS.get(morphemes[0].tag)
    if upos_class is None:
        return False
    return token.form in pack.functional_words.get(upos_class, frozenset())


def _misc_with_flag(misc: str, key: str, value: str) -> str:
    items = [] if misc in ("", "_") else misc.split("|")
    entry = f"{key}={value}"
    if entry in items:
        return misc
    items = [i for i in items if not i.startswith(f"{key}=")]
    items.append(entry)
    return "|".join(items)


def enrich_sentence(sentence: Sentence, pack: RulePack) -> Sentence:
    """Full enrichment: rule features, ending transcription, functional flags."""
    enriched = assign_features(sentence, pack)
    tokens = []
    for token in enriched.tokens:
        feats = token.feats
        transcription = transcribe_ending(token)
        if transcription is not None:
            feats = FeatureBag({transcription[0]: (transcription[1],)})
        misc = token.misc
        if tag_functional(token, pack):
            misc = _misc_with_flag(misc, "Functional", "Yes")
        tokens.append(replace(token, feats=feats, misc=misc))
    return replace(enriched, tokens=tuple(tokens))
