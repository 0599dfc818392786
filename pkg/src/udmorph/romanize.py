"""Revised Romanization of hangul, syllable by syllable.

Used to transcribe verbal-ending surfaces into feature values (e.g.
서 -> "seo", 고 -> "go", 으면 -> "eumyeon").  The transliteration is
letter-faithful: no sound-change (sandhi) rules are applied, which keeps
the mapping deterministic and invertible enough for annotation purposes.
Isolated compatibility jamo (ㄴ, ㄹ, ...) romanize as syllable codas,
matching their role in contracted endings such as ㄴ다 -> "nda".
"""

from __future__ import annotations

_ONSETS = (
    "g", "kk", "n", "d", "tt", "r", "m", "b", "pp",
    "s", "ss", "", "j", "jj", "ch", "k", "t", "p", "h",
)

_VOWELS = (
    "a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa",
    "wae", "oe", "yo", "u", "wo", "we", "wi", "yu", "eu", "ui", "i",
)

_CODAS = (
    "", "k", "k", "k", "n", "n", "n", "t", "l", "k", "m",
    "p", "l", "l", "p", "l", "m", "p", "p", "t", "t",
    "ng", "t", "t", "k", "t", "p", "t",
)

# Compatibility jamo block (U+3131..U+3163): consonants romanized as codas,
# vowels as their medial values.
_COMPAT_CONSONANTS = {
    "ㄱ": "k", "ㄲ": "kk", "ㄳ": "k", "ㄴ": "n", "ㄵ": "n", "ㄶ": "n",
    "ㄷ": "t", "ㄸ": "tt", "ㄹ": "l", "ㄺ": "k", "ㄻ": "m", "ㄼ": "l",
    "ㄽ": "l", "ㄾ": "l", "ㄿ": "p", "ㅀ": "l", "ㅁ": "m", "ㅂ": "p",
    "ㅄ": "p", "ㅅ": "s", "ㅆ": "ss", "ㅇ": "ng", "ㅈ": "j", "ㅉ": "jj",
    "ㅊ": "ch", "ㅋ": "k", "ㅌ": "t", "ㅍ": "p", "ㅎ": "h",
}

_COMPAT_VOWEL_BASE = 0x314F  # ㅏ

_SYLLABLE_BASE = 0xAC00
_SYLLABLE_COUNT = 11172


def romanize(text: str) -> str:
    """Romanize hangul syllables and jamo; other characters pass through."""
    parts: list[str] = []
    for ch in text:
        code = ord(ch)
        if 0 <= code - _SYLLABLE_BASE < _SYLLABLE_COUNT:
            offset = code - _SYLLABLE_BASE
            onset, rest = divmod(offset, 21 * 28)
            vowel, coda = divmod(rest, 28)
            parts.append(_ONSETS[onset] + _VOWELS[vowel] + _CODAS[coda])
        elif ch in _COMPAT_CONSONANTS:
            parts.append(_COMPAT_CONSONANTS[ch])
        elif 0 <= code - _COMPAT_VOWEL_BASE < 21:
            parts.append(_VOWELS[code - _COMPAT_VOWEL_BASE])
        else:
            parts.append(ch)
    return "".join(parts)
