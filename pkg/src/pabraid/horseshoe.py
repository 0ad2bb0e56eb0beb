"""Binary codes of periodic horseshoe orbits and their braid family parameters.

A period-k orbit of the horseshoe map is recorded by its binary itinerary;
cyclic rotations of the word describe the same orbit.  Two code shapes
correspond to the sigma braid family with parameters ``(m, n)``, ``n >= m+2``:

* form A: ``1 0^(n-1) 1 0^m``
* form B: ``1 0^(n-1) 1 0^(m-1) 1``

Both have length ``m + n + 1``, the strand count of the braid.  Codes outside
these shapes (for example the period-8 word 10010110) belong to other braid
types and are reported as unmatched.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CodeOrbit:
    word: str
    period: int
    canonical: str
    primitive: bool


@dataclass(frozen=True)
class FamilyMatch:
    m: int
    n: int
    form: str  # "A" or "B"


def _validate_binary(word: str) -> None:
    if not word:
        raise ValueError("code must be a nonempty binary string")
    if any(ch not in "01" for ch in word):
        raise ValueError(f"code must contain only 0 and 1, got {word!r}")


def _rotations(word: str):
    doubled = word + word
    for i in range(len(word)):
        yield doubled[i : i + len(word)]


def canonicalize(word: str) -> CodeOrbit:
    """Normalise a code to the lexicographically least rotation.

    The period is the raw word length; words that are a repetition of a
    shorter block are flagged as non-primitive rather than rejected.
    """
    _validate_binary(word)
    canonical = min(_rotations(word))
    primitive = (word + word).find(word, 1) == len(word)
    return CodeOrbit(word, len(word), canonical, primitive)


def _parse_form_a(rotation: str) -> FamilyMatch | None:
    # 1 0^(n-1) 1 0^m with m >= 1, n >= m+2
    if not rotation.startswith("1"):
        return None
    rest = rotation[1:]
    second = rest.find("1")
    if second < 0 or "1" in rest[second + 1 :]:
        return None
    n = second + 1
    m = len(rest) - second - 1
    if m >= 1 and n >= m + 2:
        return FamilyMatch(m, n, "A")
    return None


def _parse_form_b(rotation: str) -> FamilyMatch | None:
    # 1 0^(n-1) 1 0^(m-1) 1 with m >= 1, n >= m+2
    if not rotation.startswith("1") or not rotation.endswith("1") or len(rotation) < 3:
        return None
    body = rotation[1:-1]
    second = body.find("1")
    if second < 0 or "1" in body[second + 1 :]:
        return None
    n = second + 1
    m = len(body) - second
    if m >= 1 and n >= m + 2:
        return FamilyMatch(m, n, "B")
    return None


def code_to_family(word: str) -> FamilyMatch | None:
    """Match the orbit code (up to rotation) against the two family shapes.

    Form A is tried across every rotation before form B, so a word that
    somehow fits both resolves deterministically.  Returns None when no
    rotation matches; that is a value, not an error.
    """
    _validate_binary(word)
    for parser in (_parse_form_a, _parse_form_b):
        for rotation in _rotations(word):
            match = parser(rotation)
            if match is not None:
                return match
    return None


def family_to_codes(m: int, n: int) -> tuple[str, str]:
    """The form-A and form-B codes of the sigma member ``(m, n)``, ``n >= m+2``.

    Both have length ``m + n + 1`` and round-trip through
    :func:`code_to_family`.
    """
    if m < 1 or n < m + 2:
        raise ValueError("codes exist for m >= 1 and n >= m + 2")
    form_a = "1" + "0" * (n - 1) + "1" + "0" * m
    form_b = "1" + "0" * (n - 1) + "1" + "0" * (m - 1) + "1"
    return form_a, form_b
