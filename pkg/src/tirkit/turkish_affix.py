"""Rule-based suffix stripper for Turkish nominal inflection.

Strips the chained noun and copular endings of Turkish (plural,
possessive, case, and "to be" forms: ``evlerimizden`` -> ``ev``) by
scanning right to left.  Every candidate suffix is validated against
word-level vowel harmony and, where the suffix attaches with a buffer
letter (y/n/s or a high vowel), against the shape of the stem it would
leave behind.  After stripping, softened final stops are restored
(``kitab`` -> ``kitap``) and stems left on a bare ``d``/``g`` get their
harmony vowel back.

Derivational morphology is out of scope: the stemmer reduces inflected
forms of one lexeme to a common stem, it does not find dictionary roots.

The suffix inventory and letter classes load from a versioned data file
(see :data:`RULES_FILE`); the stripping order and suffix chaining are
the engine below.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

RULES_FILE = "turkish_affix_rules_v1.txt"

_RESERVED_STEMS = frozenset({"ad", "soyad"})


@dataclass(frozen=True)
class SuffixFamily:
    """One logical suffix with its surface variants and validation flags."""

    name: str
    forms: tuple[str, ...]  # longest first
    harmony: bool
    attach: str  # "none", "y", "n", "s" or "U"


@dataclass(frozen=True)
class AffixRules:
    """Letter classes and suffix inventory parsed from the rules file."""

    version: int
    vowels: frozenset[str]
    high_vowels: frozenset[str]
    harmony_classes: dict[str, frozenset[str]]
    restore_final: dict[str, str]
    reappend: dict[str, str]
    families: dict[str, SuffixFamily]

    def family(self, name: str) -> SuffixFamily:
        return self.families[name]


class AffixRuleError(ValueError):
    """Raised when the affix rules file is malformed or incomplete."""


def load_rules(text: str | None = None) -> AffixRules:
    """Parse affix rules from *text*, or from the packaged rules file."""
    if text is None:
        text = (
            resources.files("tirkit").joinpath("data", RULES_FILE).read_text("utf-8")
        )
    version = None
    vowels: str | None = None
    high_vowels: str | None = None
    harmony: dict[str, frozenset[str]] = {}
    restore: dict[str, str] = {}
    reappend: dict[str, str] = {}
    families: dict[str, SuffixFamily] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = dict(part.split("=", 1) for part in line.split() if "=" in part)
        if "suffix" in fields:
            try:
                name = fields["suffix"]
                forms = tuple(
                    sorted(fields["forms"].split(","), key=len, reverse=True)
                )
                fam = SuffixFamily(
                    name=name,
                    forms=forms,
                    harmony=fields["harmony"] == "yes",
                    attach=fields["attach"],
                )
            except KeyError as exc:
                raise AffixRuleError(f"line {lineno}: missing field {exc}") from exc
            if fam.attach not in ("none", "y", "n", "s", "U"):
                raise AffixRuleError(f"line {lineno}: bad attach {fam.attach!r}")
            families[name] = fam
        elif "version" in fields:
            version = int(fields["version"])
        elif "vowels" in fields:
            vowels = fields["vowels"]
        elif "high_vowels" in fields:
            high_vowels = fields["high_vowels"]
        elif "harmony" in fields:
            v, allowed = fields["harmony"].split(":", 1)
            harmony[v] = frozenset(allowed)
        elif "restore_final" in fields:
            soft, plain = fields["restore_final"].split(":", 1)
            restore[soft] = plain
        elif "reappend" in fields:
            v, appended = fields["reappend"].split(":", 1)
            reappend[v] = appended
        else:
            raise AffixRuleError(f"line {lineno}: unrecognized entry {line!r}")

    if version is None or vowels is None or high_vowels is None:
        raise AffixRuleError("rules file missing version/vowels/high_vowels")
    return AffixRules(
        version=version,
        vowels=frozenset(vowels),
        high_vowels=frozenset(high_vowels),
        harmony_classes=harmony,
        restore_final=restore,
        reappend=reappend,
        families=families,
    )


class _Scan:
    """Right-to-left matcher over one word.

    ``pos`` is the boundary between the unexamined prefix and suffix
    letters matched so far; ``end`` marks how far right a pending
    deletion reaches.  Saved positions are distances from the right edge
    so they stay valid across deletions further left.
    """

    __slots__ = ("word", "pos", "end", "vowels")

    def __init__(self, word: str, vowels: frozenset[str]) -> None:
        self.word = word
        self.pos = len(word)
        self.end = len(word)
        self.vowels = vowels

    def save(self) -> int:
        return len(self.word) - self.pos

    def restore(self, dist: int) -> None:
        self.pos = len(self.word) - dist

    def mark_end(self) -> None:
        self.end = self.pos

    def drop_marked(self) -> None:
        """Delete the letters between pos and the end marker."""
        if self.pos < self.end:
            self.word = self.word[: self.pos] + self.word[self.end :]
        self.end = self.pos

    def literal(self, s: str) -> bool:
        if self.pos >= len(s) and self.word[self.pos - len(s) : self.pos] == s:
            self.pos -= len(s)
            return True
        return False

    def among(self, forms: tuple[str, ...]) -> bool:
        for form in forms:  # pre-sorted longest first
            if self.literal(form):
                return True
        return False

    def harmony_ok(self, classes: dict[str, frozenset[str]]) -> bool:
        """Word-level harmony: some earlier vowel must agree with the last.

        The nearest vowel left of ``pos`` fixes the harmony class; any
        vowel of that class anywhere further left satisfies the check.
        """
        region = self.word
        i = self.pos - 1
        while i >= 0 and region[i] not in self.vowels:
            i -= 1
        if i < 0:
            return False
        allowed = classes.get(region[i])
        if allowed is None:
            return False
        for j in range(i - 1, -1, -1):
            if region[j] in allowed:
                return True
        return False

    def attached_consonant(self, letter: str) -> bool:
        """Validate and consume an optional buffer consonant (y/n/s).

        Present: it must follow a vowel, and is consumed.  Absent: the
        letter two back from the suffix must be a vowel (the stem ends
        vowel+consonant), and nothing is consumed.
        """
        if self.pos >= 1 and self.word[self.pos - 1] == letter:
            if self.pos >= 2 and self.word[self.pos - 2] in self.vowels:
                self.pos -= 1
                return True
            return False
        return self.pos >= 2 and self.word[self.pos - 2] in self.vowels

    def attached_high_vowel(self, high: frozenset[str]) -> bool:
        """Validate and consume an optional buffer high vowel (ı/i/u/ü).

        Mirror image of :meth:`attached_consonant`: present, it must
        follow a consonant; absent, the letter two back must be one.
        """
        if self.pos >= 1 and self.word[self.pos - 1] in high:
            if self.pos >= 2 and self.word[self.pos - 2] not in self.vowels:
                self.pos -= 1
                return True
            return False
        return self.pos >= 2 and self.word[self.pos - 2] not in self.vowels


class TurkishAffixStemmer:
    """Suffix-chain stemmer over a loaded :class:`AffixRules` table."""

    def __init__(self, rules: AffixRules | None = None) -> None:
        self.rules = rules if rules is not None else load_rules()

    # -- suffix recognition -------------------------------------------

    def _match(self, scan: _Scan, family_name: str) -> bool:
        fam = self.rules.family(family_name)
        if fam.harmony and not scan.harmony_ok(self.rules.harmony_classes):
            return False
        if not scan.among(fam.forms):
            return False
        if fam.attach == "U":
            return scan.attached_high_vowel(self.rules.high_vowels)
        if fam.attach != "none":
            return scan.attached_consonant(fam.attach)
        return True

    def _match_any(self, scan: _Scan, names: tuple[str, ...], at: int) -> bool:
        for name in names:
            scan.restore(at)
            if self._match(scan, name):
                return True
        scan.restore(at)
        return False

    # -- copular / nominal-verb endings --------------------------------

    def _strip_nominal_verb(self, scan: _Scan) -> bool:
        """Strip one chain of "to be" endings from the word.

        Returns whether noun-suffix stripping should still run: taking a
        bare plural here (``evler``, ``evlerdir``) ends the stemming of
        that word.
        """
        scan.mark_end()
        start = scan.save()

        if self._match_any(
            scan, ("evidential", "past", "conditional", "adverbial_while"), start
        ):
            scan.drop_marked()
            return True

        scan.restore(start)
        if self._match(scan, "as_if"):
            mid = scan.save()
            self._match_any(
                scan,
                ("copula_2pl", "plural", "copula_1sg", "copula_2sg", "copula_1pl"),
                mid,
            )
            if self._match(scan, "evidential"):
                scan.drop_marked()
                return True

        scan.restore(start)
        if self._match(scan, "plural"):
            scan.drop_marked()
            after = scan.save()
            scan.mark_end()
            if not self._match_any(
                scan, ("assertive", "past", "conditional", "evidential"), after
            ):
                scan.restore(after)
            scan.drop_marked()
            return False

        scan.restore(start)
        if self._match(scan, "pers_2pl"):
            mid = scan.save()
            if self._match_any(scan, ("past", "conditional"), mid):
                scan.drop_marked()
                return True

        scan.restore(start)
        if self._match_any(
            scan, ("copula_2pl", "copula_1pl", "copula_2sg", "copula_1sg"), start
        ):
            scan.drop_marked()
            after = scan.save()
            scan.mark_end()
            if not self._match(scan, "evidential"):
                scan.restore(after)
            scan.drop_marked()
            return True

        scan.restore(start)
        if self._match(scan, "assertive"):
            scan.drop_marked()
            after = scan.save()
            scan.mark_end()
            if not self._match_any(
                scan,
                ("copula_2pl", "plural", "copula_1sg", "copula_2sg", "copula_1pl"),
                after,
            ):
                scan.restore(after)
            if not self._match(scan, "evidential"):
                scan.restore(after)
            scan.drop_marked()
            return True

        scan.restore(start)
        return True

    # -- the -ki chain --------------------------------------------------

    def _strip_ki_chain(self, scan: _Scan) -> bool:
        """Strip ``-ki`` plus whatever case/possessive chain precedes it."""
        scan.mark_end()
        if not self._match(scan, "relative_ki"):
            return False
        start = scan.save()

        if self._match(scan, "locative"):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "plural"):
                scan.drop_marked()
                after = scan.save()
                if not self._strip_ki_chain(scan):
                    scan.restore(after)
            elif self._restored(scan, outer) and self._match(scan, "possessive"):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
            else:
                scan.restore(outer)
            return True

        scan.restore(start)
        if self._match(scan, "genitive"):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "poss_3pl"):
                scan.drop_marked()
            elif self._restored(scan, outer) and self._marked_end(scan) and (
                self._match_any(scan, ("possessive", "poss_3sg"), outer)
            ):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
            else:
                scan.restore(outer)
                if not self._strip_ki_chain(scan):
                    scan.restore(outer)
            return True

        scan.restore(start)
        if self._match(scan, "locative_after_poss"):
            inner = scan.save()
            if self._match(scan, "poss_3pl"):
                scan.drop_marked()
                return True
            scan.restore(inner)
            if self._match(scan, "poss_3sg"):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
                return True
            scan.restore(inner)
            return self._strip_ki_chain(scan)

        return False

    @staticmethod
    def _restored(scan: _Scan, dist: int) -> bool:
        scan.restore(dist)
        return True

    @staticmethod
    def _marked_end(scan: _Scan) -> bool:
        scan.mark_end()
        return True

    # -- noun endings ----------------------------------------------------

    def _strip_noun_suffixes(self, scan: _Scan) -> bool:
        """Strip one chain of case/possessive endings; first branch wins."""
        start = scan.save()

        scan.mark_end()
        if self._match(scan, "plural"):
            scan.drop_marked()
            after = scan.save()
            if not self._strip_ki_chain(scan):
                scan.restore(after)
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match(scan, "equative"):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "poss_3pl"):
                scan.drop_marked()
            elif self._restored(scan, outer) and self._marked_end(scan) and (
                self._match_any(scan, ("possessive", "poss_3sg"), outer)
            ):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
            else:
                scan.restore(outer)
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(outer)
                else:
                    scan.restore(outer)
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match_any(scan, ("locative_after_poss", "dative_after_poss"), start):
            inner = scan.save()
            if self._match(scan, "poss_3pl"):
                scan.drop_marked()
                return True
            scan.restore(inner)
            if self._match(scan, "poss_3sg"):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
                return True
            scan.restore(inner)
            if self._strip_ki_chain(scan):
                return True

        scan.restore(start)
        scan.mark_end()
        if self._match_any(scan, ("ablative_after_poss", "acc_after_poss"), start):
            inner = scan.save()
            if self._match(scan, "poss_3sg"):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
                return True
            scan.restore(inner)
            if self._match(scan, "poss_3pl"):
                return True

        scan.restore(start)
        scan.mark_end()
        if self._match(scan, "ablative"):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "possessive"):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
            elif self._restored(scan, outer) and self._match(scan, "plural"):
                scan.drop_marked()
                after = scan.save()
                if not self._strip_ki_chain(scan):
                    scan.restore(after)
            else:
                scan.restore(outer)
                if not self._strip_ki_chain(scan):
                    scan.restore(outer)
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match_any(scan, ("genitive", "instrumental"), start):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "plural"):
                scan.drop_marked()
                if not self._strip_ki_chain(scan):
                    self._try_poss_then_plural_chain(scan, outer)
            elif self._restored(scan, outer) and self._marked_end(scan) and (
                self._match_any(scan, ("possessive", "poss_3sg"), outer)
            ):
                scan.drop_marked()
                after = scan.save()
                scan.mark_end()
                if self._match(scan, "plural"):
                    scan.drop_marked()
                    if not self._strip_ki_chain(scan):
                        scan.restore(after)
                else:
                    scan.restore(after)
            else:
                scan.restore(outer)
                if not self._strip_ki_chain(scan):
                    scan.restore(outer)
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match(scan, "poss_3pl"):
            scan.drop_marked()
            return True

        scan.restore(start)
        if self._strip_ki_chain(scan):
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match_any(scan, ("locative", "accusative", "dative"), start):
            scan.drop_marked()
            outer = scan.save()
            scan.mark_end()
            if self._match(scan, "possessive"):
                scan.drop_marked()
                mid = scan.save()
                scan.mark_end()
                if not self._match(scan, "plural"):
                    scan.restore(mid)
                scan.drop_marked()
                scan.mark_end()
                if not self._strip_ki_chain(scan):
                    scan.restore(outer)
            elif self._restored(scan, outer) and self._match(scan, "plural"):
                scan.drop_marked()
                scan.mark_end()
                if not self._strip_ki_chain(scan):
                    scan.restore(outer)
            else:
                scan.restore(outer)
            return True

        scan.restore(start)
        scan.mark_end()
        if self._match_any(scan, ("possessive", "poss_3sg"), start):
            scan.drop_marked()
            after = scan.save()
            scan.mark_end()
            if self._match(scan, "plural"):
                scan.drop_marked()
                if not self._strip_ki_chain(scan):
                    scan.restore(after)
            else:
                scan.restore(after)
            return True

        return False

    def _try_poss_then_plural_chain(self, scan: _Scan, outer: int) -> None:
        """Genitive/instrumental fallback: possessive or bare chain."""
        scan.restore(outer)
        scan.mark_end()
        if self._match_any(scan, ("possessive", "poss_3sg"), outer):
            scan.drop_marked()
            after = scan.save()
            scan.mark_end()
            if self._match(scan, "plural"):
                scan.drop_marked()
                if not self._strip_ki_chain(scan):
                    scan.restore(after)
            else:
                scan.restore(after)
        else:
            scan.restore(outer)
            if not self._strip_ki_chain(scan):
                scan.restore(outer)

    # -- post-processing --------------------------------------------------

    def _restore_final_consonant(self, word: str) -> str:
        if word and word[-1] in self.rules.restore_final:
            return word[:-1] + self.rules.restore_final[word[-1]]
        return word

    def _reappend_vowel(self, word: str) -> str:
        if not word or word[-1] not in ("d", "g"):
            return word
        for ch in reversed(word):
            if ch in self.rules.vowels:
                return word + self.rules.reappend[ch]
        return word

    # -- public entry -------------------------------------------------

    def stem(self, word: str) -> str:
        """Stem one folded word; words without two vowels pass through."""
        vowel_count = sum(1 for ch in word if ch in self.rules.vowels)
        if vowel_count < 2:
            return word

        scan = _Scan(word, self.rules.vowels)
        if not self._strip_nominal_verb(scan):
            return scan.word
        scan.restore(0)
        self._strip_noun_suffixes(scan)

        stemmed = scan.word
        if stemmed in _RESERVED_STEMS:
            return stemmed
        stemmed = self._reappend_vowel(stemmed)
        return self._restore_final_consonant(stemmed)


_DEFAULT_STEMMER: TurkishAffixStemmer | None = None


def stem_affix(word: str) -> str:
    """Stem *word* with the packaged rule tables (module-level singleton)."""
    global _DEFAULT_STEMMER
    if _DEFAULT_STEMMER is None:
        _DEFAULT_STEMMER = TurkishAffixStemmer()
    return _DEFAULT_STEMMER.stem(word)
