"""Core model: texts, parsings, the two dictionary schemes, and grammars.

The two schemes parse a text left to right into phrases:

* LZD: each phrase is the concatenation of two parts; every part is the
  longest prefix of the remaining text that is either an earlier phrase or an
  already-seen single symbol.  The final phrase may consist of one part only
  (input exhausted).
* LZMW: each phrase is the longest prefix of the remaining text that is
  either the concatenation of two adjacent earlier phrases p_j p_(j+1) with
  j <= i-2, or an already-seen single symbol.

A symbol counts as seen once it has been read; the symbol under the cursor is
always a legal one-symbol match (its first occurrence starts a part).

The reference parsers here are deliberately plain: a dictionary of expanded
strings bucketed by length, scanned longest first.  They are the correctness
oracle for the trie-based and streaming parsers.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from enum import Enum

MAX_SYMBOL = 1 << 32


class Scheme(Enum):
    LZD = "lzd"
    LZMW = "lzmw"

    @property
    def label(self) -> str:
        return self.name  # header token in parsing files


class GrammarError(ValueError):
    """Structural problem in a grammar or a parsing-to-grammar conversion."""


@dataclass(frozen=True)
class Text:
    """Immutable symbol sequence over [0, alphabet_bound)."""

    symbols: tuple[int, ...]
    alphabet_bound: int

    def __post_init__(self):
        if self.alphabet_bound < 1 or self.alphabet_bound > MAX_SYMBOL:
            raise ValueError("alphabet_bound out of range")
        for s in self.symbols:
            if not (0 <= s < self.alphabet_bound):
                raise ValueError(f"symbol {s} outside [0, {self.alphabet_bound})")

    def __len__(self) -> int:
        return len(self.symbols)


def make_text(symbols, alphabet_bound: int | None = None) -> Text:
    syms = tuple(symbols)
    if alphabet_bound is None:
        alphabet_bound = (max(syms) + 1) if syms else 1
    return Text(syms, alphabet_bound)


@dataclass(frozen=True)
class Literal:
    """A single-symbol dictionary reference."""

    symbol: int


@dataclass(frozen=True)
class PhraseIndex:
    """LZD part: the index (1-based) of an earlier phrase."""

    index: int


@dataclass(frozen=True)
class PairIndex:
    """LZMW phrase: the dictionary string p_j p_(j+1), j 1-based."""

    index: int


LzdPart = Literal | PhraseIndex
LzmwPhrase = Literal | PairIndex


@dataclass(frozen=True)
class LzdPhrase:
    first: LzdPart
    second: LzdPart | None  # None only on a final one-part phrase


@dataclass(frozen=True)
class Parsing:
    scheme: Scheme
    phrases: tuple
    source_length: int

    def __len__(self) -> int:
        return len(self.phrases)


# ---------------------------------------------------------------------------
# Reference parsers (the oracle).


class _Dictionary:
    """Expanded dictionary strings bucketed by length, longest-first scan."""

    def __init__(self):
        self.by_len: dict[int, dict[tuple, object]] = {}
        self.lengths: list[int] = []  # ascending

    def add(self, expansion: tuple, ref) -> None:
        bucket = self.by_len.get(len(expansion))
        if bucket is None:
            bucket = {}
            self.by_len[len(expansion)] = bucket
            insort(self.lengths, len(expansion))
        bucket.setdefault(expansion, ref)  # first insertion wins (canonical ref)

    def longest_match(self, s: tuple, pos: int):
        """Longest dictionary string that prefixes s[pos:], or None."""
        remaining = len(s) - pos
        for length in reversed(self.lengths):
            if length > remaining:
                continue
            ref = self.by_len[length].get(s[pos:pos + length])
            if ref is not None:
                return ref, length
        return None


def lzd_parse_reference(text: Text) -> Parsing:
    s = text.symbols
    n = len(s)
    d = _Dictionary()
    expansions: list[tuple] = []
    phrases: list[LzdPhrase] = []
    seen: set[int] = set()
    pos = 0

    def next_part() -> tuple[LzdPart, int]:
        m = d.longest_match(s, pos)
        if m is not None:
            return m
        # first occurrence of s[pos]: the symbol itself is the part
        return Literal(s[pos]), 1

    while pos < n:
        first, flen = next_part()
        if isinstance(first, Literal) and first.symbol not in seen:
            d.add((first.symbol,), Literal(first.symbol))
        seen.update(s[pos:pos + flen])
        pos += flen
        second = None
        slen = 0
        if pos < n:
            second, slen = next_part()
            if isinstance(second, Literal) and second.symbol not in seen:
                d.add((second.symbol,), Literal(second.symbol))
            seen.update(s[pos:pos + slen])
            pos += slen
        phrases.append(LzdPhrase(first, second))
        expansion = s[pos - flen - slen:pos]
        expansions.append(expansion)
        d.add(expansion, PhraseIndex(len(phrases)))
    return Parsing(Scheme.LZD, tuple(phrases), n)


def lzmw_parse_reference(text: Text) -> Parsing:
    s = text.symbols
    n = len(s)
    d = _Dictionary()
    expansions: list[tuple] = []
    phrases: list[LzmwPhrase] = []
    seen: set[int] = set()
    pos = 0
    while pos < n:
        m = d.longest_match(s, pos)
        if m is None:
            phrase: LzmwPhrase = Literal(s[pos])
            plen = 1
        else:
            phrase, plen = m
        if isinstance(phrase, Literal) and phrase.symbol not in seen:
            d.add((phrase.symbol,), Literal(phrase.symbol))
        seen.update(s[pos:pos + plen])
        pos += plen
        phrases.append(phrase)
        expansions.append(s[pos - plen:pos])
        if len(phrases) >= 2:
            # the pair (p_(i-1), p_i) becomes available to phrase i+1
            d.add(expansions[-2] + expansions[-1], PairIndex(len(phrases) - 1))
    return Parsing(Scheme.LZMW, tuple(phrases), n)


def parse_reference(text: Text, scheme: Scheme) -> Parsing:
    if scheme is Scheme.LZD:
        return lzd_parse_reference(text)
    return lzmw_parse_reference(text)


# ---------------------------------------------------------------------------
# Expansion of parsings.


def phrase_expansions(parsing: Parsing) -> list[tuple]:
    """Expanded string of every phrase, in order. Raises GrammarError on bad refs."""
    out: list[tuple] = []
    if parsing.scheme is Scheme.LZD:
        for i, ph in enumerate(parsing.phrases, start=1):
            if not isinstance(ph, LzdPhrase):
                raise GrammarError(f"phrase {i}: not an LZD phrase")
            if ph.second is None and i != len(parsing.phrases):
                raise GrammarError(f"phrase {i}: one-part phrase before the end")
            parts = (ph.first,) if ph.second is None else (ph.first, ph.second)
            exp: tuple = ()
            for part in parts:
                if isinstance(part, Literal):
                    exp += (part.symbol,)
                elif isinstance(part, PhraseIndex):
                    if not (1 <= part.index < i):
                        raise GrammarError(f"phrase {i}: bad phrase reference {part.index}")
                    exp += out[part.index - 1]
                else:
                    raise GrammarError(f"phrase {i}: bad part {part!r}")
            out.append(exp)
    elif parsing.scheme is Scheme.LZMW:
        for i, ph in enumerate(parsing.phrases, start=1):
            if isinstance(ph, Literal):
                out.append((ph.symbol,))
            elif isinstance(ph, PairIndex):
                j = ph.index
                if not (1 <= j <= i - 2):
                    raise GrammarError(f"phrase {i}: bad pair reference {j}")
                out.append(out[j - 1] + out[j])
            else:
                raise GrammarError(f"phrase {i}: bad phrase {ph!r}")
    else:
        raise GrammarError("unknown scheme")
    return out


def phrase_lengths(parsing: Parsing) -> list[int]:
    """Expansion length of every phrase, without materializing anything.

    A malformed parsing can describe expansions exponentially longer than any
    source text; verifiers must reject on lengths before expanding.
    """
    out: list[int] = []
    if parsing.scheme is Scheme.LZD:
        for i, ph in enumerate(parsing.phrases, start=1):
            if not isinstance(ph, LzdPhrase):
                raise GrammarError(f"phrase {i}: not an LZD phrase")
            if ph.second is None and i != len(parsing.phrases):
                raise GrammarError(f"phrase {i}: one-part phrase before the end")
            total = 0
            for part in (ph.first,) if ph.second is None else (ph.first, ph.second):
                if isinstance(part, Literal):
                    total += 1
                elif isinstance(part, PhraseIndex):
                    if not (1 <= part.index < i):
                        raise GrammarError(f"phrase {i}: bad phrase reference {part.index}")
                    total += out[part.index - 1]
                else:
                    raise GrammarError(f"phrase {i}: bad part {part!r}")
            out.append(total)
    elif parsing.scheme is Scheme.LZMW:
        for i, ph in enumerate(parsing.phrases, start=1):
            if isinstance(ph, Literal):
                out.append(1)
            elif isinstance(ph, PairIndex):
                j = ph.index
                if not (1 <= j <= i - 2):
                    raise GrammarError(f"phrase {i}: bad pair reference {j}")
                out.append(out[j - 1] + out[j])
            else:
                raise GrammarError(f"phrase {i}: bad phrase {ph!r}")
    else:
        raise GrammarError("unknown scheme")
    return out


def expand_parsing(parsing: Parsing) -> tuple:
    exp: tuple = ()
    for e in phrase_expansions(parsing):
        exp += e
    return exp


def verify_parsing(text: Text, parsing: Parsing, strict: bool = False) -> bool:
    """True iff the parsing expands to the text.

    In strict mode each phrase must also equal the greedy choice; since both
    schemes are deterministic this is checked against the reference parse,
    comparing expansions phrase by phrase (representations may differ only in
    which of at most two adjacent equal pair strings an LZMW phrase cites).
    """
    try:
        if sum(phrase_lengths(parsing)) != len(text):
            return False
        exps = phrase_expansions(parsing)
    except GrammarError:
        return False
    flat: list[int] = []
    for e in exps:
        flat.extend(e)
    if tuple(flat) != text.symbols:
        return False
    if strict:
        ref = parse_reference(text, parsing.scheme)
        ref_exps = phrase_expansions(ref)
        if len(ref_exps) != len(exps) or ref_exps != exps:
            return False
        if parsing.scheme is Scheme.LZD:
            # part boundaries must match the greedy ones too
            for mine, theirs in zip(parsing.phrases, ref.phrases):
                if _lzd_part_lengths(mine, exps) != _lzd_part_lengths(theirs, ref_exps):
                    return False
    return True


def _lzd_part_lengths(ph: LzdPhrase, exps: list[tuple]) -> tuple:
    def plen(part: LzdPart) -> int:
        if isinstance(part, Literal):
            return 1
        return len(exps[part.index - 1])

    if ph.second is None:
        return (plen(ph.first),)
    return (plen(ph.first), plen(ph.second))


# ---------------------------------------------------------------------------
# Distinctness checks.


def check_lzd_distinct(parsing: Parsing) -> bool:
    """True iff all phrase expansions are pairwise distinct, except that a
    final one-part phrase may coincide with one earlier phrase.

    Without a terminating sentinel the input can end exactly where a
    dictionary string does; the truncated final phrase is then a copy by
    construction and is the only duplicate a greedy parse can produce.
    """
    if parsing.scheme is not Scheme.LZD:
        raise ValueError("expects an LZD parsing")
    exps = phrase_expansions(parsing)
    if parsing.phrases and parsing.phrases[-1].second is None:
        exps = exps[:-1]
    return len(set(exps)) == len(exps)


def check_lzmw_pair_distinct(parsing: Parsing) -> bool:
    """True iff no adjacent-pair string repeats except at adjacent indices.

    The pair at index i (2-based, i in [2..z]) is p_(i-1) p_i.  Equal pair
    strings may occur only at indices i and i+1, and at most twice.
    """
    if parsing.scheme is not Scheme.LZMW:
        raise ValueError("expects an LZMW parsing")
    exps = phrase_expansions(parsing)
    where: dict[tuple, list[int]] = {}
    for i in range(2, len(exps) + 1):
        pair = exps[i - 2] + exps[i - 1]
        where.setdefault(pair, []).append(i)
    for positions in where.values():
        if len(positions) > 2:
            return False
        if len(positions) == 2 and positions[1] != positions[0] + 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Grammars.


@dataclass(frozen=True)
class Term:
    symbol: int


@dataclass(frozen=True)
class Ref:
    rule: int


@dataclass(frozen=True)
class Grammar:
    """Straight-line program: rule id -> right-hand side, references only to
    lower ids (hence acyclic).  `start` is the axiom."""

    productions: dict[int, tuple]
    start: int

    def size(self) -> int:
        return sum(len(rhs) for rhs in self.productions.values())


def validate_grammar(g: Grammar) -> None:
    if g.start not in g.productions:
        raise GrammarError("start rule missing")
    for rid, rhs in g.productions.items():
        for item in rhs:
            if isinstance(item, Ref):
                if item.rule >= rid:
                    raise GrammarError(f"rule {rid} references {item.rule} (not lower)")
                if item.rule not in g.productions:
                    raise GrammarError(f"rule {rid} references missing {item.rule}")
            elif not isinstance(item, Term):
                raise GrammarError(f"rule {rid}: bad item {item!r}")


def expand_grammar(g: Grammar) -> tuple:
    """Expansion of the start rule; linear in the output plus shared parts."""
    validate_grammar(g)
    memo: dict[int, tuple] = {}
    for rid in sorted(g.productions):
        out: list[int] = []
        for item in g.productions[rid]:
            if isinstance(item, Term):
                out.append(item.symbol)
            else:
                out.extend(memo[item.rule])
        memo[rid] = tuple(out)
    return memo[g.start]


def parsing_to_grammar(parsing: Parsing) -> Grammar:
    """One production per phrase plus a start rule listing all phrases."""
    exps = phrase_expansions(parsing)  # validates references
    prods: dict[int, tuple] = {}
    if parsing.scheme is Scheme.LZD:
        for i, ph in enumerate(parsing.phrases, start=1):
            parts = (ph.first,) if ph.second is None else (ph.first, ph.second)
            rhs = tuple(
                Term(p.symbol) if isinstance(p, Literal) else Ref(p.index) for p in parts
            )
            prods[i] = rhs
    else:
        for i, ph in enumerate(parsing.phrases, start=1):
            if isinstance(ph, Literal):
                prods[i] = (Term(ph.symbol),)
            else:
                prods[i] = (Ref(ph.index), Ref(ph.index + 1))
    z = len(parsing.phrases)
    prods[z + 1] = tuple(Ref(i) for i in range(1, z + 1))
    return Grammar(prods, z + 1)
