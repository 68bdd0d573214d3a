"""Quadratic-time parsers over an uncompressed text.

The dictionary is kept in a compacted trie whose edge labels point back into
the text.  Work counters model the uncompacted view: advancing one symbol
along an edge costs one edge traversal plus one symbol comparison, and a
failed probe or mid-edge mismatch costs one extra comparison.  Dictionary
updates re-descend from the root and are charged the same way, so the totals
reflect what a direct pointer-trie implementation would pay.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    Literal,
    LzdPhrase,
    PairIndex,
    Parsing,
    PhraseIndex,
    Scheme,
    Text,
)

_CHUNK = 256


def _lcp(syms, a: int, b: int, limit: int) -> int:
    """Length of the longest common prefix of syms[a:a+limit], syms[b:b+limit].

    Compares chunk slices at C speed, dropping to a symbol loop only inside
    the chunk that mismatches, so the result is exact.
    """
    matched = 0
    while matched < limit:
        step = min(_CHUNK, limit - matched)
        if syms[a + matched:a + matched + step] == syms[b + matched:b + matched + step]:
            matched += step
            continue
        for off in range(matched, matched + step):
            if syms[a + off] != syms[b + off]:
                return off
        raise AssertionError("chunk mismatch without symbol mismatch")
    return limit


@dataclass
class StepStats:
    symbol_comparisons: int = 0
    edges_traversed: int = 0
    nodes_created: int = 0


@dataclass(frozen=True)
class PartTrace:
    """One dictionary lookup: where it started, what it cost, what it found."""

    pos: int
    search_cmp: int
    part_len: int


class _Node:
    __slots__ = ("start", "length", "depth", "children", "mark")

    def __init__(self, start: int, length: int, depth: int, mark):
        self.start = start
        self.length = length
        self.depth = depth
        self.children: dict = {}
        self.mark = mark


class CompactedTrie:
    """Compacted trie over substrings of one fixed symbol sequence.

    Marked nodes carry the dictionary payload for the string they spell.
    Marking is first-wins so earlier entries stay canonical.
    """

    def __init__(self, syms, stats: StepStats | None = None):
        self.syms = syms
        self.root = _Node(0, 0, 0, None)
        self.stats = stats if stats is not None else StepStats()

    def longest_marked(self, pos: int):
        """Longest marked prefix of syms[pos:]; returns (payload, length)."""
        syms = self.syms
        n = len(syms)
        stats = self.stats
        node = self.root
        best_payload, best_len = None, 0
        cur = pos
        while True:
            if node.mark is not None:
                best_payload, best_len = node.mark, node.depth
            if cur >= n:
                break
            child = node.children.get(syms[cur])
            if child is None:
                stats.symbol_comparisons += 1
                break
            ext = min(child.length, n - cur)
            l = _lcp(syms, cur, child.start, ext)
            stats.symbol_comparisons += l
            stats.edges_traversed += l
            if l < child.length:
                if cur + l < n:
                    stats.symbol_comparisons += 1
                break
            node = child
            cur += l
        return best_payload, best_len

    def insert_letter(self, pos: int, payload) -> None:
        # A fresh letter has no trie entry starting with it yet, so this is
        # always a new root child.  Bookkeeping only, no charge.
        syms = self.syms
        assert syms[pos] not in self.root.children
        self.root.children[syms[pos]] = _Node(pos, 1, 1, payload)
        self.stats.nodes_created += 1

    def insert(self, start: int, end: int, payload) -> None:
        """Insert syms[start:end] as a marked string (first mark wins)."""
        syms = self.syms
        stats = self.stats
        node = self.root
        cur = start
        while True:
            if cur == end:
                if node.mark is None:
                    node.mark = payload
                return
            child = node.children.get(syms[cur])
            if child is None:
                stats.symbol_comparisons += 1
                node.children[syms[cur]] = _Node(
                    cur, end - cur, node.depth + (end - cur), payload)
                stats.nodes_created += 1
                return
            ext = min(child.length, end - cur)
            l = _lcp(syms, cur, child.start, ext)
            stats.symbol_comparisons += l
            stats.edges_traversed += l
            if l == child.length:
                node = child
                cur += l
                continue
            mid = self._split(node, child, l)
            if cur + l == end:
                mid.mark = payload
                return
            stats.symbol_comparisons += 1
            leaf = _Node(cur + l, end - (cur + l), mid.depth + (end - (cur + l)),
                         payload)
            mid.children[syms[cur + l]] = leaf
            stats.nodes_created += 1
            return

    def _split(self, parent: _Node, child: _Node, offset: int) -> _Node:
        # Cut child's edge after `offset` symbols; the new middle node takes
        # the upper half of the label.
        syms = self.syms
        mid = _Node(child.start, offset, parent.depth + offset, None)
        parent.children[syms[child.start]] = mid
        child.start += offset
        child.length -= offset
        mid.children[syms[child.start]] = child
        self.stats.nodes_created += 1
        return mid

    def node_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children.values())
        return count


@dataclass
class NaiveResult:
    parsing: Parsing
    stats: StepStats
    trace: list = field(default_factory=list)
    trie: CompactedTrie | None = None


def lzd_parse_naive(text: Text, collect_trace: bool = False) -> NaiveResult:
    syms = text.symbols
    n = len(syms)
    trie = CompactedTrie(syms)
    trace: list = []
    phrases: list = []
    pos = 0
    while pos < n:
        phrase_start = pos
        parts = []
        for _ in range(2):
            if pos >= n:
                break
            cmp_before = trie.stats.symbol_comparisons
            payload, plen = trie.longest_marked(pos)
            if plen == 0:
                payload, plen = Literal(syms[pos]), 1
                trie.insert_letter(pos, payload)
            if collect_trace:
                trace.append(PartTrace(
                    pos, trie.stats.symbol_comparisons - cmp_before, plen))
            parts.append(payload)
            pos += plen
        if len(parts) == 2:
            phrases.append(LzdPhrase(parts[0], parts[1]))
            trie.insert(phrase_start, pos, PhraseIndex(len(phrases)))
        else:
            phrases.append(LzdPhrase(parts[0], None))
    parsing = Parsing(Scheme.LZD, tuple(phrases), n)
    return NaiveResult(parsing, trie.stats, trace, trie)


def lzmw_parse_naive(text: Text, collect_trace: bool = False) -> NaiveResult:
    syms = text.symbols
    n = len(syms)
    trie = CompactedTrie(syms)
    trace: list = []
    phrases: list = []
    starts: list[int] = []
    pos = 0
    while pos < n:
        cmp_before = trie.stats.symbol_comparisons
        payload, plen = trie.longest_marked(pos)
        if plen == 0:
            payload, plen = Literal(syms[pos]), 1
            trie.insert_letter(pos, payload)
        if collect_trace:
            trace.append(PartTrace(
                pos, trie.stats.symbol_comparisons - cmp_before, plen))
        phrases.append(payload)
        starts.append(pos)
        pos += plen
        if len(phrases) >= 2:
            trie.insert(starts[-2], pos, PairIndex(len(phrases) - 1))
    parsing = Parsing(Scheme.LZMW, tuple(phrases), n)
    return NaiveResult(parsing, trie.stats, trace, trie)


def parse_naive(text: Text, scheme: Scheme, collect_trace: bool = False) -> NaiveResult:
    if scheme is Scheme.LZD:
        return lzd_parse_naive(text, collect_trace)
    return lzmw_parse_naive(text, collect_trace)
