"""Hard-instance families and the binary-alphabet reduction.

Three kinds of deterministic constructions live here:

* approximation-ratio witnesses: strings over {a,b,c,d} whose parsings have
  quadratically many phrases while an explicit linear-size grammar produces
  the same string (one family per scheme);
* slow-parse strings that force the quadratic-time parsers into long futile
  dictionary probes, built from k*k distinct letters plus one-shot separator
  symbols, with a layout table locating the probe-heavy z blocks;
* a reduction mapping any text to a binary one whose parsing is the image of
  the original parsing after a fixed priming prefix.

Letters a,b,c,d map to symbols 0,1,2,3.  The slow families use
a_{i,j} -> (i-1)*k + (j-1) and allocate a fresh id >= k*k per separator
occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Grammar, Ref, Scheme, Term, Text, make_text

_A, _B, _C, _D = 0, 1, 2, 3


class ParameterError(ValueError):
    """Generator parameter outside its documented domain."""


def _check_k(k: int, minimum: int) -> None:
    if not isinstance(k, int) or k < minimum or k & (k - 1) != 0:
        raise ParameterError(
            f"k must be a power of two >= {minimum}, got {k!r}")


# ---------------------------------------------------------------------------
# Approximation-ratio witnesses.


def _delta(i: int, k: int) -> list[int]:
    return [_A] * i + [_B, _B] + [_A] * (k - i)


def _approx_x(k: int) -> list[int]:
    x: list[int] = []
    for j in range(k - 1, k // 2, -1):
        x += _delta(k, k) + _delta(j, k)
    x += _delta(k, k) + [_A] * (k - 1)
    return x


def gen_lzmw_approx(k: int) -> Text:
    _check_k(k, 4)
    out: list[int] = []
    for i in range(k):
        out += [_B] + [_A] * i + [_A] + [_A] * i + [_B, _C]
        for j in range(1, i + 1):
            out += [_B] + [_A] * j
    for i in range(k + 1):
        out += _delta(i, k) + [_D]
    p = 1
    while p <= k // 2:
        out += [_C] + [_A] * (p - 1) + [_A] * p + [_A] * p
        p *= 2
    out += [_D, _C]
    out += _approx_x(k) * (k // 2)
    return make_text(out, 4)


def gen_lzd_approx(k: int) -> Text:
    _check_k(k, 4)
    out: list[int] = []
    for i in range(2, k + 1):
        out += [_A] * i + [_C] * i
    out += [_B, _B]
    for i in range(1, k):
        out += [_A] * i + [_B, _B]
    for i in range(k + 1):
        out += _delta(i, k) + [_D] * (i + 2)
    out += _approx_x(k) * (k // 2)
    return make_text(out, 4)


class _Builder:
    """Sequential rule-id allocator for hand-built grammars."""

    def __init__(self):
        self.productions: dict[int, tuple] = {}
        self._next = 1

    def rule(self, rhs) -> int:
        rid = self._next
        self._next += 1
        self.productions[rid] = tuple(rhs)
        return rid

    def grammar(self, start: int) -> Grammar:
        return Grammar(self.productions, start)


def small_grammar_lzmw(k: int) -> Grammar:
    _check_k(k, 4)
    g = _Builder()
    a_chain = [g.rule([])]
    for i in range(1, 2 * k + 1):
        a_chain.append(g.rule([Ref(a_chain[i - 1]), Term(_A)]))
    b_chain = [g.rule([Term(_C)])]
    for i in range(1, 2 * k + 1):
        b_chain.append(g.rule([Ref(b_chain[i - 1]), Term(_B), Ref(a_chain[i])]))
    gammas = [g.rule([Term(_B), Ref(a_chain[2 * i + 1]), Term(_B), Ref(b_chain[i])])
              for i in range(k)]
    deltas = [g.rule([Ref(a_chain[i]), Term(_B), Term(_B), Ref(a_chain[k - i])])
              for i in range(k + 1)]
    x_rhs: list = []
    for j in range(k - 1, k // 2, -1):
        x_rhs += [Ref(deltas[k]), Ref(deltas[j])]
    x_rhs += [Ref(deltas[k]), Ref(a_chain[k - 1])]
    x_rule = g.rule(x_rhs)
    s_rhs: list = [Ref(gi) for gi in gammas]
    for i in range(k + 1):
        s_rhs += [Ref(deltas[i]), Term(_D)]
    p = 1
    while p <= k // 2:
        s_rhs += [Term(_C), Ref(a_chain[3 * p - 1])]
        p *= 2
    s_rhs += [Term(_D), Term(_C)]
    s_rhs += [Ref(x_rule)] * (k // 2)
    return g.grammar(g.rule(s_rhs))


def small_grammar_lzd(k: int) -> Grammar:
    _check_k(k, 4)
    g = _Builder()
    a_chain = [g.rule([])]
    c_chain = [g.rule([])]
    d_chain = [g.rule([])]
    for i in range(1, k + 3):
        a_chain.append(g.rule([Ref(a_chain[i - 1]), Term(_A)]))
        c_chain.append(g.rule([Ref(c_chain[i - 1]), Term(_C)]))
        d_chain.append(g.rule([Ref(d_chain[i - 1]), Term(_D)]))
    deltas = [g.rule([Ref(a_chain[i]), Term(_B), Term(_B), Ref(a_chain[k - i])])
              for i in range(k + 1)]
    x_rhs: list = []
    for j in range(k - 1, k // 2, -1):
        x_rhs += [Ref(deltas[k]), Ref(deltas[j])]
    x_rhs += [Ref(deltas[k]), Ref(a_chain[k - 1])]
    x_rule = g.rule(x_rhs)
    s_rhs: list = []
    for i in range(2, k + 1):
        s_rhs += [Ref(a_chain[i]), Ref(c_chain[i])]
    s_rhs += [Term(_B), Term(_B)]
    for i in range(1, k):
        s_rhs += [Ref(a_chain[i]), Term(_B), Term(_B)]
    for i in range(k + 1):
        s_rhs += [Ref(deltas[i]), Ref(d_chain[i + 2])]
    s_rhs += [Ref(x_rule)] * (k // 2)
    return g.grammar(g.rule(s_rhs))


# ---------------------------------------------------------------------------
# Slow-parse families.


@dataclass(frozen=True)
class SlowLayout:
    """Half-open [start, end) spans of the named regions, in text order."""

    blocks: tuple


class _SlowBuild:
    def __init__(self, k: int):
        self.k = k
        self.out: list[int] = []
        self.blocks: list[tuple[str, int, int]] = []
        self.next_sep = k * k

    def sep(self) -> list[int]:
        sid = self.next_sep
        self.next_sep += 1
        return [sid]

    def block(self, label: str, piece: list[int]) -> None:
        start = len(self.out)
        self.out += piece
        self.blocks.append((label, start, len(self.out)))

    def text(self) -> Text:
        return make_text(self.out, self.next_sep)

    def layout(self) -> SlowLayout:
        return SlowLayout(tuple(self.blocks))


def _w(i: int, k: int) -> list[int]:
    # letters a_{i,1}..a_{i,k} with 1-based i
    base = (i - 1) * k
    return list(range(base, base + k))


def _wcat(lo: int, hi: int, k: int) -> list[int]:
    # w_lo w_{lo+1} ... w_hi (empty when lo > hi)
    out: list[int] = []
    for i in range(lo, hi + 1):
        out += _w(i, k)
    return out


def _build_lzd_slow(k: int) -> _SlowBuild:
    _check_k(k, 8)
    b = _SlowBuild(k)
    k2 = k // 2
    w_full = _wcat(1, k, k)

    s_prime: list[int] = []
    for i in range(1, k + 1):
        wi = _w(i, k)
        for j in range(2, k + 1):
            s_prime += wi[:j]
    for i in range(1, k + 1):
        wi = _w(i, k)
        for j in range(k - 1, 1, -1):
            s_prime += wi[j - 1:]
    for t in range(k - 2, 0, -1):
        s_prime += _wcat(t, k - 1, k)
    s_prime += w_full
    p = 2
    while p <= k:
        s_prime += w_full * p
        p *= 2
    wk = _w(k, k)
    for j in range(2, k + 1):
        s_prime += wk[j - 1:] + w_full * k
    b.block("s_prime", s_prime)

    def u_prime(i: int, j: int) -> list[int]:
        return wk[j - 1:] + _wcat(1, i - 1, k) + _w(i, k)[:j]

    def u_full(i: int, j: int) -> list[int]:
        head = wk[j - 1:] + _wcat(1, i - 2, k) + _w(i - 1, k)[:j]
        return head + _w(i - 1, k)[j:] + u_prime(i, j)

    def v_piece(i: int, j: int) -> list[int]:
        stem = _w(i, k)[j - 1:] + _wcat(i + 1, k - 1, k)
        return stem + stem + wk[:j - 1]

    for i in range(1, k - 1):
        x: list[int] = []
        for j in range(2, k + 1):
            if i == 1 or j == k:
                x += u_prime(i, j)
            else:
                x += u_full(i, j)
            x += b.sep() + b.sep()
        for j in range(2, k + 1):
            x += v_piece(i, j) + b.sep() + b.sep()
        b.block(f"x{i}", x)
        z = _w(i, k)[1:] + _wcat(i + 1, k, k) + w_full * (k - 2) + _wcat(1, i, k)
        b.block(f"z{i}", z)
        b.block(f"sep{i}", b.sep() + b.sep())
    return b


def _build_lzmw_slow(k: int) -> _SlowBuild:
    _check_k(k, 8)
    b = _SlowBuild(k)
    w_full = _wcat(1, k, k)
    wk = _w(k, k)

    s_prime: list[int] = []
    for i in range(1, k + 1):
        wi = _w(i, k)
        for j in range(2, k + 1):
            s_prime += wi[:j] + b.sep()
    for i in range(1, k + 1):
        wi = _w(i, k)
        for j in range(k - 1, 1, -1):
            s_prime += wi[j - 1:] + b.sep()
    for t in range(k - 2, 0, -1):
        s_prime += _wcat(t, k - 1, k) + b.sep()
    s_prime += w_full + b.sep()
    p = 2
    while p <= k:
        s_prime += w_full * p + b.sep()
        p *= 2
    for j in range(2, k + 1):
        s_prime += wk[j - 1:] + w_full * k + b.sep()
    b.block("s_prime", s_prime)

    y: list[int] = []
    w1 = _w(1, k)
    w2 = _w(2, k)
    for j in range(2, k + 1):
        y += wk[j - 1:] + w1 + b.sep()
        y += wk[j - 1:] + w1 + w2[:j] + b.sep()
    b.block("y", y)

    for i in range(4, k - 1, 2):
        x: list[int] = []
        for j in range(2, k):
            x += _w(i - 2, k)[j:] + _w(i - 1, k)[:j] + b.sep()
            x += _w(i - 1, k)[j:] + _w(i, k)[:j] + b.sep()
        for j in range(2, k + 1):
            x += wk[j - 1:] + _wcat(1, i - 3, k) + _w(i - 2, k)[:j]
            x += _w(i - 2, k)[j:] + _w(i - 1, k)[:j] + b.sep()
        for j in range(2, k + 1):
            stem = _w(i, k)[j - 1:] + _wcat(i + 1, k - 1, k)
            x += stem + b.sep() + stem + wk[:j - 1] + b.sep()
        b.block(f"x{i}", x)
        z = _w(i, k)[1:] + _wcat(i + 1, k, k) + w_full * (k - 2) + _wcat(1, i, k)
        z += b.sep()
        b.block(f"z{i}", z)
    return b


def gen_lzd_slow(k: int) -> Text:
    return _build_lzd_slow(k).text()


def gen_lzmw_slow(k: int) -> Text:
    return _build_lzmw_slow(k).text()


def lzd_slow_layout(k: int) -> SlowLayout:
    return _build_lzd_slow(k).layout()


def lzmw_slow_layout(k: int) -> SlowLayout:
    return _build_lzmw_slow(k).layout()


# ---------------------------------------------------------------------------
# Binary-alphabet reduction.


@dataclass(frozen=True)
class Morphism:
    ell: int
    table: dict
    prefix: tuple

    def image(self, symbols) -> tuple:
        out: list[int] = []
        for c in symbols:
            out += self.table[c]
        return tuple(out)


def _alpha_levels(limit_size: int):
    level = ["0", "1"]
    while True:
        nxt = sorted(x + y for x in level for y in level if x <= y)
        yield nxt
        level = nxt
        if len(level) > limit_size:
            return


def alpha_sequence(count: int) -> list[str]:
    out: list[str] = []
    level = ["0", "1"]
    while len(out) < count:
        level = sorted(x + y for x in level for y in level if x <= y)
        out += level
    return out[:count]


def _beta_levels(min_size: int) -> list[list[str]]:
    levels = [["0", "1"]]
    while len(levels[-1]) < min_size or len(levels) < 2:
        prev = levels[-1]
        bad = prev[-1] + prev[0]
        nxt = sorted(x + y for x in prev for y in prev if x + y != bad)
        levels.append(nxt)
    return levels


def beta_sequence(count: int) -> list[str]:
    out: list[str] = []
    level = ["0", "1"]
    out += level
    while len(out) < count:
        bad = level[-1] + level[0]
        level = sorted(x + y for x in level for y in level if x + y != bad)
        out += level
    return out[:count]


def beta_block(m: int) -> str:
    """The block b(beta_m): pairs beta_t beta_m for the level prefix, then beta_m."""
    if m < 1:
        raise ParameterError(f"block index must be >= 1, got {m!r}")
    seq = beta_sequence(m)
    beta_m = seq[m - 1]
    # first index of this level: the all-zeros string of the same length
    first = seq.index("0" * len(beta_m))
    parts = [seq[t] + beta_m for t in range(first, m - 1)]
    parts.append(beta_m)
    return "".join(parts)


def _bits(binary: str) -> tuple:
    return tuple(int(ch) for ch in binary)


def _lzd_priming(sigma: int):
    levels: list[list[str]] = []
    level = ["0", "1"]
    while True:
        level = sorted(x + y for x in level for y in level if x <= y)
        levels.append(level)
        if len(level) >= sigma:
            break
    images = levels[-1][:sigma]
    prefix_strings: list[str] = []
    for lv in levels[:-1]:
        prefix_strings += lv
    prefix_strings += images
    return "".join(prefix_strings), images


def _lzmw_priming(sigma: int):
    levels = _beta_levels(sigma)
    big = len(levels) - 1          # smallest level >= 1 whose size reaches sigma
    seq: list[str] = []
    for lv in levels:
        seq += lv
    level_start = sum(len(lv) for lv in levels[:big - 1])  # 0-based index of 0^(2^(big-1))
    level_end = level_start + len(levels[big - 1])
    entered: dict[str, None] = {}
    stop = None
    for m in range(level_start, level_end):
        if m > level_start:
            entered.setdefault(seq[m - 1] + seq[level_start], None)
            for t in range(level_start, m):
                entered.setdefault(seq[t] + seq[m], None)
            for t in range(level_start + 1, m):
                entered.setdefault(seq[m] + seq[t], None)
            entered.setdefault(seq[m] + seq[m], None)
        if len(entered) >= sigma:
            stop = m
            break
    assert stop is not None, "level exhausted before reaching sigma members"
    forbidden = levels[big - 1][-1] + levels[big - 1][0]
    assert forbidden not in entered
    zeros = "0" * (2 ** big)
    assert zeros in entered
    prefix = "".join(beta_block(m) for m in range(1, stop + 2))  # 1-based blocks
    rest = sorted(img for img in entered if img != zeros)[:sigma - 1]
    return prefix, zeros, rest


def binary_reduce(text: Text, scheme: Scheme):
    """Map `text` to a binary string t . phi(text) whose parsing is the
    parsing of t followed by the phi-image of the parsing of text."""
    if len(text.symbols) == 0:
        raise ParameterError("cannot reduce an empty text")
    alphabet = sorted(set(text.symbols))
    sigma = len(alphabet)
    if scheme is Scheme.LZD:
        prefix, images = _lzd_priming(sigma)
        table = {sym: _bits(img) for sym, img in zip(alphabet, images)}
    else:
        prefix, zeros, rest = _lzmw_priming(sigma)
        first_sym = text.symbols[0]
        table = {first_sym: _bits(zeros)}
        others = [sym for sym in alphabet if sym != first_sym]
        for sym, img in zip(others, rest):
            table[sym] = _bits(img)
    ell = len(next(iter(table.values())))
    assert all(len(img) == ell for img in table.values())
    assert len(set(table.values())) == sigma
    morphism = Morphism(ell, table, _bits(prefix))
    out = list(morphism.prefix) + list(morphism.image(text.symbols))
    return make_text(out, 2), morphism


# CLI registry: family name -> (generator, natural scheme, minimum k).
FAMILIES = {
    "lzmw-approx": (gen_lzmw_approx, Scheme.LZMW, 4),
    "lzd-approx": (gen_lzd_approx, Scheme.LZD, 4),
    "lzd-slow": (gen_lzd_slow, Scheme.LZD, 8),
    "lzmw-slow": (gen_lzmw_slow, Scheme.LZMW, 8),
}
