"""On-disk formats.

Text files (".sym"): a header line `#sigma <N>` followed by ASCII decimal
symbol values separated by single spaces or newlines.  Texts over an alphabet
bound <= 256 may instead be stored raw, one byte per symbol.

Parsing files: a header `LZD <z> <n>` or `LZMW <z> <n>`, then one phrase per
line.  Tokens are `L:<symbol>` for a literal and `P:<index>` (1-based) for a
dictionary reference.  LZD lines carry two tokens (one on a final one-part
phrase); LZMW lines carry one.
"""

from __future__ import annotations

from .model import (
    Literal,
    LzdPhrase,
    PairIndex,
    Parsing,
    PhraseIndex,
    Scheme,
    Text,
)


class FormatError(ValueError):
    """Malformed input file."""


# ---------------------------------------------------------------------------
# Symbol texts.


def dump_text(text: Text) -> bytes:
    lines = [f"#sigma {text.alphabet_bound}"]
    syms = text.symbols
    for i in range(0, len(syms), 64):
        lines.append(" ".join(str(v) for v in syms[i:i + 64]))
    return ("\n".join(lines) + "\n").encode("ascii")


def load_text(data: bytes) -> Text:
    try:
        s = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise FormatError(f"not an ASCII symbol file: {e}") from None
    tokens = s.split()
    if not tokens or tokens[0] != "#sigma":
        raise FormatError("missing '#sigma <N>' header")
    if len(tokens) < 2:
        raise FormatError("missing alphabet bound after #sigma")
    try:
        bound = int(tokens[1])
        syms = tuple(int(tok) for tok in tokens[2:])
    except ValueError as e:
        raise FormatError(f"bad integer token: {e}") from None
    try:
        return Text(syms, bound)
    except ValueError as e:
        raise FormatError(str(e)) from None


def dump_text_raw(text: Text) -> bytes:
    if text.alphabet_bound > 256:
        raise FormatError("raw byte format requires alphabet_bound <= 256")
    return bytes(text.symbols)


def load_text_raw(data: bytes) -> Text:
    return Text(tuple(data), 256)


def read_text_file(path: str, format: str = "auto") -> Text:
    with open(path, "rb") as f:
        data = f.read()
    if format == "sym":
        return load_text(data)
    if format == "raw":
        return load_text_raw(data)
    if format == "auto":
        if data.startswith(b"#sigma"):
            return load_text(data)
        return load_text_raw(data)
    raise ValueError(f"unknown text format {format!r}")


def write_text_file(path: str, text: Text, format: str = "sym") -> None:
    if format == "sym":
        data = dump_text(text)
    elif format == "raw":
        data = dump_text_raw(text)
    else:
        raise ValueError(f"unknown text format {format!r}")
    with open(path, "wb") as f:
        f.write(data)


# ---------------------------------------------------------------------------
# Parsings.


def _part_token(part) -> str:
    if isinstance(part, Literal):
        return f"L:{part.symbol}"
    if isinstance(part, (PhraseIndex, PairIndex)):
        return f"P:{part.index}"
    raise TypeError(f"bad part {part!r}")


def dump_parsing(parsing: Parsing) -> bytes:
    lines = [f"{parsing.scheme.label} {len(parsing.phrases)} {parsing.source_length}"]
    if parsing.scheme is Scheme.LZD:
        for ph in parsing.phrases:
            toks = [_part_token(ph.first)]
            if ph.second is not None:
                toks.append(_part_token(ph.second))
            lines.append(" ".join(toks))
    else:
        for ph in parsing.phrases:
            lines.append(_part_token(ph))
    return ("\n".join(lines) + "\n").encode("ascii")


def _parse_token(tok: str, scheme: Scheme):
    if tok.startswith("L:"):
        body, make = tok[2:], Literal
    elif tok.startswith("P:"):
        body = tok[2:]
        make = PhraseIndex if scheme is Scheme.LZD else PairIndex
    else:
        raise FormatError(f"bad token {tok!r}")
    try:
        value = int(body)
    except ValueError:
        raise FormatError(f"bad token {tok!r}") from None
    if value < 0 or (tok.startswith("P:") and value < 1):
        raise FormatError(f"bad token {tok!r}")
    return make(value)


def load_parsing(data: bytes) -> Parsing:
    try:
        s = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise FormatError(f"not an ASCII parsing file: {e}") from None
    lines = [ln for ln in s.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty parsing file")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("LZD", "LZMW"):
        raise FormatError(f"bad header {lines[0]!r}")
    scheme = Scheme.LZD if head[0] == "LZD" else Scheme.LZMW
    try:
        z, n = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError(f"bad header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != z:
        raise FormatError(f"header announces {z} phrases, file has {len(body)}")
    phrases: list = []
    if scheme is Scheme.LZD:
        for ln in body:
            toks = ln.split()
            if len(toks) not in (1, 2):
                raise FormatError(f"LZD phrase line needs 1 or 2 tokens: {ln!r}")
            first = _parse_token(toks[0], scheme)
            second = _parse_token(toks[1], scheme) if len(toks) == 2 else None
            phrases.append(LzdPhrase(first, second))
    else:
        for ln in body:
            toks = ln.split()
            if len(toks) != 1:
                raise FormatError(f"LZMW phrase line needs 1 token: {ln!r}")
            phrases.append(_parse_token(toks[0], scheme))
    return Parsing(scheme, tuple(phrases), n)


def read_parsing_file(path: str) -> Parsing:
    with open(path, "rb") as f:
        return load_parsing(f.read())


def write_parsing_file(path: str, parsing: Parsing) -> None:
    with open(path, "wb") as f:
        f.write(dump_parsing(parsing))
