"""LZD/LZMW grammar-compression toolkit."""

from .model import (
    Scheme,
    Text,
    make_text,
    Literal,
    PhraseIndex,
    PairIndex,
    LzdPhrase,
    Parsing,
    Grammar,
    Term,
    Ref,
    GrammarError,
    lzd_parse_reference,
    lzmw_parse_reference,
    parse_reference,
    phrase_expansions,
    phrase_lengths,
    expand_parsing,
    verify_parsing,
    check_lzd_distinct,
    check_lzmw_pair_distinct,
    parsing_to_grammar,
    expand_grammar,
    validate_grammar,
)
from .hashing import HashConfig, Fingerprint, fp_concat, fp_empty, fp_of, fp_symbol, MERSENNE61
from .naive import NaiveResult, PartTrace, StepStats, parse_naive
from .avlgrammar import AvlGrammar
from .ztrie import MarkedAncestorIndex, OrderList, ZTrie, two_fattest
from .fast import (
    BlockReader,
    FastResult,
    FastStats,
    LasVegasResult,
    parse_fast,
    parse_las_vegas,
    parse_las_vegas_detailed,
)
from .bench import BenchRecord, CSV_HEADER, ExponentFit, fit_exponent, run_bench

__all__ = [
    "Scheme",
    "Text",
    "make_text",
    "Literal",
    "PhraseIndex",
    "PairIndex",
    "LzdPhrase",
    "Parsing",
    "Grammar",
    "Term",
    "Ref",
    "GrammarError",
    "lzd_parse_reference",
    "lzmw_parse_reference",
    "parse_reference",
    "phrase_expansions",
    "phrase_lengths",
    "expand_parsing",
    "verify_parsing",
    "check_lzd_distinct",
    "check_lzmw_pair_distinct",
    "parsing_to_grammar",
    "expand_grammar",
    "validate_grammar",
    "HashConfig",
    "Fingerprint",
    "fp_concat",
    "fp_empty",
    "fp_of",
    "fp_symbol",
    "MERSENNE61",
    "NaiveResult",
    "PartTrace",
    "StepStats",
    "parse_naive",
    "AvlGrammar",
    "MarkedAncestorIndex",
    "OrderList",
    "ZTrie",
    "two_fattest",
    "BlockReader",
    "FastResult",
    "FastStats",
    "LasVegasResult",
    "parse_fast",
    "parse_las_vegas",
    "parse_las_vegas_detailed",
    "BenchRecord",
    "CSV_HEADER",
    "ExponentFit",
    "fit_exponent",
    "run_bench",
]
