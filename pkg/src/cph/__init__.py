"""Cartesian-tree position heaps over strings and tries."""

from .encodings import (SlidingPdState, build_cartesian_tree, ct_match, dag_from_fp,
                        dag_from_pd, fp_encode, front_pointers, pd_encode, pd_prepend,
                        pd_window_access)
from .heap import Cph, build_cph_string, build_string_index, compute_mrp, finalize
from .index_io import load, save
from .matching import factorize, query_string, query_trie
from .oracle import brute_match_string, brute_match_trie, generate, GenSpec
from .trie import ReversedTrie, build_fp_trie, chain_trie, parse_trie, pd_access_trie
from .trie_heap import TrieCph, build_cph_trie, build_trie_index, compute_mrp_trie

__version__ = "0.1.0"

__all__ = [
    "Cph", "GenSpec", "ReversedTrie", "SlidingPdState", "TrieCph",
    "brute_match_string", "brute_match_trie", "build_cartesian_tree", "build_cph_string",
    "build_cph_trie", "build_fp_trie", "build_string_index", "build_trie_index",
    "chain_trie", "compute_mrp", "compute_mrp_trie", "ct_match", "dag_from_fp",
    "dag_from_pd", "factorize", "finalize", "fp_encode", "front_pointers", "generate",
    "load", "parse_trie", "pd_access_trie", "pd_encode", "pd_prepend", "pd_window_access",
    "query_string", "query_trie", "save",
]
