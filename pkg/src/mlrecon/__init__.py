"""Maximum-likelihood sequence reconstruction from deletion and insertion traces."""

from .seqcore import Word, hamming_distance, indel_distance, run_decompose
from .subseq import (CandidateSet, EmptyCandidateSet, embedding_number,
                     enumerate_common_subsequences, enumerate_common_supersequences,
                     lcs_length, scs_length)

__version__ = "0.1.0"

__all__ = [
    "Word", "hamming_distance", "indel_distance", "run_decompose",
    "CandidateSet", "EmptyCandidateSet", "embedding_number",
    "enumerate_common_subsequences", "enumerate_common_supersequences",
    "lcs_length", "scs_length",
]
