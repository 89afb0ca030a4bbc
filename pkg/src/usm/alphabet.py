"""Symbol-to-hypercube-corner lookup for finite alphabets.

Each of the m symbols is assigned a corner of the unit hypercube of
dimension h = ceil(log2(m)) (h = 1 for the degenerate one-symbol case).
The corner of the symbol with sorted index i is the h-bit big-endian
binary expansion of i, which for DNA gives the classic square
A:[0,0] C:[0,1] G:[1,0] T:[1,1].
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphabetError, UnknownSymbolError, UnusedCornerError


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol set with its corner assignment.

    symbols are lexicographically sorted and distinct; corners maps each
    symbol to a length-h tuple of bits. Instances are immutable and safe
    to share across threads.
    """

    symbols: tuple
    h: int
    corners: dict = field(compare=False)
    _index: dict = field(compare=False, repr=False)

    def __len__(self):
        return len(self.symbols)

    def index_of(self, symbol):
        """Sorted index of a symbol (its corner number)."""
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol) from None

    def corner_matrix(self):
        """m x h float64 matrix of corner coordinates, row per symbol index."""
        m = len(self.symbols)
        mat = np.zeros((m, self.h), dtype=np.float64)
        for i, s in enumerate(self.symbols):
            mat[i, :] = self.corners[s]
        return mat

    def encode_symbols(self, seq):
        """Map a symbol sequence to an int32 array of corner indices.

        Raises UnknownSymbolError with the offending position (0-based).
        """
        idx = self._index
        try:
            return np.fromiter((idx[s] for s in seq), dtype=np.intc, count=len(seq))
        except KeyError:
            for pos, s in enumerate(seq):
                if s not in idx:
                    raise UnknownSymbolError(s, pos) from None
            raise


def build_alphabet(symbols, explicit=False):
    """Build an Alphabet from a sequence of symbols.

    With explicit=True the input itself is the alphabet (duplicates are an
    error); otherwise the alphabet is the sorted set of unique symbols of
    the input sequence. Either way symbols are sorted before corners are
    assigned, so the assignment depends only on the symbol set.
    """
    items = list(symbols)
    if not items:
        raise AlphabetError("empty alphabet")
    if explicit and len(set(items)) != len(items):
        raise AlphabetError("duplicate symbols in explicit alphabet")
    uniq = sorted(set(items))
    m = len(uniq)
    h = max(1, math.ceil(math.log2(m))) if m > 1 else 1
    corners = {}
    index = {}
    for i, s in enumerate(uniq):
        corners[s] = tuple((i >> (h - 1 - j)) & 1 for j in range(h))
        index[s] = i
    return Alphabet(symbols=tuple(uniq), h=h, corners=corners, _index=index)


def corner_of(alphabet, symbol):
    """Corner bit vector of a symbol."""
    try:
        return alphabet.corners[symbol]
    except KeyError:
        raise UnknownSymbolError(symbol) from None


def symbol_of_corner(alphabet, bits):
    """Inverse corner lookup; errors on corners no symbol occupies."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != alphabet.h:
        raise AlphabetError(f"corner {bits} has length {len(bits)}, expected h={alphabet.h}")
    i = 0
    for b in bits:
        i = (i << 1) | (1 if b else 0)
    if i >= len(alphabet.symbols):
        raise UnusedCornerError(f"unused corner {bits} (index {i} >= {len(alphabet.symbols)})")
    return alphabet.symbols[i]
