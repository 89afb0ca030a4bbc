"""Bidirectional CGR encoding with midpoint, circular and bidirectional seeding.

The elementary step maps a coordinate u halfway toward the corner of the
current symbol: u' = (u + corner) / 2, evaluated in plain binary64. Every
iterate is a dyadic rational, so short-sequence results are bit-exact and
testable against hand-computed values.

Midpoint seeding runs a single pass per direction from 1/2. The circular
and bidirectional modes re-seed and repeat passes until the coordinate
matrices stop changing: the pass map is a contraction with factor 2^-n, so
the tolerance is met within about ceil(53/n) passes, after which a few more
passes settle onto the floating-point fixed point (pure-repeat sequences
land exactly on their corner given enough passes).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_kernels
from .alphabet import Alphabet, symbol_of_corner
from .errors import UsmError

SEED_MODES = ("midpoint", "circular", "bidirectional")

#: Largest context depth binary64 coordinates can hold, in symbols.
PRECISION_HORIZON = 52


class ConvergenceWarning(UserWarning):
    """Seeding iteration hit the pass cap before meeting the tolerance."""


@dataclass(frozen=True)
class EncoderConfig:
    """Seeding strategy plus convergence controls.

    epsilon bounds the max absolute per-coordinate change between two
    successive same-direction passes; max_passes caps passes per direction;
    precision_horizon is the deepest context depth decode will trust.
    """

    seed_mode: str = "bidirectional"
    epsilon: float = 2.0 ** -52
    max_passes: int = 128
    precision_horizon: int = PRECISION_HORIZON

    def __post_init__(self):
        if self.seed_mode not in SEED_MODES:
            raise UsmError(f"seed_mode must be one of {SEED_MODES}, got {self.seed_mode!r}")
        if self.epsilon < 0:
            raise UsmError("epsilon must be >= 0")
        if self.max_passes < 1:
            raise UsmError("max_passes must be >= 1")
        if self.precision_horizon < 1:
            raise UsmError("precision_horizon must be >= 1")


@dataclass(frozen=True)
class UsmMap:
    """Forward and backward coordinate matrices for one sequence.

    forward[i] is the coordinate after consuming positions 0..i in reading
    order; backward[i] after consuming n-1..i in reverse. Both are n x h
    float64 arrays in [0, 1]. passes_used is the pass count per direction
    at which the convergence tolerance was met (1 for midpoint seeding).
    """

    sequence: tuple
    alphabet: Alphabet
    forward: np.ndarray = field(compare=False)
    backward: np.ndarray = field(compare=False)
    seed_mode: str
    passes_used: int
    converged: bool

    @property
    def n(self):
        return len(self.sequence)

    @property
    def h(self):
        return self.alphabet.h

    def coords(self, direction):
        """The n x h matrix for 'forward' or 'backward'."""
        if direction == "forward":
            return self.forward
        if direction == "backward":
            return self.backward
        raise UsmError(f"direction must be 'forward' or 'backward', got {direction!r}")


def encode_pass(seq, alphabet, seed, backward=False, _kernels=None):
    """One encoding sweep from an explicit seed; returns the n x h matrix."""
    codes = alphabet.encode_symbols(seq)
    seed = np.ascontiguousarray(seed, dtype=np.float64)
    if seed.shape != (alphabet.h,):
        raise UsmError(f"seed must have length h={alphabet.h}")
    if np.any((seed < 0.0) | (seed > 1.0)):
        raise UsmError("seed components must lie in [0, 1]")
    kern = _kernels if _kernels is not None else get_kernels()
    out = np.empty((len(codes), alphabet.h), dtype=np.float64)
    kern.encode_pass(codes, alphabet.corner_matrix(), seed, out, bool(backward))
    return out


def _sweep(kern, codes, corners, seed, backward, out):
    kern.encode_pass(codes, corners, seed, out, backward)
    return out


def _delta(a, b):
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def _iterate_circular(kern, codes, corners, h, backward, eps, max_passes):
    """Same-direction wrap-around seeding: pass p+1 is seeded by the final
    coordinate of pass p. Returns (matrix, pass_of_convergence_or_None)."""
    n = len(codes)
    seed = np.full(h, 0.5)
    cur = np.empty((n, h))
    prev = np.empty((n, h))
    _sweep(kern, codes, corners, seed, backward, cur)
    passes = 1
    conv_at = None
    last_d = None
    while passes < max_passes:
        cur, prev = prev, cur
        seed = prev[0].copy() if backward else prev[-1].copy()
        _sweep(kern, codes, corners, seed, backward, cur)
        passes += 1
        d = _delta(cur, prev)
        if conv_at is None and d <= eps:
            conv_at = passes
        if d == 0.0:
            break
        if conv_at is not None and last_d is not None and d >= last_d:
            break  # rounding plateau: no further progress possible
        last_d = d
    return cur, conv_at


def _iterate_bidirectional(kern, codes, corners, h, eps, max_passes):
    """Alternating-direction hand-off: forward's final coordinate seeds the
    backward sweep and vice versa. Convergence is judged per direction
    between successive same-direction sweeps."""
    n = len(codes)
    fwd = np.empty((n, h))
    bwd = np.empty((n, h))
    fwd_prev = np.empty((n, h))
    bwd_prev = np.empty((n, h))
    _sweep(kern, codes, corners, np.full(h, 0.5), False, fwd)
    _sweep(kern, codes, corners, fwd[-1].copy(), True, bwd)
    passes = 1
    conv_f = conv_b = None
    last_df = last_db = None
    while passes < max_passes:
        fwd, fwd_prev = fwd_prev, fwd
        bwd, bwd_prev = bwd_prev, bwd
        _sweep(kern, codes, corners, bwd_prev[0].copy(), False, fwd)
        _sweep(kern, codes, corners, fwd[-1].copy(), True, bwd)
        passes += 1
        df = _delta(fwd, fwd_prev)
        db = _delta(bwd, bwd_prev)
        if conv_f is None and df <= eps:
            conv_f = passes
        if conv_b is None and db <= eps:
            conv_b = passes
        if df == 0.0 and db == 0.0:
            break
        stuck_f = df == 0.0 or (conv_f is not None and last_df is not None and df >= last_df)
        stuck_b = db == 0.0 or (conv_b is not None and last_db is not None and db >= last_db)
        if stuck_f and stuck_b:
            break
        last_df, last_db = df, db
    conv = None if conv_f is None or conv_b is None else max(conv_f, conv_b)
    return fwd, bwd, conv


def encode(seq, alphabet, config=None, _kernels=None):
    """Encode a sequence into a UsmMap under the configured seeding.

    Non-convergence within max_passes is not an error: the map is returned
    with converged=False and a ConvergenceWarning is emitted.
    """
    if config is None:
        config = EncoderConfig()
    sequence = tuple(seq)
    if not sequence:
        raise UsmError("cannot encode an empty sequence")
    codes = alphabet.encode_symbols(sequence)
    corners = alphabet.corner_matrix()
    h = alphabet.h
    kern = _kernels if _kernels is not None else get_kernels()

    if config.seed_mode == "midpoint":
        n = len(codes)
        fwd = np.empty((n, h))
        bwd = np.empty((n, h))
        _sweep(kern, codes, corners, np.full(h, 0.5), False, fwd)
        _sweep(kern, codes, corners, np.full(h, 0.5), True, bwd)
        passes, converged = 1, True
    elif config.seed_mode == "circular":
        fwd, conv_f = _iterate_circular(kern, codes, corners, h, False,
                                        config.epsilon, config.max_passes)
        bwd, conv_b = _iterate_circular(kern, codes, corners, h, True,
                                        config.epsilon, config.max_passes)
        converged = conv_f is not None and conv_b is not None
        passes = max(conv_f, conv_b) if converged else config.max_passes
    else:
        fwd, bwd, conv = _iterate_bidirectional(kern, codes, corners, h,
                                                config.epsilon, config.max_passes)
        converged = conv is not None
        passes = conv if converged else config.max_passes

    if not converged:
        warnings.warn(
            f"{config.seed_mode} seeding did not reach epsilon={config.epsilon!r} "
            f"within {config.max_passes} passes",
            ConvergenceWarning,
            stacklevel=2,
        )
    return UsmMap(
        sequence=sequence,
        alphabet=alphabet,
        forward=fwd,
        backward=bwd,
        seed_mode=config.seed_mode,
        passes_used=passes,
        converged=converged,
    )


def decode(coords, depth, alphabet, direction="forward",
           precision_horizon=PRECISION_HORIZON):
    """Unfold a coordinate back into the symbols that produced it.

    Returns the most recently encoded symbol first: for a forward
    coordinate at position i that is s_i, s_{i-1}, ...; for a backward
    coordinate s_i, s_{i+1}, .... Each step reads one corner (bit_j = 1
    iff u_j >= 1/2, the same convention binning uses) and inverts the
    halving exactly: u <- 2u - bits.
    """
    if direction not in ("forward", "backward"):
        raise UsmError(f"direction must be 'forward' or 'backward', got {direction!r}")
    if depth < 1:
        raise UsmError("depth must be >= 1")
    if depth > precision_horizon:
        raise UsmError(f"depth {depth} exceeds the precision horizon ({precision_horizon})")
    u = [float(x) for x in coords]
    if len(u) != alphabet.h:
        raise UsmError(f"coordinate must have length h={alphabet.h}")
    if any(x < 0.0 or x > 1.0 for x in u):
        raise UsmError("coordinates must lie in [0, 1]")
    out = []
    for step in range(depth):
        bits = tuple(1 if x >= 0.5 else 0 for x in u)
        try:
            out.append(symbol_of_corner(alphabet, bits))
        except UsmError as exc:
            raise UsmError(f"coordinate not generated by this alphabet at step {step}: {exc}") from None
        u = [2.0 * x - b for x, b in zip(u, bits)]
    return out
