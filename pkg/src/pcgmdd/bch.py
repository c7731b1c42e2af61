"""BCH / extended-BCH component codec.

Encoding, errors-only bounded distance decoding (Berlekamp-Massey + Chien
search), and algebraic error-erasure decoding. Bit convention: array index i
holds the coefficient of x^(n'-1-i) of the inner cyclic word of length
n' = 2^m - 1; for extended codes the overall parity bit sits at index n'.
The message occupies indices 0..k-1 (systematic).
"""

from dataclasses import dataclass

import numpy as np

from .gf2m import Field


class InvalidParametersError(ValueError):
    """Requested BCH parameters do not yield a valid code."""


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one component decoding attempt.

    ``codeword`` is None iff the attempt declared a failure.
    """

    codeword: np.ndarray | None

    @property
    def ok(self):
        return self.codeword is not None


FAILURE = DecodeOutcome(None)


def _poly_mod2_rem(dividend, divisor):
    """Remainder of GF(2) polynomial division, polynomials as int bitmasks."""
    dlen = divisor.bit_length()
    while dividend.bit_length() >= dlen:
        dividend ^= divisor << (dividend.bit_length() - dlen)
    return dividend


def _poly_mod2_mul(a, b):
    """Carry-less product of GF(2) polynomials as int bitmasks."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _minimal_polynomial(field, exponent):
    """Minimal polynomial over GF(2) of alpha^exponent, as an int bitmask."""
    n = field.order
    coset = set()
    e = exponent % n
    while e not in coset:
        coset.add(e)
        e = (2 * e) % n
    # prod (x - alpha^j) over the coset, computed over GF(2^m)
    poly = [1]
    for j in coset:
        root = field.alpha_pow(j)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] ^= field.mul(c, root)
            nxt[i + 1] ^= c
        poly = nxt
    assert all(c in (0, 1) for c in poly)
    mask = 0
    for i, c in enumerate(poly):
        mask |= c << i
    return mask


class ComponentCode:
    """Narrow-sense BCH code, optionally extended by one overall parity bit.

    Immutable after construction; decode methods are pure functions.
    """

    def __init__(self, m, t_design, extended=False, field=None):
        if t_design < 1:
            raise InvalidParametersError("t_design must be >= 1")
        self.field = field if field is not None else Field(m)
        self.t_design = t_design
        self.extended = bool(extended)
        self.inner_n = self.field.order  # 2^m - 1

        generator = 1
        seen = set()
        for e in range(1, 2 * t_design + 1):
            mp = _minimal_polynomial(self.field, e)
            if mp not in seen:
                seen.add(mp)
                generator = _poly_mod2_mul(generator, mp)
        self.generator_polynomial = generator
        deg = generator.bit_length() - 1
        if deg >= self.inner_n:
            raise InvalidParametersError(
                f"generator degree {deg} >= code length {self.inner_n}"
            )
        self.k = self.inner_n - deg
        self.n = self.inner_n + 1 if self.extended else self.inner_n
        self.d_min = 2 * t_design + 2 if self.extended else 2 * t_design + 1
        self.t = (self.d_min - 1) // 2

        # syndrome power table: spow[s, i] = alpha^((s+1) * (n'-1-i))
        n = self.inner_n
        degrees = np.arange(n - 1, -1, -1, dtype=np.int64)
        rows = []
        for s in range(1, 2 * t_design + 1):
            rows.append(self.field.exp_table[(s * degrees) % n])
        self._spow = np.array(rows, dtype=np.int64)
        self._num_syndromes = 2 * t_design

    def encode(self, message):
        """Systematic encoding of k message bits into an n-bit codeword."""
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.k,):
            raise ValueError(f"message must have length {self.k}")
        msg_int = 0
        for bit in message:
            msg_int = (msg_int << 1) | int(bit)
        shifted = msg_int << (self.inner_n - self.k)
        rem = _poly_mod2_rem(shifted, self.generator_polynomial)
        word = np.zeros(self.n, dtype=np.uint8)
        word[: self.k] = message
        for i in range(self.inner_n - self.k):
            word[self.inner_n - 1 - i] = (rem >> i) & 1
        if self.extended:
            word[self.inner_n] = int(word[: self.inner_n].sum()) & 1
        return word

    def syndromes(self, inner_bits):
        """Syndromes S_1..S_2t of the inner cyclic word."""
        idx = np.flatnonzero(inner_bits)
        if idx.size == 0:
            return np.zeros(self._num_syndromes, dtype=np.int64)
        return np.bitwise_xor.reduce(self._spow[:, idx], axis=1)

    def is_codeword(self, word):
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.n,):
            return False
        if not np.all(self.syndromes(word[: self.inner_n]) == 0):
            return False
        if self.extended and int(word.sum()) & 1:
            return False
        return True

    def _berlekamp_massey(self, synd):
        """Error locator polynomial (list of coefficients, ascending) and its L."""
        f = self.field
        C = [1]
        B = [1]
        L = 0
        shift = 1
        b = 1
        for step in range(len(synd)):
            d = int(synd[step])
            for i in range(1, L + 1):
                if i < len(C) and C[i]:
                    d ^= f.mul(C[i], int(synd[step - i]))
            if d == 0:
                shift += 1
            elif 2 * L <= step:
                T = C[:]
                coef = f.div(d, b)
                need = len(B) + shift
                if len(C) < need:
                    C = C + [0] * (need - len(C))
                for i, c in enumerate(B):
                    C[i + shift] ^= f.mul(coef, c)
                L = step + 1 - L
                B = T
                b = d
                shift = 1
            else:
                coef = f.div(d, b)
                need = len(B) + shift
                if len(C) < need:
                    C = C + [0] * (need - len(C))
                for i, c in enumerate(B):
                    C[i + shift] ^= f.mul(coef, c)
                shift += 1
        while len(C) > 1 and C[-1] == 0:
            C.pop()
        return C, L

    def _chien_positions(self, locator):
        """Array indices of error positions, roots of the locator polynomial."""
        f = self.field
        n = self.inner_n
        # evaluate locator at alpha^e for e = 0..n-1, vectorized per coefficient
        e = np.arange(n, dtype=np.int64)
        vals = np.full(n, locator[0], dtype=np.int64)
        for j in range(1, len(locator)):
            c = locator[j]
            if c:
                vals ^= f.exp_table[(f.log_table[c] + j * e) % f.order]
        root_exps = np.flatnonzero(vals == 0)
        # root alpha^e corresponds to error at coefficient degree (n - e) mod n,
        # i.e. array index n - 1 - ((n - e) mod n)
        degs = (n - root_exps) % n
        return n - 1 - degs

    def _decode_inner(self, inner_bits):
        """BDD of the inner cyclic word within radius t_design; None on failure."""
        synd = self.syndromes(inner_bits)
        if not synd.any():
            return inner_bits.copy()
        locator, L = self._berlekamp_massey(synd)
        if L > self.t_design or len(locator) - 1 != L:
            return None
        positions = self._chien_positions(locator)
        if positions.size != L:
            return None
        corrected = inner_bits.copy()
        corrected[positions] ^= 1
        # cheap validity recheck: flip contributions out of the syndromes
        for pos in positions:
            synd = synd ^ self._spow[:, pos]
        if synd.any():
            return None
        return corrected

    def bdd_decode(self, word):
        """Bounded distance decoding: nearest codeword within radius t, or failure.

        Miscorrections are not suppressed; any codeword within Hamming
        distance t of the input is a valid output.
        """
        word = np.asarray(word, dtype=np.uint8)
        inner = self._decode_inner(word[: self.inner_n])
        if inner is None:
            return FAILURE
        if not self.extended:
            return DecodeOutcome(inner)
        full = np.empty(self.n, dtype=np.uint8)
        full[: self.inner_n] = inner
        full[self.inner_n] = int(inner.sum()) & 1
        if int(np.count_nonzero(full != word)) > self.t:
            return FAILURE
        return DecodeOutcome(full)

    def erasure_decode(self, word, erasures):
        """Error-erasure decoding: succeeds when 2e + f <= d_min - 1.

        ``erasures`` is a sequence of array indices whose bit values are
        ignored. Realized by the two-trial fill method: erased positions are
        substituted with all-zeros and all-ones, errors-only BDD runs on each
        trial, and a result is kept iff the errors e counted outside the
        erasure set satisfy 2e + f <= d_min - 1. Ties go to the trial with
        smaller e, then to the zero fill.
        """
        word = np.asarray(word, dtype=np.uint8)
        erasures = np.asarray(sorted(set(int(p) for p in erasures)), dtype=np.int64)
        f = erasures.size
        if f == 0:
            return self.bdd_decode(word)
        if f > self.d_min - 1:
            raise ValueError(f"at most d_min-1 = {self.d_min - 1} erasures, got {f}")

        keep = np.ones(self.n, dtype=bool)
        keep[erasures] = False
        best = None  # (e, codeword)
        for fill in (0, 1):
            trial = word.copy()
            trial[erasures] = fill
            outcome = self._trial_decode(trial)
            if outcome is None:
                continue
            e = int(np.count_nonzero((outcome != word) & keep))
            if 2 * e + f > self.d_min - 1:
                continue
            if best is None or e < best[0]:
                best = (e, outcome)
        if best is None:
            return FAILURE
        return DecodeOutcome(best[1])

    def _trial_decode(self, trial):
        """Errors-only decode of a filled trial word to a full codeword, or None."""
        inner = self._decode_inner(trial[: self.inner_n])
        if inner is None:
            return None
        if not self.extended:
            return inner
        full = np.empty(self.n, dtype=np.uint8)
        full[: self.inner_n] = inner
        full[self.inner_n] = int(inner.sum()) & 1
        return full

    def __repr__(self):
        return (
            f"ComponentCode(n={self.n}, k={self.k}, d_min={self.d_min}, "
            f"extended={self.extended})"
        )


def code_new(m, t_design, extended=False):
    """Construct a narrow-sense BCH (or eBCH) component code."""
    return ComponentCode(m, t_design, extended=extended)
