"""Arithmetic in binary extension fields GF(2^m) via log/antilog tables."""

import numpy as np

# Default primitive polynomials, one per extension degree (bitmask, degree-m
# term included). Fixed constants so that independently built tables agree
# bit for bit.
DEFAULT_PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,            # x^4 + x + 1
    5: 0b100101,
    6: 0b1000011,          # x^6 + x + 1
    7: 0b10001001,
    8: 0b100011101,        # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class NonPrimitivePolynomialError(ValueError):
    """The construction polynomial does not generate the full multiplicative group."""


class Field:
    """GF(2^m) with table-based multiplication.

    Immutable after construction; safe for concurrent reads. Elements are
    plain integers in [0, 2^m).
    """

    def __init__(self, m, primitive_polynomial=None):
        if not 2 <= m <= 16:
            raise ValueError(f"extension degree must be in [2, 16], got {m}")
        if primitive_polynomial is None:
            primitive_polynomial = DEFAULT_PRIMITIVE_POLYS[m]
        if primitive_polynomial.bit_length() != m + 1:
            raise ValueError(
                f"polynomial must have degree exactly {m}, "
                f"got degree {primitive_polynomial.bit_length() - 1}"
            )
        self.m = m
        self.primitive_polynomial = primitive_polynomial
        self.order = (1 << m) - 1  # size of the multiplicative group

        size = 1 << m
        # exp table doubled so products of two logs index without a mod.
        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.zeros(size, dtype=np.int64)
        x = 1
        for i in range(self.order):
            if x == 1 and i > 0:
                # alpha's cycle closed early: polynomial is not primitive.
                raise NonPrimitivePolynomialError(
                    f"0x{primitive_polynomial:x} generates a group of order {i}, "
                    f"expected {self.order}"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & size:
                x ^= primitive_polynomial
        if x != 1:
            raise NonPrimitivePolynomialError(
                f"0x{primitive_polynomial:x} is not primitive over GF(2)"
            )
        exp[self.order:] = exp[:self.order]
        self.exp_table = exp
        self.log_table = log
        self.exp_table.setflags(write=False)
        self.log_table.setflags(write=False)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        return int(self.exp_table[self.order - self.log_table[a]])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0 in GF(2^m)")
            return 0
        return int(self.exp_table[(self.log_table[a] * e) % self.order])

    def alpha_pow(self, e):
        """alpha^e for the primitive element alpha = 0b10."""
        return int(self.exp_table[e % self.order])

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.m == other.m
            and self.primitive_polynomial == other.primitive_polynomial
        )

    def __hash__(self):
        return hash((self.m, self.primitive_polynomial))

    def __repr__(self):
        return f"Field(m={self.m}, poly=0x{self.primitive_polynomial:x})"
