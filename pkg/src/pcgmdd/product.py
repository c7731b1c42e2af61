"""Two-dimensional product code structure: encoding and membership checks."""

import numpy as np


class ProductCode:
    """Square product code with one component code for both rows and columns."""

    def __init__(self, component):
        self.component = component
        self.n = component.n
        self.k = component.k
        self.rate = component.k ** 2 / component.n ** 2

    def encode(self, message):
        """Encode a k x k message block into an n x n code array.

        The message occupies the top-left k x k block; rows are encoded
        first, then all n columns (the parity-on-parity block commutes).
        """
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.k, self.k):
            raise ValueError(f"message must be {self.k}x{self.k}")
        array = np.zeros((self.n, self.n), dtype=np.uint8)
        for i in range(self.k):
            array[i] = self.component.encode(message[i])
        for j in range(self.n):
            array[:, j] = self.component.encode(array[: self.k, j])
        return array

    def is_codeword(self, array):
        """True iff every row and every column is a component codeword."""
        array = np.asarray(array, dtype=np.uint8)
        if array.shape != (self.n, self.n):
            return False
        for i in range(self.n):
            if not self.component.is_codeword(array[i]):
                return False
        for j in range(self.n):
            if not self.component.is_codeword(array[:, j]):
                return False
        return True
