"""Exact dense linear algebra over a prime field F_p.

Matrices are plain numpy ``int64`` arrays whose entries are canonical
representatives ``0..p-1``.  All routines are deterministic: elimination
always picks the first nonzero pivot, so reduced forms, kernel bases and
image bases depend only on the input, never on a seed.

Entry bounds stay far from overflow: with p <= 32003 a product of two
canonical entries is below 2**31 and row operations accumulate at most
``cols`` such products, well inside int64 range.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch

DEFAULT_PRIME = 101


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Arithmetic and elimination helpers for dense matrices over F_p."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # -- construction -------------------------------------------------

    def mat(self, data) -> np.ndarray:
        """Canonicalize ``data`` into an int64 matrix with entries mod p."""
        m = np.array(data, dtype=np.int64)
        if m.ndim == 1:
            m = m.reshape(-1, 1)
        if m.ndim != 2:
            raise ShapeMismatch(f"expected a matrix, got ndim={m.ndim}")
        return np.mod(m, self.p)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    # -- arithmetic ----------------------------------------------------

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.mod(a + b, self.p)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.mod(a - b, self.p)

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return np.mod(c * a, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
        return np.mod(a @ b, self.p)

    def inv_scalar(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, self.p - 2, self.p)

    # -- elimination ---------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int], int]:
        """Reduced row-echelon form.

        Returns ``(R, pivots, rank)`` where ``R`` is row-equivalent to
        ``m``, pivot columns are strictly increasing and pivot entries
        are 1 with zeros above and below.
        """
        r = np.mod(np.array(m, dtype=np.int64), self.p)
        rows, cols = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(cols):
            if row >= rows:
                break
            nz = np.nonzero(r[row:, col])[0]
            if nz.size == 0:
                continue
            pivot = row + int(nz[0])
            if pivot != row:
                r[[row, pivot]] = r[[pivot, row]]
            r[row] = np.mod(r[row] * self.inv_scalar(r[row, col]), self.p)
            others = np.nonzero(r[:, col])[0]
            for other in others:
                if other != row:
                    r[other] = np.mod(r[other] - r[other, col] * r[row], self.p)
            pivots.append(col)
            row += 1
        return r, pivots, len(pivots)

    def rank(self, m: np.ndarray) -> int:
        return self.rref(m)[2]

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning ker(m); shape (cols, nullity)."""
        rows, cols = m.shape
        r, pivots, rank = self.rref(m)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for k, fc in enumerate(free):
            basis[fc, k] = 1
            for i, pc in enumerate(pivots):
                basis[pc, k] = (-r[i, fc]) % self.p
        return basis

    def image_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns of ``m`` forming a basis of the column space."""
        _, pivots, _ = self.rref(m)
        return m[:, pivots].copy()

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution of ``a @ x = b`` or None when inconsistent."""
        x = self.solve_matrix(a, b.reshape(-1, 1) if b.ndim == 1 else b)
        if x is None:
            return None
        return x[:, 0] if b.ndim == 1 else x

    def solve_matrix(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution of ``a @ X = b`` column-wise, or None."""
        if a.shape[0] != b.shape[0]:
            raise ShapeMismatch(f"cannot solve {a.shape} X = {b.shape}")
        rows, cols = a.shape
        aug = np.hstack([a, np.mod(b, self.p)])
        r, pivots, rank = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x

    def inverse(self, m: np.ndarray) -> np.ndarray | None:
        """Inverse of a square matrix, or None when singular."""
        n, c = m.shape
        if n != c:
            raise ShapeMismatch(f"cannot invert non-square {m.shape}")
        if n == 0:
            return self.zeros(0, 0)
        x = self.solve_matrix(m, self.identity(n))
        if x is None:
            return None
        return x

    def is_invertible(self, m: np.ndarray) -> bool:
        n, c = m.shape
        return n == c and self.rank(m) == n

    def det(self, m: np.ndarray) -> int:
        """Determinant mod p via Gaussian elimination."""
        n, c = m.shape
        if n != c:
            raise ShapeMismatch(f"determinant needs a square matrix, got {m.shape}")
        a = np.mod(np.array(m, dtype=np.int64), self.p)
        det = 1
        for col in range(n):
            nz = np.nonzero(a[col:, col])[0]
            if nz.size == 0:
                return 0
            pivot = col + int(nz[0])
            if pivot != col:
                a[[col, pivot]] = a[[pivot, col]]
                det = (-det) % self.p
            det = (det * int(a[col, col])) % self.p
            inv = self.inv_scalar(a[col, col])
            for row in range(col + 1, n):
                if a[row, col]:
                    a[row] = np.mod(a[row] - inv * a[row, col] * a[col], self.p)
        return det
