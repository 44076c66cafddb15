"""Prime fields and cubic extensions F_{p^3} = F_p[t]/(f).

Elements are plain ints: residues for F_p, and c0 + c1 p + c2 p^2 for F_{p^3}.
The cubic f is the lexicographically smallest monic irreducible cubic, where
x^3 + a2 x^2 + a1 x + a0 is ordered by (a2, a1, a0).
"""

from __future__ import annotations

from itertools import product

from .arith import is_prime


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.q = p
        self.degree = 1

    def elements(self):
        return range(self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def pow(self, a, n: int):
        return pow(a, n, self.p)

    def __repr__(self):
        return f"GF({self.p})"


def smallest_irreducible_cubic(p: int) -> tuple[int, int, int]:
    """(a0, a1, a2) of the first x^3 + a2 x^2 + a1 x + a0 without roots in F_p."""
    for a2, a1, a0 in product(range(p), repeat=3):
        if all((x ** 3 + a2 * x * x + a1 * x + a0) % p for x in range(p)):
            return a0, a1, a2
    raise AssertionError("unreachable: irreducible cubics exist over every prime field")


class CubicExtension:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.q = p ** 3
        self.degree = 3
        self.modulus = smallest_irreducible_cubic(p)
        q = self.q
        self._mul = [[0] * q for _ in range(q)] if q <= 4096 else None
        if self._mul is not None:
            for a in range(q):
                for b in range(a, q):
                    c = self._mul_slow(a, b)
                    self._mul[a][b] = self._mul[b][a] = c

    def _split(self, a):
        p = self.p
        return a % p, (a // p) % p, a // (p * p)

    def _join(self, c):
        p = self.p
        return c[0] % p + (c[1] % p) * p + (c[2] % p) * p * p

    def elements(self):
        return range(self.q)

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        x, y = self._split(a), self._split(b)
        return self._join([x[i] + y[i] for i in range(3)])

    def sub(self, a, b):
        x, y = self._split(a), self._split(b)
        return self._join([x[i] - y[i] for i in range(3)])

    def neg(self, a):
        return self._join([-c for c in self._split(a)])

    def _mul_slow(self, a, b):
        x, y = self._split(a), self._split(b)
        prod = [0] * 5
        for i in range(3):
            for j in range(3):
                prod[i + j] += x[i] * y[j]
        a0, a1, a2 = self.modulus
        # t^3 = -(a2 t^2 + a1 t + a0)
        for k in (4, 3):
            c = prod[k]
            prod[k] = 0
            prod[k - 1] -= c * a2
            prod[k - 2] -= c * a1
            prod[k - 3] -= c * a0
        return self._join(prod[:3])

    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def pow(self, a, n: int):
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def __repr__(self):
        return f"GF({self.p}^3)"


def field_of_order(q: int):
    for p in range(2, q + 1):
        if is_prime(p):
            if q == p:
                return PrimeField(p)
            if q == p ** 3:
                return CubicExtension(p)
    raise ValueError(f"only fields of order p or p^3 are supported, got {q}")
