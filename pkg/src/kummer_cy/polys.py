"""Sparse multivariate Laurent polynomials over an exact coefficient ring.

Coefficients may be ints, Fractions or Cyc; exponents are integer tuples and
may be negative, which lets monomial substitutions such as X = -Z2^3/(Z3^2 Z1)
stay inside the ring.
"""

from __future__ import annotations

from fractions import Fraction


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict, nvars: int):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c == 0}

    @classmethod
    def const(cls, c, nvars: int) -> MPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int, one=1) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): one}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1) -> MPoly:
        return cls({tuple(exps): coeff}, len(exps))

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other, self.nvars)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MPoly(out, self.nvars)

    def __rmul__(self, other):
        return MPoly({e: other * c for e, c in self.terms.items()}, self.nvars)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_inverse(self) -> MPoly:
        if not self.is_monomial():
            raise ValueError("only monomials are invertible here")
        (e, c), = self.terms.items()
        inv = Fraction(1, 1) / c if isinstance(c, (int, Fraction)) else 1 / c
        return MPoly({tuple(-x for x in e): inv}, self.nvars)

    def __pow__(self, n: int):
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = MPoly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = self._lift(other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def substitute(self, images) -> MPoly:
        """Ring map sending variable i to images[i] (an MPoly, possibly in other variables)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        result = MPoly({}, target)
        powers: dict = {}
        for e, c in self.terms.items():
            term = MPoly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            result = result + term
        return result

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def clear_denominators(self) -> tuple[MPoly, tuple[int, ...]]:
        """Multiply by the smallest monomial making every exponent nonnegative."""
        shift = tuple(max(0, -m) for m in self.min_exponents())
        return self * MPoly.monomial(shift, 1), shift

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divmod_exact(self, divisor: MPoly) -> tuple[MPoly, MPoly]:
        """Multivariate division by a single polynomial in lex order.

        Returns (quotient, remainder).  For a single divisor the remainder is
        zero exactly when divisor divides self.
        """
        q = MPoly({}, self.nvars)
        r = MPoly({}, self.nvars)
        f = self
        le, lc = divisor.leading()
        inv_lc = Fraction(1, lc) if isinstance(lc, int) else 1 / lc
        while f.terms:
            e, c = f.leading()
            if all(a >= b for a, b in zip(e, le)):
                t = MPoly({tuple(a - b for a, b in zip(e, le)): c * inv_lc}, self.nvars)
                q = q + t
                f = f - t * divisor
            else:
                r = r + MPoly({e: c}, self.nvars)
                f = f - MPoly({e: c}, self.nvars)
        return q, r

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(f"x{i}^{k}" if k != 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{self.terms[e]}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)
