"""Exact arithmetic in Q(mu), mu = exp(2 pi i/7), and in the quadratic orders Z[omega], Z[eta].

Elements of Q(mu) are stored as six integer numerators over a common positive
denominator, in the power basis 1, mu, ..., mu^5 (mu^6 is eliminated with
1 + mu + ... + mu^6 = 0).  Z[mu] is exactly the set of elements with
denominator 1, so integrality tests are a single comparison.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd, isqrt

from .arith import is_prime

DEGREE = 6


class NotIntegralError(ArithmeticError):
    """Exact division left a non-integral quotient."""


def _reduce_powers(coeffs) -> list[int]:
    """Fold a coefficient list of arbitrary length onto 1, mu, ..., mu^5."""
    folded = [0] * 7
    for i, c in enumerate(coeffs):
        folded[i % 7] += c
    c6 = folded[6]
    return [folded[i] - c6 for i in range(DEGREE)]


class Cyc:
    """An element of Q(mu).  Immutable and hashable."""

    __slots__ = ("num", "den")

    def __init__(self, coeffs=(0, 0, 0, 0, 0, 0), den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = _reduce_powers(coeffs) if len(coeffs) != DEGREE else [int(c) for c in coeffs]
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    @classmethod
    def mu(cls, k: int = 1) -> Cyc:
        coeffs = [0] * 7
        coeffs[k % 7] = 1
        return cls(coeffs)

    @classmethod
    def rational(cls, q) -> Cyc:
        q = Fraction(q)
        return cls((q.numerator, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def from_fractions(cls, coeffs) -> Cyc:
        """Build from rational coefficients of 1, mu, mu^2, ... (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls([int(c * den) for c in fr], den)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> Cyc | None:
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.den * o.den // gcd(self.den, o.den)
        a, b = d // self.den, d // o.den
        return Cyc([x * a + y * b for x, y in zip(self.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyc([-x for x in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyc([x * other for x in self.num], self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [0] * 11
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(o.num):
                    if y:
                        prod[i + j] += x * y
        return Cyc(prod, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in Q(mu)")
        # x * prod_{k=2..6} sigma_k(x) = N(x), a rational number
        cof = self.galois(2)
        for k in range(3, 7):
            cof = cof * self.galois(k)
        n = (self * cof).rational_value()
        return cof * Cyc.rational(1 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def exact_div(self, other) -> Cyc:
        """Quotient in Z[mu]; raises NotIntegralError if it leaves Z[mu]."""
        q = self / other
        if not q.is_integral():
            raise NotIntegralError(f"{self!r} / {other!r} is not in Z[mu]")
        return q

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, k: int) -> Cyc:
        if k % 7 == 0:
            raise ValueError("galois index must be prime to 7")
        coeffs = [0] * 7
        for i, c in enumerate(self.num):
            coeffs[(i * k) % 7] += c
        return Cyc(coeffs, self.den)

    def conj(self) -> Cyc:
        return self.galois(6)

    def norm(self) -> Fraction:
        """Absolute norm Q(mu) -> Q."""
        p = self
        for k in range(2, 7):
            p = p * self.galois(k)
        return p.rational_value()

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*mu^{i}")
        body = " + ".join(terms) or "0"
        return f"Cyc({body})" if self.den == 1 else f"Cyc(({body})/{self.den})"

    def to_json(self):
        return {"num": list(self.num), "den": self.den}


ZERO = Cyc()
ONE = Cyc((1, 0, 0, 0, 0, 0))
MU = Cyc.mu(1)


def embed_eta() -> Cyc:
    """eta = mu + mu^2 + mu^4 as an element of Z[mu]."""
    return Cyc((0, 1, 1, 0, 1, 0))


def galois(k: int, x: Cyc) -> Cyc:
    """The automorphism of Q(mu) sending mu to mu^k."""
    return x.galois(k)


def sqrt_minus_7() -> Cyc:
    """sqrt(7)*i = 2*eta + 1, exactly."""
    return embed_eta() * 2 + 1


# ---------------------------------------------------------------------------
# Imaginary quadratic orders Z[tau], tau^2 + tau + c = 0
# ---------------------------------------------------------------------------


class Disc(enum.Enum):
    OMEGA = 1
    ETA = 2

    @property
    def c(self) -> int:
        return self.value

    @property
    def discriminant(self) -> int:
        return 1 - 4 * self.c

    @property
    def ramified_prime(self) -> int:
        return -self.discriminant


@dataclass(frozen=True)
class QuadInt:
    """a + b*tau in Z[tau]; tau is omega (c = 1) or eta (c = 2)."""

    a: int
    b: int
    tag: Disc

    def _check(self, other: QuadInt):
        if other.tag is not self.tag:
            raise TypeError("mixing Z[omega] and Z[eta]")

    def _lift(self, other):
        if isinstance(other, int):
            return QuadInt(other, 0, self.tag)
        if isinstance(other, QuadInt):
            self._check(other)
            return other
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.a + o.a, self.b + o.b, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.tag)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.a - o.a, self.b - o.b, self.tag)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        # tau^2 = -tau - c
        bd = self.b * o.b
        return QuadInt(
            self.a * o.a - self.tag.c * bd,
            self.a * o.b + self.b * o.a - bd,
            self.tag,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need a unit; use inverse_unit")
        result, base = QuadInt(1, 0, self.tag), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> QuadInt:
        return QuadInt(self.a - self.b, -self.b, self.tag)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.tag.c * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a - self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: QuadInt) -> bool:
        """Whether other / self lies in Z[tau]."""
        n = self.norm()
        q = other * self.conj()
        return q.a % n == 0 and q.b % n == 0

    def exact_div(self, other: QuadInt) -> QuadInt:
        n = other.norm()
        q = self * other.conj()
        if q.a % n or q.b % n:
            raise NotIntegralError(f"{self} / {other} is not in Z[tau]")
        return QuadInt(q.a // n, q.b // n, self.tag)

    def to_cyc(self) -> Cyc:
        if self.tag is not Disc.ETA:
            raise ValueError("only Z[eta] sits inside Z[mu]")
        return embed_eta() * self.b + self.a

    def to_json(self):
        return [self.a, self.b]

    def __repr__(self):
        sym = "w" if self.tag is Disc.OMEGA else "eta"
        return f"({self.a}{self.b:+d}{sym})"


def quad(a: int, b: int, tag: Disc) -> QuadInt:
    return QuadInt(a, b, tag)


def units(tag: Disc) -> list[QuadInt]:
    if tag is Disc.OMEGA:
        w = QuadInt(0, 1, tag)
        return [QuadInt(1, 0, tag), -QuadInt(1, 0, tag), w, -w, w * w, -(w * w)]
    return [QuadInt(1, 0, tag), QuadInt(-1, 0, tag)]


def quad_norm_conj(x: QuadInt) -> tuple[int, QuadInt]:
    return x.norm(), x.conj()


class RamifiedPrimeError(ValueError):
    pass


class NotPrimeError(ValueError):
    pass


@dataclass(frozen=True)
class SplitResult:
    p: int
    tag: Disc
    kind: str  # "SPLIT" or "INERT"
    pi: QuadInt | None = None

    @property
    def split(self) -> bool:
        return self.kind == "SPLIT"

    def associates(self) -> list[QuadInt]:
        """All generators of the two primes above p: units times pi and its conjugate."""
        if not self.split:
            return []
        out = []
        for base in (self.pi, self.pi.conj()):
            for u in units(self.tag):
                out.append(u * base)
        return out

    def to_json(self):
        return {"p": self.p, "kind": self.kind, "pi": None if self.pi is None else self.pi.to_json()}


def factor_rational_prime(p: int, tag: Disc) -> SplitResult:
    """Decide how p decomposes in Z[tau] and, if it splits, find a prime of norm p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == tag.ramified_prime:
        raise RamifiedPrimeError(f"{p} ramifies in Q(sqrt({tag.discriminant}))")
    bound = ceil(2 * math.sqrt(p))
    for b in range(0, bound + 1):
        for a in range(-bound, bound + 1):
            if a * a - a * b + tag.c * b * b == p:
                return SplitResult(p, tag, "SPLIT", QuadInt(a, b, tag))
    return SplitResult(p, tag, "INERT")


# ---------------------------------------------------------------------------
# Rigorous complex enclosures (display only)
# ---------------------------------------------------------------------------

_iv_lock = threading.Lock()


def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class ComplexBox:
    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction
    bits: int = 128

    def _out(self, rl, rh, il, ih) -> ComplexBox:
        b = self.bits
        return ComplexBox(_round_down(rl, b), _round_up(rh, b), _round_down(il, b), _round_up(ih, b), b)

    @classmethod
    def exact(cls, re, im=0, bits: int = 128) -> ComplexBox:
        re, im = Fraction(re), Fraction(im)
        return cls(re, re, im, im, bits)

    def __add__(self, o: ComplexBox) -> ComplexBox:
        return self._out(self.re_lo + o.re_lo, self.re_hi + o.re_hi, self.im_lo + o.im_lo, self.im_hi + o.im_hi)

    def __neg__(self):
        return ComplexBox(-self.re_hi, -self.re_lo, -self.im_hi, -self.im_lo, self.bits)

    def __sub__(self, o: ComplexBox) -> ComplexBox:
        return self + (-o)

    @staticmethod
    def _imul(a_lo, a_hi, b_lo, b_hi):
        ps = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
        return min(ps), max(ps)

    def __mul__(self, o: ComplexBox) -> ComplexBox:
        rr = self._imul(self.re_lo, self.re_hi, o.re_lo, o.re_hi)
        ii = self._imul(self.im_lo, self.im_hi, o.im_lo, o.im_hi)
        ri = self._imul(self.re_lo, self.re_hi, o.im_lo, o.im_hi)
        ir = self._imul(self.im_lo, self.im_hi, o.re_lo, o.re_hi)
        return self._out(rr[0] - ii[1], rr[1] - ii[0], ri[0] + ir[0], ri[1] + ir[1])

    def scale(self, k) -> ComplexBox:
        k = Fraction(k)
        lo_r, hi_r = sorted((self.re_lo * k, self.re_hi * k))
        lo_i, hi_i = sorted((self.im_lo * k, self.im_hi * k))
        return self._out(lo_r, hi_r, lo_i, hi_i)

    def contains(self, re=0, im=0) -> bool:
        re, im = Fraction(re), Fraction(im)
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def midpoint(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))

    def to_json(self):
        return {"re": [str(self.re_lo), str(self.re_hi)], "im": [str(self.im_lo), str(self.im_hi)]}

    @classmethod
    def mu_power(cls, k: int, bits: int = 128) -> ComplexBox:
        from mpmath import iv

        with _iv_lock:
            saved = iv.prec
            iv.prec = bits + 16
            try:
                angle = 2 * iv.pi * (k % 7) / 7
                c, s = iv.cos(angle), iv.sin(angle)
                rl, rh = (_mpf_to_fraction(t) for t in c._mpi_)
                il, ih = (_mpf_to_fraction(t) for t in s._mpi_)
            finally:
                iv.prec = saved
        return cls(_round_down(rl, bits), _round_up(rh, bits), _round_down(il, bits), _round_up(ih, bits), bits)

    @classmethod
    def of_cyc(cls, x: Cyc, bits: int = 128) -> ComplexBox:
        total = cls.exact(0, 0, bits)
        for i, c in enumerate(x.num):
            if c:
                total = total + cls.mu_power(i, bits).scale(c)
        return total.scale(Fraction(1, x.den))

    @classmethod
    def of_quad(cls, x: QuadInt, bits: int = 128) -> ComplexBox:
        # tau = -1/2 + i*sqrt(4c - 1)/2
        s = 4 * x.tag.c - 1
        lo = Fraction(isqrt(s * (1 << (2 * bits))), 1 << bits)
        hi = lo + Fraction(1, 1 << bits)
        tau = cls(Fraction(-1, 2), Fraction(-1, 2), lo / 2, hi / 2, bits)
        return cls.exact(x.a, 0, bits) + tau.scale(x.b)
