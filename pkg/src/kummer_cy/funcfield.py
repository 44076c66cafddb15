"""The function field of the cyclic cover Y^7 = X^2 (X - 1) over Q(mu).

Normal form: sum_{k=0}^{6} c_k(X) Y^k with every c_k a reduced rational
function in X (monic denominator).  Y-powers >= 7 are always eliminated first,
then rational functions are reduced, so equality is a tuple comparison.
"""

from __future__ import annotations

from .cyclotomic import ONE, ZERO, Cyc

# -- univariate polynomials over Q(mu): tuples of Cyc, low degree first --------


def _trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return tuple(p)


def padd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n))


def pneg(a):
    return tuple(-c for c in a)


def pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def pscale(a, c: Cyc):
    return _trim(x * c for x in a)


def pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = b[-1].inverse()
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] * inv
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] = a[i + shift] - f * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def pmonic(a):
    if not a:
        return a
    return pscale(a, a[-1].inverse())


def pgcd(a, b):
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pderiv(a):
    return _trim(a[i] * i for i in range(1, len(a)))


def pconst(c) -> tuple:
    c = c if isinstance(c, Cyc) else Cyc.rational(c)
    return _trim((c,))


def pdeg(a) -> int:
    return len(a) - 1


X_POLY = (ZERO, ONE)


class RatFunc:
    """num/den in Q(mu)(X), always reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = _trim(num)
        den = pconst(1) if den is None else _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num:
                den = pconst(1)
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num = pdivmod(num, g)[0]
                    den = pdivmod(den, g)[0]
                lc = den[-1]
                if lc != ONE:
                    inv = lc.inverse()
                    num, den = pscale(num, inv), pscale(den, inv)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(pconst(c))

    @classmethod
    def x(cls) -> RatFunc:
        return cls(X_POLY)

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def const_value(self) -> Cyc:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num[0] if self.num else ZERO

    def __add__(self, o):
        o = _as_rf(o)
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num), self.den)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, reduce=False)

    def __sub__(self, o):
        return self + (-_as_rf(o))

    def __rsub__(self, o):
        return _as_rf(o) - self

    def __mul__(self, o):
        o = _as_rf(o)
        return RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o):
        return self * _as_rf(o).inverse()

    def __rtruediv__(self, o):
        return _as_rf(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RatFunc.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> RatFunc:
        # (n/d)' = (n'd - nd')/d^2
        return RatFunc(
            padd(pmul(pderiv(self.num), self.den), pneg(pmul(self.num, pderiv(self.den)))),
            pmul(self.den, self.den),
        )

    def compose(self, inner: RatFunc) -> RatFunc:
        """self(inner(X))."""
        return _horner(self.num, inner) / _horner(self.den, inner)

    def map_coeffs(self, f) -> RatFunc:
        return RatFunc(tuple(f(c) for c in self.num), tuple(f(c) for c in self.den))

    def __eq__(self, o):
        o = _as_rf(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({list(self.num)} / {list(self.den)})"


def _as_rf(o) -> RatFunc:
    if isinstance(o, RatFunc):
        return o
    return RatFunc.const(o)


def _horner(poly, x: RatFunc) -> RatFunc:
    acc = RatFunc.const(0)
    for c in reversed(poly):
        acc = acc * x + RatFunc(pconst(c) if not isinstance(c, Cyc) else _trim((c,)))
    return acc


# -- the function field -------------------------------------------------------

N = 7
# Y^7 = X^2 (X - 1) = X^3 - X^2
CURVE_RHS = RatFunc((ZERO, ZERO, -ONE, ONE))


class FuncFieldElem:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        coeffs = [_as_rf(c) for c in coeffs]
        # eliminate Y^k, k >= 7, using Y^7 = CURVE_RHS
        while len(coeffs) > N:
            top = coeffs.pop()
            k = len(coeffs)  # degree of the popped term
            coeffs[k - N] = coeffs[k - N] + top * CURVE_RHS
        coeffs += [RatFunc.const(0)] * (N - len(coeffs))
        self.c = tuple(coeffs)

    @classmethod
    def from_ratfunc(cls, r) -> FuncFieldElem:
        return cls([_as_rf(r)])

    @classmethod
    def X(cls) -> FuncFieldElem:
        return cls([RatFunc.x()])

    @classmethod
    def Y(cls) -> FuncFieldElem:
        return cls([RatFunc.const(0), RatFunc.const(1)])

    @classmethod
    def monomial(cls, coeff: RatFunc, k: int) -> FuncFieldElem:
        """coeff * Y^k for any integer k (negative powers use Y^-1 = Y^6 / (X^2 (X - 1)))."""
        q, r = divmod(k, N)
        coeffs = [RatFunc.const(0)] * N
        coeffs[r] = _as_rf(coeff) * CURVE_RHS ** q
        return cls(coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.c)

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.c) if not c.is_zero()]

    def is_monomial(self) -> bool:
        return len(self.support()) == 1

    def __add__(self, o):
        o = _as_ff(o)
        return FuncFieldElem([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return FuncFieldElem([-a for a in self.c])

    def __sub__(self, o):
        return self + (-_as_ff(o))

    def __rsub__(self, o):
        return _as_ff(o) - self

    def __mul__(self, o):
        o = _as_ff(o)
        out = [RatFunc.const(0)] * (2 * N - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(o.c):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return FuncFieldElem(out)

    __rmul__ = __mul__

    def inverse(self) -> FuncFieldElem:
        """Inverse of a monomial c(X) Y^k; general inverses are not needed here."""
        sup = self.support()
        if len(sup) != 1:
            raise NotImplementedError("only monomials c(X)*Y^k are inverted")
        k = sup[0]
        return FuncFieldElem.monomial(self.c[k].inverse(), -k)

    def __truediv__(self, o):
        return self * _as_ff(o).inverse()

    def __rtruediv__(self, o):
        return _as_ff(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = FuncFieldElem([RatFunc.const(1)]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> FuncFieldElem:
        """d/dX, with dY/dX = (3X^2 - 2X) Y / (7 X^2 (X - 1)) from differentiating the curve."""
        dy_dx = FuncFieldElem.monomial(CURVE_RHS.derivative() / (CURVE_RHS * 7), 1)
        total = FuncFieldElem([c.derivative() for c in self.c])
        for k, c in enumerate(self.c):
            if k and not c.is_zero():
                total = total + FuncFieldElem.monomial(c * k, k - 1) * dy_dx
        return total

    def substitute(self, x_image: RatFunc, y_image: FuncFieldElem) -> FuncFieldElem:
        """Image under the field map X -> x_image (a function of X alone), Y -> y_image.

        The caller is responsible for y_image^7 = x_image^2 (x_image - 1); see
        respects_curve.
        """
        result = FuncFieldElem([])
        ypow = FuncFieldElem([RatFunc.const(1)])
        for k, c in enumerate(self.c):
            if not c.is_zero():
                result = result + FuncFieldElem([c.compose(x_image)]) * ypow
            if k < N - 1:
                ypow = ypow * y_image
        return result

    def x_part(self) -> RatFunc:
        """The element as a rational function of X; fails if any Y-power survives."""
        if any(not c.is_zero() for c in self.c[1:]):
            raise ValueError("element involves Y")
        return self.c[0]

    def __eq__(self, o):
        return self.c == _as_ff(o).c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        parts = [f"({c})*Y^{k}" for k, c in enumerate(self.c) if not c.is_zero()]
        return "FF[" + " + ".join(parts or ["0"]) + "]"


def _as_ff(o) -> FuncFieldElem:
    if isinstance(o, FuncFieldElem):
        return o
    return FuncFieldElem([_as_rf(o)])


def respects_curve(x_image: RatFunc, y_image: FuncFieldElem) -> bool:
    """Whether (x_image, y_image) again satisfies Y^7 = X^2 (X - 1)."""
    lhs = y_image ** 7
    rhs = FuncFieldElem([x_image * x_image * (x_image - 1)])
    return lhs == rhs


class Differential:
    """f dX with f in the function field."""

    __slots__ = ("f",)

    def __init__(self, f: FuncFieldElem):
        self.f = f

    def pullback(self, x_image: RatFunc, y_image: FuncFieldElem) -> Differential:
        return Differential(self.f.substitute(x_image, y_image) * FuncFieldElem([x_image.derivative()]))

    def __eq__(self, o):
        return isinstance(o, Differential) and self.f == o.f

    def __repr__(self):
        return f"({self.f}) dX"
