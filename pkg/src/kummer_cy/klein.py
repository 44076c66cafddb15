"""The Klein quartic Z1^3 Z2 + Z2^3 Z3 + Z3^3 Z1 = 0 and its order-168 symmetry group.

Group elements are 3x3 matrices over Q(mu) held as tuples of tuples of Cyc, so
they hash and compare exactly.  The generator r has entries (mu^a - mu^b)
divided by -sqrt(-7), and sqrt(-7) = 2*eta + 1 keeps everything inside Q(mu).
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .arith import divisors
from .cyclotomic import ONE, ZERO, Cyc, sqrt_minus_7
from .funcfield import Differential, FuncFieldElem, RatFunc, respects_curve
from .intlattice import in_span
from .polys import MPoly

Matrix = tuple  # 3x3 tuple of tuples of Cyc


def mat(rows) -> Matrix:
    return tuple(tuple(x if isinstance(x, Cyc) else Cyc.rational(x) for x in row) for row in rows)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(n)), ZERO) for j in range(n)) for i in range(n)
    )


IDENTITY = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def mat_pow(A: Matrix, n: int) -> Matrix:
    if n < 0:
        return mat_pow(mat_inv(A), -n)
    result, base = IDENTITY, A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def mat_det(A: Matrix) -> Cyc:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def mat_inv(A: Matrix) -> Matrix:
    d = mat_det(A).inverse()
    cof = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            cof[j][i] = minor * d if (i + j) % 2 == 0 else -minor * d
    return mat(cof)


def mat_map(A: Matrix, f) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in A)


def _m(k: int) -> Cyc:
    return Cyc.mu(k)


def klein_generators() -> dict[str, Matrix]:
    g = mat([[_m(4), 0, 0], [0, _m(2), 0], [0, 0, _m(1)]])
    h = mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    a = _m(1) - _m(6)
    b = _m(2) - _m(5)
    c = _m(4) - _m(3)
    scale = -sqrt_minus_7().inverse()
    r = mat_map(mat([[a, b, c], [b, c, a], [c, a, b]]), lambda x: x * scale)
    return {"g": g, "h": h, "r": r}


def group_relations() -> dict[str, bool]:
    gens = klein_generators()
    g, h, r = gens["g"], gens["h"], gens["r"]
    return {
        "g^7 = 1": mat_pow(g, 7) == IDENTITY,
        "h^3 = 1": mat_pow(h, 3) == IDENTITY,
        "r^2 = 1": mat_pow(r, 2) == IDENTITY,
        "(r g^4)^4 = 1": mat_pow(mat_mul(r, mat_pow(g, 4)), 4) == IDENTITY,
        "(r h)^2 = 1": mat_pow(mat_mul(r, h), 2) == IDENTITY,
        "h^-1 g h = g^2": mat_mul(mat_mul(mat_inv(h), g), h) == mat_pow(g, 2),
    }


def closure(generators) -> set:
    """All products of the generators, by breadth-first multiplication."""
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = mat_mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def verify_group_presentation() -> dict:
    gens = klein_generators()
    small = closure([gens["g"], gens["h"]])
    big = closure([gens["g"], gens["h"], gens["r"]])
    return {
        "relations": group_relations(),
        "order_gh": len(small),
        "order_ghr": len(big),
        "dets_one": all(mat_det(M) == ONE for M in gens.values()),
        "elements": big,
    }


# -- the quartic -------------------------------------------------------------


def phi4() -> MPoly:
    return MPoly({(3, 1, 0): ONE, (0, 3, 1): ONE, (1, 0, 3): ONE}, 3)


def linear_substitution(M: Matrix) -> list[MPoly]:
    """Images of Z1, Z2, Z3 under Z -> M Z."""
    return [
        MPoly({(1, 0, 0): M[i][0], (0, 1, 0): M[i][1], (0, 0, 1): M[i][2]}, 3) for i in range(3)
    ]


def quartic_invariance(M: Matrix) -> bool:
    f = phi4()
    return f.substitute(linear_substitution(M)) == f


def eval_phi4(P):
    z1, z2, z3 = P
    return z1 ** 3 * z2 + z2 ** 3 * z3 + z3 ** 3 * z1


# -- projective points and divisors ------------------------------------------

NAMED_POINTS = {
    "q0": (Fraction(1), Fraction(0), Fraction(0)),
    "q1": (Fraction(0), Fraction(0), Fraction(1)),
    "qinf": (Fraction(0), Fraction(1), Fraction(0)),
}


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    @classmethod
    def of(cls, coords, p: int | None = None) -> ProjPoint:
        if p is None:
            coords = tuple(Fraction(c) for c in coords)
            lead = next(c for c in coords if c != 0)
            return cls(tuple(c / lead for c in coords))
        coords = tuple(c % p for c in coords)
        lead = next(c for c in coords if c)
        inv = pow(lead, -1, p)
        return cls(tuple(c * inv % p for c in coords))

    def name(self) -> str:
        for n, c in NAMED_POINTS.items():
            if ProjPoint.of(c) == self:
                return n
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class CurveDivisor:
    """Formal sum of named points, kept as a sorted tuple of (name, multiplicity)."""

    terms: tuple

    @classmethod
    def of(cls, counts) -> CurveDivisor:
        c = Counter()
        for k, v in dict(counts).items():
            c[k] += v
        return cls(tuple(sorted((k, v) for k, v in c.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def degree(self) -> int:
        return sum(v for _, v in self.terms)

    def __add__(self, o: CurveDivisor) -> CurveDivisor:
        c = Counter(self.as_dict())
        c.update(o.as_dict())
        return CurveDivisor.of(c)

    def __sub__(self, o: CurveDivisor) -> CurveDivisor:
        c = Counter(self.as_dict())
        c.subtract(o.as_dict())
        return CurveDivisor.of(c)

    def __str__(self):
        return " + ".join(f"{v}{k}" if v != 1 else k for k, v in self.terms) or "0"


class SingularPointError(ArithmeticError):
    pass


def gradient_phi4(P):
    z1, z2, z3 = P
    return (3 * z1 * z1 * z2 + z3 ** 3, z1 ** 3 + 3 * z2 * z2 * z3, z2 ** 3 + 3 * z3 * z3 * z1)


def _line_points(line, base):
    """A second point spanning the line with the given base point."""
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)):
        cand = tuple(Fraction(c) for c in cand)
        if sum(a * b for a, b in zip(line, cand)) != 0:
            continue
        cross = (
            base[1] * cand[2] - base[2] * cand[1],
            base[2] * cand[0] - base[0] * cand[2],
            base[0] * cand[1] - base[1] * cand[0],
        )
        if any(cross):
            return cand
    # generic fallback: kernel of the line functional
    a, b, c = line
    for cand in ((b, -a, 0), (c, 0, -a), (0, c, -b)):
        cand = tuple(Fraction(x) for x in cand)
        if any(cand):
            cross = (
                base[1] * cand[2] - base[2] * cand[1],
                base[2] * cand[0] - base[0] * cand[2],
                base[0] * cand[1] - base[1] * cand[0],
            )
            if any(cross):
                return cand
    raise ValueError("degenerate line")


def _binary_form(base, other) -> list[Fraction]:
    """Coefficients c_k of Phi4(s*base + t*other) = sum_k c_k s^(4-k) t^k."""
    s_t = [MPoly({(1, 0): Fraction(a), (0, 1): Fraction(b)}, 2) for a, b in zip(base, other)]
    f = MPoly({(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1}, 3).substitute(s_t)
    return [Fraction(f.coefficient((4 - k, k))) for k in range(5)]


def _rational_roots(poly):
    """Rational roots, with multiplicity, of a polynomial given highest degree first.

    Returns (roots, cofactor) where the cofactor has no rational roots.
    """
    poly = [Fraction(c) for c in poly]
    roots = []
    while len(poly) > 1:
        if poly[-1] == 0:
            poly.pop()
            roots.append(Fraction(0))
            continue
        den = math.lcm(*(c.denominator for c in poly))
        ints = [int(c * den) for c in poly]
        cands = sorted({Fraction(sgn * a, b) for a in divisors(ints[-1]) for b in divisors(ints[0]) for sgn in (1, -1)})
        for r in cands:
            val = Fraction(0)
            for c in poly:
                val = val * r + c
            if val == 0:
                quotient = [poly[0]]
                for c in poly[1:-1]:
                    quotient.append(c + quotient[-1] * r)
                poly = quotient
                roots.append(r)
                break
        else:
            break
    return roots, poly


def tangent_divisor(q: str) -> dict:
    """Intersection divisor of the tangent line at a g-fixed point with the quartic."""
    base = NAMED_POINTS[q]
    grad = gradient_phi4(base)
    if not any(grad):
        raise SingularPointError(f"gradient vanishes at {q}")
    other = _line_points(grad, base)
    coeffs = _binary_form(base, other)
    # t^m divides the form exactly when the base point has multiplicity m
    mult_base = next(k for k, c in enumerate(coeffs) if c != 0)
    counts = Counter({ProjPoint.of(base).name(): mult_base})
    # remaining roots have t != 0; at t = 1 the form is a polynomial in s of degree 4 - m
    roots, rest = _rational_roots(coeffs[mult_base:])
    for r in roots:
        pt = tuple(r * a + b for a, b in zip(base, other))
        counts[ProjPoint.of(pt).name()] += 1
    divisor = CurveDivisor.of(counts)
    residual_degree = len(rest) - 1
    return {
        "point": q,
        "line": [str(x) for x in grad],
        "divisor": divisor,
        "degree": divisor.degree() + residual_degree,
        "residual_degree": residual_degree,
    }


def _div(**kw) -> CurveDivisor:
    return CurveDivisor.of(kw)


TANGENT_RELATIONS = [
    (_div(q0=2, q1=1), _div(qinf=3)),
    (_div(q1=2, qinf=1), _div(q0=3)),
    (_div(qinf=2, q0=1), _div(q1=3)),
]

SINGLETON_CLASSES = [_div(q1=1, qinf=2), _div(q0=2, qinf=1), _div(q0=1, q1=1, qinf=1), _div(q0=1, q1=2)]

BASIS_NAMES = ("q0", "q1", "qinf")


def _vec(D: CurveDivisor) -> list[int]:
    d = D.as_dict()
    return [d.get(n, 0) for n in BASIS_NAMES]


def phiq_identities() -> dict:
    """Linear-equivalence consequences of the three tangent divisors.

    All lines cut linearly equivalent divisors, so the differences of the
    tangent divisors generate the known relations among divisors supported on
    the g-fixed points.  Two divisors are identified when their difference
    lies in the integer span of those relations.
    """
    lines = [tangent_divisor(q)["divisor"] for q in BASIS_NAMES]
    relations = [_vec(lines[0] - lines[1]), _vec(lines[1] - lines[2])]

    def equivalent(D1, D2) -> bool:
        return in_span(relations, _vec(D1 - D2)) is not None

    identities = {f"{a} ~ {b}": equivalent(a, b) for a, b in TANGENT_RELATIONS}

    s3 = [CurveDivisor.of(Counter(c)) for c in combinations_with_replacement(BASIS_NAMES, 3)]
    classes: list[list[CurveDivisor]] = []
    for D in s3:
        for cls in classes:
            if equivalent(cls[0], D):
                cls.append(D)
                break
        else:
            classes.append([D])
    pairs = [c for c in classes if len(c) == 2]
    singles = [c[0] for c in classes if len(c) == 1]
    expected_pairs = {frozenset(p) for p in TANGENT_RELATIONS}
    return {
        "tangent_divisors": [str(D) for D in lines],
        "identities": identities,
        "s3_size": len(s3),
        "classes": [[str(D) for D in c] for c in classes],
        "pairs_match": {frozenset(p) for p in pairs} == expected_pairs,
        "singletons": [str(D) for D in singles],
        "singletons_match": set(singles) == set(SINGLETON_CLASSES),
        "class_count": len(classes),
    }


# -- affine model and differentials ------------------------------------------


def _laurent(exps, coeff=ONE) -> MPoly:
    return MPoly.monomial(exps, coeff)


def _affine_coordinates(z_images=None):
    """X = -Z2^3/(Z3^2 Z1), Y = Z2/Z3 as Laurent polynomials, optionally after Z -> images."""
    Y = _laurent((0, 1, -1))
    X = _laurent((-1, 3, -2), -ONE)
    if z_images is not None:
        Y, X = Y.substitute(z_images), X.substitute(z_images)
    return X, Y


def _vanishes_on_quartic(expr: MPoly) -> bool:
    num, _ = expr.clear_denominators()
    if num.is_zero():
        return True
    _, rem = num.divmod_exact(phi4())
    return rem.is_zero()


def coordinate_maps() -> dict:
    gens = klein_generators()
    X, Y = _affine_coordinates()
    curve = Y ** 7 - X * X * (X - ONE)
    results = {"affine_equation_on_quartic": _vanishes_on_quartic(curve)}

    # the generator g, pushed through the coordinate maps
    Xg, Yg = _affine_coordinates(linear_substitution(gens["g"]))
    results["g_fixes_X"] = Xg == X
    results["g_scales_Y_by_mu"] = Yg == Y * Cyc.mu(1)

    # h: X' = 1/(1-X) and Y' = -X/Y^3 modulo the quartic
    Xh, Yh = _affine_coordinates(linear_substitution(gens["h"]))
    results["h_X_is_1_over_1_minus_X"] = _vanishes_on_quartic(Xh * (ONE - X) - ONE)
    results["h_Y_is_minus_X_over_Y3"] = _vanishes_on_quartic(Yh * Y ** 3 + X)

    # the affine version of h inside the function field
    xh, yh = affine_h()
    results["affine_h_preserves_curve"] = respects_curve(xh, yh)
    x1, y1 = RatFunc.x(), FuncFieldElem.Y()
    for _ in range(3):
        x1, y1 = x1.compose(xh), y1.substitute(xh, yh)
    results["affine_h_cubed_is_identity"] = x1 == RatFunc.x() and y1 == FuncFieldElem.Y()
    xg, yg = affine_g()
    results["affine_g_preserves_curve"] = respects_curve(xg, yg)
    return results


def affine_g():
    return RatFunc.x(), FuncFieldElem.Y() * Cyc.mu(1)


def affine_h():
    X = RatFunc.x()
    return RatFunc.const(1) / (RatFunc.const(1) - X), FuncFieldElem([-X]) / FuncFieldElem.Y() ** 3


def differential_basis() -> list[Differential]:
    X = RatFunc.x()
    Y = FuncFieldElem.Y()
    return [
        Differential(-(Y ** -3)),
        Differential(FuncFieldElem([X]) * Y ** -5),
        Differential(FuncFieldElem([X]) * Y ** -6),
    ]


class NonReducibleError(ArithmeticError):
    pass


def express_in_basis(form: Differential, basis) -> list[Cyc]:
    """Constant coefficients c_j with form = sum c_j basis_j."""
    coeffs = []
    remaining = form.f
    for b in basis:
        sup = b.f.support()
        if len(sup) != 1:
            raise NonReducibleError("basis differential is not a Y-monomial")
        k = sup[0]
        ratio = remaining.c[k] / b.f.c[k]
        if not ratio.is_const():
            raise NonReducibleError(f"Y^{k}-component is not a constant multiple")
        c = ratio.const_value()
        coeffs.append(c)
        remaining = remaining - b.f * FuncFieldElem([RatFunc.const(c)])
    if not remaining.is_zero():
        raise NonReducibleError("pullback leaves the span of the basis")
    return coeffs


def pullback_differentials(aut: str) -> Matrix:
    """Matrix of aut^* on (phi1, phi2, phi3).

    Convention: column j holds the coordinates of aut^*(phi_j).  Pullback is
    contravariant, so (a b)^* = b^* a^*.
    """
    xi, yi = {"g": affine_g, "h": affine_h}[aut]()
    basis = differential_basis()
    cols = [express_in_basis(phi.pullback(xi, yi), basis) for phi in basis]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


# -- point counting -----------------------------------------------------------


def count_points_quartic(p: int) -> int:
    """Number of F_p-points of the Klein quartic, by enumerating P^2(F_p)."""
    count = 0
    cubes = [pow(z, 3, p) for z in range(p)]
    # points [1, y, z]
    for y in range(p):
        y3 = cubes[y]
        for z in range(p):
            if (y + y3 * z + cubes[z]) % p == 0:
                count += 1
    # points [0, 1, z]: Phi4 = z
    count += 1
    # point [0, 0, 1]: Phi4 = 0
    count += 1
    return count


def count_points_quartic_chunk(p: int, ys) -> int:
    cubes = [pow(z, 3, p) for z in range(p)]
    count = 0
    for y in ys:
        y3 = cubes[y]
        for z in range(p):
            if (y + y3 * z + cubes[z]) % p == 0:
                count += 1
    return count
