"""The three models of the Z_7 torus and the Z_3 torus, as rank-6 lattices.

Models
------
A_MU          Z[mu] with the CM type (4, 2, 1); real basis 1, mu, ..., mu^5.
E_ETA_CUBE    Z[eta]^3; real basis (1, eta) in each factor.
E_OMEGA_CUBE  Z[omega]^3; real basis (1, omega) in each factor.

All lattice questions are answered over Z after restriction of scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import intlattice as il
from .cyclotomic import MU, ONE, ZERO, Cyc, Disc, QuadInt, embed_eta
from .fieldlinalg import field_solve

CM_TYPE = (4, 2, 1)

# ---------------------------------------------------------------------------
# 3x3 matrices over Z[tau]
# ---------------------------------------------------------------------------


def qmat(rows, tag: Disc):
    out = []
    for row in rows:
        new = []
        for x in row:
            if isinstance(x, QuadInt):
                new.append(x)
            elif isinstance(x, tuple):
                new.append(QuadInt(x[0], x[1], tag))
            else:
                new.append(QuadInt(x, 0, tag))
        out.append(tuple(new))
    return tuple(out)


def qidentity(tag: Disc, n: int = 3):
    return qmat([[int(i == j) for j in range(n)] for i in range(n)], tag)


def qmatmul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    tag = A[0][0].tag
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(k)), QuadInt(0, 0, tag)) for j in range(m))
        for i in range(n)
    )


def qmatpow(A, n: int):
    result = qidentity(A[0][0].tag, len(A))
    base = A
    if n < 0:
        base, n = qmatinv(A), -n
    while n:
        if n & 1:
            result = qmatmul(result, base)
        base = qmatmul(base, base)
        n >>= 1
    return result


def qdet(A):
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def qmatinv(A):
    """Inverse of a matrix whose determinant is a unit."""
    d = qdet(A)
    if not d.is_unit():
        raise ArithmeticError("determinant is not a unit")
    dinv = QuadInt(1, 0, d.tag).exact_div(d)
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            cof[j][i] = minor * dinv if (i + j) % 2 == 0 else -(minor * dinv)
    return tuple(tuple(row) for row in cof)


def qcharpoly(A):
    """Coefficients (c0, c1, c2, 1) of det(x I - A) = x^3 + c2 x^2 + c1 x + c0."""
    tr = A[0][0] + A[1][1] + A[2][2]
    m2 = (
        A[0][0] * A[1][1] - A[0][1] * A[1][0]
        + A[0][0] * A[2][2] - A[0][2] * A[2][0]
        + A[1][1] * A[2][2] - A[1][2] * A[2][1]
    )
    return (-qdet(A), m2, -tr, QuadInt(1, 0, tr.tag))


def real_block(x: QuadInt):
    """Multiplication by x on Z + Z*tau; columns are the images of 1 and tau."""
    c = x.tag.c
    return [[x.a, -c * x.b], [x.b, x.a - x.b]]


def restrict_scalars(A) -> list[list[int]]:
    """6x6 integer matrix of a 3x3 Z[tau]-matrix in the basis (1, tau) per factor."""
    n = len(A)
    R = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            blk = real_block(A[i][j])
            for a in range(2):
                for b in range(2):
                    R[2 * i + a][2 * j + b] = blk[a][b]
    return R


# ---------------------------------------------------------------------------
# A(mu) <-> E_eta^3 coordinates
# ---------------------------------------------------------------------------


def _eta_basis_elements() -> list[Cyc]:
    """Z-basis 1, eta, mu, mu*eta, mu^2, mu^2*eta of Z[mu]."""
    eta = embed_eta()
    out = []
    for k in range(3):
        m = MU ** k
        out += [m, m * eta]
    return out


def _eta_change_of_basis():
    cols = [list(x.num) for x in _eta_basis_elements()]
    B = il.transpose(cols)  # columns are the basis elements in power coordinates
    return B


def to_eta_coordinates(x: Cyc) -> list[Fraction]:
    """Rational coordinates (a1, b1, a2, b2, a3, b3) with x = sum_k (a_k + b_k eta) mu^k."""
    inv = il.rational_inverse(_eta_change_of_basis())
    v = [Fraction(c, x.den) for c in x.num]
    return [sum(inv[i][j] * v[j] for j in range(6)) for i in range(6)]


def from_eta_coordinates(coords) -> Cyc:
    elems = _eta_basis_elements()
    total = ZERO
    for c, e in zip(coords, elems):
        total = total + e * Fraction(c)
    return total


def eta_triple(x: Cyc) -> tuple[QuadInt, QuadInt, QuadInt]:
    c = to_eta_coordinates(x)
    if any(v.denominator != 1 for v in c):
        raise ValueError("not a lattice vector")
    return tuple(QuadInt(int(c[2 * k]), int(c[2 * k + 1]), Disc.ETA) for k in range(3))


def _column_matrix(images) -> tuple:
    cols = [eta_triple(x) for x in images]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


G_ETA = qmat([[0, 0, 1], [1, 0, (1, 1)], [0, 1, (0, 1)]], Disc.ETA)
H_TILDE = qmat([[1, (0, 1), 0], [0, -1, 1], [0, -1, 0]], Disc.ETA)


def mu_matrix_in_eta_basis():
    """Matrix of multiplication by mu on Z[mu] in the Z[eta]-basis (1, mu, mu^2)."""
    return _column_matrix([MU * MU ** k for k in range(3)])


def h_matrix_in_eta_basis():
    """Matrix of mu -> mu^4 on Z[mu] in the Z[eta]-basis (1, mu, mu^2)."""
    return _column_matrix([(MU ** k).galois(4) for k in range(3)])


def charpoly_roots_at(A, ks=(1, 2, 4)) -> dict[int, bool]:
    """Whether det(x I - A) vanishes at x = mu^k, evaluated in Z[mu]."""
    coeffs = [c.to_cyc() for c in qcharpoly(A)]
    out = {}
    for k in ks:
        x = Cyc.mu(k)
        val = ZERO
        for c in reversed(coeffs):
            val = val * x + c
        out[k] = val.is_zero()
    return out


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


def _power_basis_matrix(fn) -> list[list[int]]:
    cols = []
    for k in range(6):
        y = fn(Cyc.mu(k))
        if not y.is_integral():
            raise ValueError("map does not preserve Z[mu]")
        cols.append(list(y.num))
    return il.transpose(cols)


@dataclass
class TorusModel:
    kind: str
    tag: Disc | None = None
    ring_automorphisms: dict = field(default_factory=dict)
    real_automorphisms: dict = field(default_factory=dict)

    def real_matrix(self, name: str) -> list[list[int]]:
        if name in self.real_automorphisms:
            return self.real_automorphisms[name]
        return restrict_scalars(self.ring_automorphisms[name])

    def names(self) -> list[str]:
        return sorted(set(self.ring_automorphisms) | set(self.real_automorphisms))

    def to_json(self):
        return {
            "kind": self.kind,
            "automorphisms": {n: self.real_matrix(n) for n in self.names()},
        }


def a_mu_model() -> TorusModel:
    return TorusModel(
        "A_MU",
        None,
        {},
        {
            "m_mu": _power_basis_matrix(lambda x: x * MU),
            "h": _power_basis_matrix(lambda x: x.galois(4)),
        },
    )


def e_eta_cube_model() -> TorusModel:
    return TorusModel("E_ETA_CUBE", Disc.ETA, {"g_eta": G_ETA, "h_tilde": H_TILDE})


def e_omega_cube_model() -> TorusModel:
    w = QuadInt(0, 1, Disc.OMEGA)
    return TorusModel(
        "E_OMEGA_CUBE",
        Disc.OMEGA,
        {"omega": qmat([[w, 0, 0], [0, w, 0], [0, 0, w]], Disc.OMEGA)},
    )


# ---------------------------------------------------------------------------
# Torsion points and fixed sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionPoint:
    """numerator / denominator modulo Z^6, stored in lowest terms with entries in [0, N)."""

    numerator: tuple
    denominator: int

    @classmethod
    def of(cls, numerator, denominator: int) -> TorsionPoint:
        N = denominator
        num = [x % N for x in numerator]
        g = N
        for x in num:
            g = gcd(g, x)
        return cls(tuple(x // g for x in num), N // g)

    @classmethod
    def from_fractions(cls, coords) -> TorsionPoint:
        fr = [Fraction(c) for c in coords]
        N = 1
        for c in fr:
            N = N * c.denominator // gcd(N, c.denominator)
        return cls.of([int(c * N) for c in fr], N)

    def scale(self, k: int) -> TorsionPoint:
        return TorsionPoint.of([k * x for x in self.numerator], self.denominator)

    def __add__(self, o: TorsionPoint) -> TorsionPoint:
        N = self.denominator * o.denominator
        return TorsionPoint.of(
            [a * o.denominator + b * self.denominator for a, b in zip(self.numerator, o.numerator)], N
        )

    def is_zero(self) -> bool:
        return self.denominator == 1

    def order(self) -> int:
        return self.denominator

    def to_json(self):
        return {"numerator": list(self.numerator), "denominator": self.denominator}


@dataclass
class FixedSet:
    order: int  # order of the finite group, or of the component group when dimension > 0
    generators: list
    dimension: int  # real dimension of the identity component
    kernel_basis: list
    elementary_divisors: list

    @property
    def singular(self) -> bool:
        return self.dimension > 0

    def contains(self, pt: TorsionPoint, R) -> bool:
        return is_fixed(pt, R)

    def to_json(self):
        return {
            "order": self.order,
            "dimension": self.dimension,
            "generators": [g.to_json() for g in self.generators],
            "kernel_basis": self.kernel_basis,
            "elementary_divisors": self.elementary_divisors,
        }


def fixed_set_of_matrix(R) -> FixedSet:
    """{x in R^6/Z^6 : R x = x} via the Smith normal form of R - 1."""
    n = len(R)
    A = il.matsub(R, il.identity(n))
    D, _, V = il.smith_normal_form(A)
    diag = il.diagonal(D)
    gens, kernel = [], []
    order = 1
    for i, d in enumerate(diag):
        col = [V[r][i] for r in range(n)]
        if d == 0:
            kernel.append(col)
        else:
            order *= d
            if d > 1:
                gens.append(TorsionPoint.of(col, d))
    return FixedSet(order, gens, len(kernel), kernel, diag)


def fixed_subgroup(model: TorusModel, aut: str) -> FixedSet:
    return fixed_set_of_matrix(model.real_matrix(aut))


def is_fixed(pt: TorsionPoint, R) -> bool:
    image = il.matvec(R, list(pt.numerator))
    return all((a - b) % pt.denominator == 0 for a, b in zip(image, pt.numerator))


def subgroup_elements(gens) -> set:
    elems = {TorsionPoint.of([0] * 6, 1)}
    frontier = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


ETA_FIXED_GENERATOR = TorsionPoint.of([6, 5, 2, 4, 6, 5], 7)


# ---------------------------------------------------------------------------
# The generator alpha of the m_mu-fixed subgroup
# ---------------------------------------------------------------------------


def alpha_first_expression() -> Cyc:
    """(1/7) sum_{j=0}^{5} mu^j, transported back from u-coordinates."""
    return Cyc((1, 1, 1, 1, 1, 1), 7)


def alpha_six_term_expression() -> Cyc:
    """(1/7)(-1 - 5 mu - 8 mu^2 + 5 eta + 4 mu eta - 2 mu^2 eta)."""
    eta = embed_eta()
    num = -ONE - MU * 5 - MU * MU * 8 + eta * 5 + MU * eta * 4 - MU * MU * eta * 2
    return num * Fraction(1, 7)


def verify_alpha_claims() -> dict:
    a1, a2 = alpha_first_expression(), alpha_six_term_expression()
    out = {
        "first_expression_fixed": ((MU - 1) * a1).is_integral(),
        "six_term_expression_fixed": ((MU - 1) * a2).is_integral(),
        "expressions_agree_mod_lattice": (a1 - a2).is_integral(),
        "first_expression_nonzero": not a1.is_integral(),
        "six_term_expression_nonzero": not a2.is_integral(),
        "seven_alpha_in_lattice": (a1 * 7).is_integral() and (a2 * 7).is_integral(),
    }
    if out["six_term_expression_fixed"] and out["six_term_expression_nonzero"]:
        verified, which = a2, "six_term"
    elif out["first_expression_fixed"] and out["first_expression_nonzero"]:
        verified, which = a1, "first"
    else:
        verified, which = (MU - 1).inverse(), "computed"
    out["verified_generator"] = which
    out["h_sends_alpha_to_2alpha"] = (verified.galois(4) - verified * 2).is_integral()
    # the h-orbits {a, 2a, 4a}, {3a, 6a, 5a} on the seven fixed points
    orbits = []
    seen = set()
    for k in range(7):
        if k in seen:
            continue
        orbit = []
        x = verified * k
        for _ in range(3):
            idx = next(j for j in range(7) if (x - verified * j).is_integral())
            if idx not in orbit:
                orbit.append(idx)
            x = x.galois(4)
        seen.update(orbit)
        orbits.append(orbit)
    out["h_orbits"] = orbits
    coords = to_eta_coordinates(verified)
    out["alpha_in_eta_coordinates"] = [str(c) for c in coords]
    out["matches_eta_fixed_generator"] = TorsionPoint.from_fractions(coords) in subgroup_elements(
        [ETA_FIXED_GENERATOR]
    ) and not TorsionPoint.from_fractions(coords).is_zero()
    return out


# ---------------------------------------------------------------------------
# Lattice action of 3x3 matrices on C^3 through u
# ---------------------------------------------------------------------------

_CONJ_TYPE = tuple((7 - k) % 7 for k in CM_TYPE)  # (3, 5, 6)


def u_lattice_matrix(M) -> list[list[Fraction]]:
    """Real 6x6 matrix of z -> M z in the basis u(1), ..., u(mu^5).

    With U the 6x6 matrix of all six embeddings applied to mu^j, a real
    vector c of lattice coordinates satisfies (v, conj v) = U c.  The entries
    of M lie in Q(mu) and complex conjugation acts as mu -> mu^6 on them.
    """
    top = [[Cyc.mu(j).galois(k) for j in range(6)] for k in CM_TYPE]
    bottom = [[Cyc.mu(j).galois(k) for j in range(6)] for k in _CONJ_TYPE]
    U = top + bottom
    Mbar = [[x.conj() for x in row] for row in M]

    def apply(A, rows):
        return [[sum((A[i][t] * rows[t][j] for t in range(3)), ZERO) for j in range(6)] for i in range(3)]

    image = apply(M, top) + apply(Mbar, bottom)
    coords = field_solve(U, image, ZERO, ONE)
    return [[c.rational_value() for c in row] for row in coords]


def lattice_integrality(M) -> bool:
    return all(x.denominator == 1 for row in u_lattice_matrix(M) for x in row)


def r_lattice_integrality() -> dict:
    from .klein import klein_generators

    gens = klein_generators()
    return {name: lattice_integrality(gens[name]) for name in ("g", "h", "r")}
