"""Integral exterior algebra on H^1(E_tau^3, Z) and the intermediate Jacobian.

Covector basis order is (e1*, f1*, e2*, f2*, e3*, f3*), indices 0..5, and
3-forms are indexed by the 20 increasing index triples.  With
dx = e* + alpha f* and dy = beta f*, every dz_j equals e_j* + tau f_j*.

All arithmetic involving beta happens in Q[beta]/(beta^2 - v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import intlattice as il
from .cyclotomic import Disc
from .fieldlinalg import field_rank
from .polys import MPoly
from .torus import TorusModel

BASIS_NAMES = ("e1", "f1", "e2", "f2", "e3", "f3")
TRIPLES = tuple(combinations(range(6), 3))
TRIPLE_INDEX = {t: i for i, t in enumerate(TRIPLES)}


def triple_name(t) -> str:
    return "^".join(BASIS_NAMES[i] for i in t)


# ---------------------------------------------------------------------------
# Q(beta)
# ---------------------------------------------------------------------------


class QBeta:
    """x + y*beta with beta^2 = v, v a positive rational."""

    __slots__ = ("x", "y", "v")

    def __init__(self, x, y, v):
        self.x, self.y, self.v = Fraction(x), Fraction(y), Fraction(v)

    def _lift(self, o) -> QBeta:
        if isinstance(o, QBeta):
            if o.v != self.v:
                raise ValueError("mixing different beta^2")
            return o
        return QBeta(o, 0, self.v)

    def __add__(self, o):
        o = self._lift(o)
        return QBeta(self.x + o.x, self.y + o.y, self.v)

    __radd__ = __add__

    def __neg__(self):
        return QBeta(-self.x, -self.y, self.v)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return QBeta(self.x * o.x + self.v * self.y * o.y, self.x * o.y + self.y * o.x, self.v)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.x * self.x - self.v * self.y * self.y

    def inverse(self) -> QBeta:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("non-invertible element of Q(beta)")
        return QBeta(self.x / n, -self.y / n, self.v)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, QBeta):
            return (self.x, self.y, self.v) == (o.x, o.y, o.v)
        return self.y == 0 and self.x == o

    def __hash__(self):
        return hash((self.x, self.y, self.v))

    def __repr__(self):
        return f"{self.x} + {self.y}*beta"


# ---------------------------------------------------------------------------
# tau
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TauData:
    alpha: Fraction
    beta_sq: Fraction
    tag: Disc | None = None

    @classmethod
    def of(cls, tag: Disc) -> TauData:
        # tau^2 + tau + c = 0 gives alpha = -1/2, beta^2 = c - 1/4
        return cls(Fraction(-1, 2), Fraction(tag.c) - Fraction(1, 4), tag)

    @property
    def beta(self) -> QBeta:
        return QBeta(0, 1, self.beta_sq)

    @property
    def abs_sq(self) -> Fraction:
        return self.alpha * self.alpha + self.beta_sq

    def name(self) -> str:
        return self.tag.name if self.tag else f"tau({self.alpha}, beta^2={self.beta_sq})"


TAU_I = TauData(Fraction(0), Fraction(1))

# ---------------------------------------------------------------------------
# Exterior forms
# ---------------------------------------------------------------------------


def _sort_sign(idx):
    """(sign, sorted tuple) for a sequence of indices; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class Form:
    """A homogeneous element of the exterior algebra on six generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: c for k, c in terms.items() if not c == 0}

    @classmethod
    def basis(cls, i: int, coeff=1) -> Form:
        return cls({(i,): coeff})

    @classmethod
    def from_vector(cls, vec, degree: int = 3) -> Form:
        keys = tuple(combinations(range(6), degree))
        return cls({k: c for k, c in zip(keys, vec)})

    def __add__(self, o: Form) -> Form:
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return Form(out)

    def __neg__(self):
        return Form({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> Form:
        return Form({k: v * c for k, v in self.terms.items()})

    def wedge(self, o: Form) -> Form:
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                sign, key = _sort_sign(k1 + k2)
                if sign:
                    v = c1 * c2 if sign > 0 else -(c1 * c2)
                    out[key] = out[key] + v if key in out else v
        return Form(out)

    def coefficient(self, key, zero=0):
        return self.terms.get(tuple(key), zero)

    def vector(self, zero=0) -> list:
        return [self.terms.get(t, zero) for t in TRIPLES]

    def __eq__(self, o):
        return isinstance(o, Form) and self.terms == o.terms

    def __repr__(self):
        return " + ".join(f"({c})*{triple_name(k)}" for k, c in sorted(self.terms.items())) or "0"


def wedge_all(forms) -> Form:
    out = Form({(): 1})
    for f in forms:
        out = out.wedge(f)
    return out


def top_form_sign(order) -> int:
    """Coefficient of e1^f1^...^f3 in the wedge of the six basis covectors in the given order."""
    w = wedge_all(Form.basis(i) for i in order)
    return w.coefficient(tuple(range(6)))


def permutation_parity(order) -> int:
    order = list(order)
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = order[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Omega
# ---------------------------------------------------------------------------


def _omega_form(tau_re, tau_im, zero, one):
    """Omega = wedge_j (e_j + tau f_j) with complex coefficients as (re, im) pairs."""
    factors = []
    for j in range(3):
        factors.append(Form({(2 * j,): (one, zero), (2 * j + 1,): (tau_re, tau_im)}))
    out = {(): (one, zero)}
    for f in factors:
        new: dict = {}
        for k1, (a, b) in out.items():
            for k2, (c, d) in f.terms.items():
                sign, key = _sort_sign(k1 + k2)
                if not sign:
                    continue
                re, im = a * c - b * d, a * d + b * c
                if sign < 0:
                    re, im = -re, -im
                if key in new:
                    re, im = new[key][0] + re, new[key][1] + im
                new[key] = (re, im)
        out = new
    re = Form({k: v[0] for k, v in out.items()})
    im = Form({k: v[1] for k, v in out.items()})
    return re, im


def f_count(t) -> int:
    return sum(1 for i in t if i % 2 == 1)


def omega_expansion(tau: TauData) -> tuple[Form, Form]:
    """Re and Im of Omega as 3-forms over Q(beta)."""
    v = tau.beta_sq
    return _omega_form(QBeta(tau.alpha, 0, v), QBeta(0, 1, v), QBeta(0, 0, v), QBeta(1, 0, v))


def omega_expansion_generic() -> tuple[Form, Form]:
    """Re and Im of Omega with alpha, beta as polynomial variables (x0, x1)."""
    a, b = MPoly.var(0, 2), MPoly.var(1, 2)
    return _omega_form(a, b, MPoly.const(0, 2), MPoly.const(1, 2))


def reference_volume_coefficients():
    """Reference expansion, grouped by the number of f's in a triple."""
    a, b = MPoly.var(0, 2), MPoly.var(1, 2)
    re = {0: MPoly.const(1, 2), 1: a, 2: a * a - b * b, 3: a * a * a - 3 * a * b * b}
    im = {0: MPoly.const(0, 2), 1: b, 2: 2 * a * b, 3: 3 * a * a * b - b * b * b}
    return re, im


def verify_generic_expansion() -> dict:
    re, im = omega_expansion_generic()
    dre, dim = reference_volume_coefficients()
    zero = MPoly.const(0, 2)
    mismatches = []
    for t in TRIPLES:
        if len({i // 2 for i in t}) < 3:
            expected_re = expected_im = zero
        else:
            expected_re, expected_im = dre[f_count(t)], dim[f_count(t)]
        if re.coefficient(t, zero) != expected_re or im.coefficient(t, zero) != expected_im:
            mismatches.append(triple_name(t))
    return {"all_coefficients_match": not mismatches, "mismatches": mismatches, "support_size": len(re.terms)}


def _form_from_names(names: dict) -> Form:
    idx = {n: i for i, n in enumerate(BASIS_NAMES)}
    terms = {}
    for name, c in names.items():
        key = tuple(sorted(idx[p] for p in name.split("^")))
        terms[key] = c
    return Form(terms)


_EEF = ("e1^e2^f3", "e1^f2^e3", "f1^e2^e3")
_EFF = ("e1^f2^f3", "f1^e2^f3", "f1^f2^e3")

# reference integral classes A, B for tau = omega and tau = eta
REFERENCE_AB = {
    Disc.OMEGA: (
        _form_from_names({"e1^e2^e3": 1, "f1^f2^f3": 1, **{n: -1 for n in _EFF}}),
        _form_from_names({**{n: 1 for n in _EEF}, **{n: -1 for n in _EFF}}),
    ),
    Disc.ETA: (
        _form_from_names({"e1^e2^e3": 1, "f1^f2^f3": 2, **{n: -2 for n in _EFF}}),
        _form_from_names({"f1^f2^f3": -1, **{n: 1 for n in _EEF}, **{n: -1 for n in _EFF}}),
    ),
}


def extract_AB(tau: TauData) -> tuple[Form, Form]:
    """A, B with Re(Omega) = A + alpha' B and Im(Omega) = beta' B, alpha' = -1/2.

    B = Im(Omega)/beta, A = Re(Omega) + B/2; both must come out rational.
    """
    re, im = omega_expansion(tau)
    beta_inv = tau.beta.inverse()
    B, A = {}, {}
    for t in TRIPLES:
        b = im.coefficient(t, QBeta(0, 0, tau.beta_sq)) * beta_inv
        a = re.coefficient(t, QBeta(0, 0, tau.beta_sq)) + b * Fraction(1, 2)
        if a.y != 0 or b.y != 0:
            raise ValueError("A, B are not rational combinations")
        A[t], B[t] = a.x, b.x
    return Form(A), Form(B)


def check_specialization(tag: Disc) -> dict:
    """Re(Omega) = A - B/2 and Im(Omega) = (sqrt(c*4 - 1)/2) B for the reference A, B."""
    tau = TauData.of(tag)
    re, im = omega_expansion(tau)
    A, B = REFERENCE_AB[tag]
    v = tau.beta_sq
    zero = QBeta(0, 0, v)
    re_ok = all(
        re.coefficient(t, zero) == QBeta(A.coefficient(t) - Fraction(B.coefficient(t), 2), 0, v) for t in TRIPLES
    )
    im_ok = all(im.coefficient(t, zero) == tau.beta * B.coefficient(t) for t in TRIPLES)
    eA, eB = extract_AB(tau)
    return {
        "re_matches": re_ok,
        "im_matches": im_ok,
        "extracted_A_matches": eA == A,
        "extracted_B_matches": eB == B,
        "beta_squared": str(v),
    }


# ---------------------------------------------------------------------------
# Actions on H^1 and H^3
# ---------------------------------------------------------------------------


class NonIntegralError(ValueError):
    pass


def induced_h1_action(model: TorusModel, aut: str) -> list[list[int]]:
    """Pullback on H^1(T, Z) in the (e*, f*) basis: the transpose of the lattice action."""
    R = model.real_matrix(aut)
    if any(not isinstance(x, int) for row in R for x in row):
        raise NonIntegralError("automorphism does not preserve the lattice")
    return il.transpose(R)


def exterior_cube(M) -> list[list[int]]:
    """Lambda^3 of a 6x6 matrix: entry (I, J) is the 3x3 minor on rows I, columns J."""
    out = []
    for I in TRIPLES:
        row = []
        for J in TRIPLES:
            row.append(il.det([[M[i][j] for j in J] for i in I]))
        out.append(row)
    return out


def invariant_sublattice(action) -> list[list[int]]:
    """Saturated basis of the invariant 3-forms under a 6x6 action on H^1."""
    L = exterior_cube(action)
    return il.kernel_basis(il.matsub(L, il.identity(20)))


def acts_trivially(action, form: Form) -> bool:
    L = exterior_cube(action)
    vec = form.vector()
    return il.matvec(L, vec) == vec


def group_actions():
    from .torus import e_eta_cube_model, e_omega_cube_model

    return {
        Disc.OMEGA: induced_h1_action(e_omega_cube_model(), "omega"),
        Disc.ETA: induced_h1_action(e_eta_cube_model(), "g_eta"),
    }


def verify_AB_basis(tag: Disc, action=None) -> dict:
    action = action if action is not None else group_actions()[tag]
    basis = invariant_sublattice(action)
    A, B = REFERENCE_AB[tag]
    out = {
        "rank": len(basis),
        "A_invariant": acts_trivially(action, A),
        "B_invariant": acts_trivially(action, B),
    }
    coords = []
    for f in (A, B):
        c = il.solve_integer(il.transpose(basis), f.vector())
        if c is None:
            raise ValueError("NOT_IN_LATTICE: reference class is not in the invariant lattice")
        coords.append(c)
    out["change_of_basis"] = coords
    out["determinant"] = il.det(coords)
    i0 = TRIPLE_INDEX[(0, 2, 4)]
    i1 = TRIPLE_INDEX[(0, 2, 5)]
    minor = [[A.vector()[i0], A.vector()[i1]], [B.vector()[i0], B.vector()[i1]]]
    out["coefficient_minor"] = minor
    out["coefficient_minor_det"] = il.det(minor)
    out["basis"] = basis
    out["unimodular"] = abs(out["determinant"]) == 1
    return out


def hodge_plane_rank(tag: Disc, action=None) -> int:
    """Rank over Q(beta) of {Re Omega, Im Omega, C1, C2} stacked as 20-vectors."""
    action = action if action is not None else group_actions()[tag]
    tau = TauData.of(tag)
    v = tau.beta_sq
    zero, one = QBeta(0, 0, v), QBeta(1, 0, v)
    re, im = omega_expansion(tau)
    rows = [re.vector(zero), im.vector(zero)]
    for b in invariant_sublattice(action):
        rows.append([QBeta(x, 0, v) for x in b])
    return field_rank(rows, zero, one)


# ---------------------------------------------------------------------------
# Lattice moduli
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeModulus:
    """z = re + im_coeff*beta*i with beta^2 = beta_sq; im_coeff > 0."""

    re: Fraction
    im_coeff: Fraction
    beta_sq: Fraction

    @property
    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im_coeff * self.im_coeff * self.beta_sq

    def translate(self, n) -> LatticeModulus:
        return LatticeModulus(self.re + n, self.im_coeff, self.beta_sq)

    def invert(self) -> LatticeModulus:
        """-1/z = -conj(z)/|z|^2."""
        n = self.abs_sq
        return LatticeModulus(-self.re / n, self.im_coeff / n, self.beta_sq)

    def is_reduced(self) -> bool:
        return -Fraction(1, 2) <= self.re < Fraction(1, 2) and (
            self.abs_sq > 1 or (self.abs_sq == 1 and self.re <= 0)
        )

    def reduce(self) -> LatticeModulus:
        z = self
        while True:
            # nearest integer, ties pushing re to -1/2
            shift = -((2 * z.re + 1) // 2)
            z = z.translate(shift)
            if z.re == Fraction(1, 2):
                z = z.translate(-1)
            if z.abs_sq < 1:
                z = z.invert()
                continue
            if z.abs_sq == 1 and z.re > 0:
                z = z.invert()
            return z

    def to_json(self):
        return {"re": str(self.re), "im": f"{self.im_coeff}*sqrt({self.beta_sq})"}


def tau_modulus(tau: TauData) -> LatticeModulus:
    return LatticeModulus(tau.alpha, Fraction(1), tau.beta_sq)


@dataclass(frozen=True)
class JacobianResult:
    generators: tuple  # ((re, im_coeff), (re, im_coeff)) with im = im_coeff*beta
    ratio: LatticeModulus
    reduced: LatticeModulus
    target: LatticeModulus

    @property
    def homothetic_to_tau(self) -> bool:
        return self.reduced == self.target

    def to_json(self):
        return {
            "generators": [[str(a), f"{b}*beta"] for a, b in self.generators],
            "ratio": self.ratio.to_json(),
            "reduced": self.reduced.to_json(),
            "target": self.target.to_json(),
            "homothetic_to_tau": self.homothetic_to_tau,
        }


def intermediate_jacobian(tau: TauData) -> JacobianResult:
    """Modulus of C/(Z(1 - (alpha/beta) i) + Z (i/beta)), reduced to the fundamental domain.

    1/beta = beta/v, so both generators have the form r + s*beta*i with r, s rational.
    """
    v = tau.beta_sq
    if v == 0:
        raise ValueError("DEGENERATE: generators are R-dependent")
    w1 = (Fraction(1), -tau.alpha / v)
    w2 = (Fraction(0), 1 / v)
    # w2/w1 = i/(beta - alpha i) = (-alpha + beta i)/|tau|^2
    ratio = LatticeModulus(-tau.alpha / tau.abs_sq, 1 / tau.abs_sq, v)
    return JacobianResult((w1, w2), ratio, ratio.reduce(), tau_modulus(tau).reduce())


def all_permutation_signs_match() -> bool:
    return all(top_form_sign(p) == permutation_parity(p) for p in permutations(range(6)))
