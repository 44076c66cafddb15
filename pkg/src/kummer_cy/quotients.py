"""Invariant rings and toric charts for C^3/Z_3 and the Z_7 symmetric-product quotient.

Relations are checked syntactically: both sides are expanded into the ambient
monomials and compared as polynomials.  Lattice questions for the fan of the
crepant resolution are answered in 3N, where N = Z^3 + Z(1,1,1)/3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from . import intlattice as il
from .cyclotomic import ONE, Cyc
from .polys import MPoly

# ---------------------------------------------------------------------------
# C^3 / Z_3
# ---------------------------------------------------------------------------


def index_set(total: int = 3, nvars: int = 3) -> list[tuple]:
    """All exponent tuples of the given total degree, in lexicographically decreasing order."""
    out = [n for n in product(range(total + 1), repeat=nvars) if sum(n) == total]
    return sorted(out, reverse=True)


PURE_CUBES = ((3, 0, 0), (0, 3, 0), (0, 0, 3))


def w_name(n) -> str:
    return "W_(" + ",".join(map(str, n)) + ")"


@dataclass(frozen=True)
class BinomialRelation:
    """prod W_left^k = prod W_right^k, sides stored as sorted (generator, power) pairs."""

    left: tuple
    right: tuple

    def expand(self, images: dict, nvars: int) -> tuple[MPoly, MPoly]:
        def side(terms):
            out = MPoly.const(1, nvars)
            for gen, k in terms:
                out = out * images[gen] ** k
            return out

        return side(self.left), side(self.right)

    def is_identity(self, images: dict, nvars: int) -> bool:
        lhs, rhs = self.expand(images, nvars)
        return lhs == rhs

    def __str__(self):
        def fmt(terms):
            return " * ".join(f"{w_name(g)}^{k}" if k != 1 else w_name(g) for g, k in terms) or "1"

        return f"{fmt(self.left)} = {fmt(self.right)}"


def z_monomial(n) -> MPoly:
    return MPoly.monomial(n, 1)


def z3_invariant_presentation() -> dict:
    gens = index_set()
    relations = []
    for n in gens:
        right = tuple((c, k) for c, k in zip(PURE_CUBES, n) if k)
        relations.append(BinomialRelation(((n, 3),), right))
    images = {n: z_monomial(n) for n in gens}
    checks = [r.is_identity(images, 3) for r in relations]
    return {
        "generators": gens,
        "relations": relations,
        "count": len(gens),
        "all_identities": all(checks),
        "identity_checks": checks,
    }


# -- toric charts -----------------------------------------------------------------


@dataclass(frozen=True)
class ToricChart:
    name: str
    coordinates: tuple  # names of the three chart coordinates
    exponents: tuple  # exponent vectors in (z1, z2, z3), possibly negative
    w_expressions: tuple  # (numerator index, denominator index or None)

    def rays_scaled(self) -> list[list[int]]:
        """3 * (dual basis of the exponent vectors), i.e. cone generators in 3N."""
        inv = il.rational_inverse([list(e) for e in self.exponents])
        # columns of inv are the dual basis
        rays = []
        for j in range(3):
            col = [inv[i][j] * 3 for i in range(3)]
            if any(x.denominator != 1 for x in col):
                raise ValueError("ray not in 3N")
            rays.append([int(x) for x in col])
        return rays

    def w_expression_holds(self) -> list[bool]:
        out = []
        for e, (num, den) in zip(self.exponents, self.w_expressions):
            m = list(num) if den is None else [a - b for a, b in zip(num, den)]
            out.append(m == list(e))
        return out


Z3_RESOLUTION_CHARTS = (
    ToricChart(
        "U1",
        ("u1", "u2", "u3"),
        ((1, 0, -1), (0, 1, -1), (0, 0, 3)),
        (((2, 1, 0), (1, 1, 1)), ((1, 2, 0), (1, 1, 1)), ((0, 0, 3), None)),
    ),
    ToricChart(
        "U2",
        ("v1", "v2", "v3"),
        ((-1, 1, 0), (-1, 0, 1), (3, 0, 0)),
        (((0, 2, 1), (1, 1, 1)), ((0, 1, 2), (1, 1, 1)), ((3, 0, 0), None)),
    ),
    ToricChart(
        "U3",
        ("w1", "w2", "w3"),
        ((1, -1, 0), (0, 3, 0), (0, -1, 1)),
        (((2, 0, 1), (1, 1, 1)), ((0, 3, 0), None), ((1, 0, 2), (1, 1, 1))),
    ),
)


def _in_3n(v) -> bool:
    """v / 3 lies in N = Z^3 + Z(1,1,1)/3."""
    r = [x % 3 for x in v]
    return r[0] == r[1] == r[2]


def toric_charts_z3() -> dict:
    charts = Z3_RESOLUTION_CHARTS
    # |det| of a basis of N scaled by 3 is 27 * covolume(N) = 9
    n_covolume_scaled = 9
    report = {"charts": {}}
    ray_sets = []
    for ch in charts:
        rays = ch.rays_scaled()
        d = il.det(il.transpose(rays))
        ray_sets.append([tuple(r) for r in rays])
        report["charts"][ch.name] = {
            "rays_scaled": rays,
            "rays_in_N": all(_in_3n(r) for r in rays),
            "unimodular": abs(d) == n_covolume_scaled,
            "det_ratio": Fraction(d, n_covolume_scaled),
            "crepant": all(sum(r) == 3 for r in rays),
            "w_expressions": all(ch.w_expression_holds()),
            "w111_product": [sum(col) for col in zip(*ch.exponents)] == [1, 1, 1],
        }
    # gluing: chart j coordinates are Laurent monomials in chart i coordinates
    gluing = {}
    for a in charts:
        Ea = [list(e) for e in a.exponents]
        inv = il.rational_inverse(Ea)
        for b in charts:
            if a is b:
                continue
            # exps_b = T * exps_a with T integral and unimodular
            T = [[sum(Fraction(x) * inv[k][j] for k, x in enumerate(row)) for j in range(3)] for row in b.exponents]
            integral = all(x.denominator == 1 for row in T for x in row)
            ok = integral and abs(il.det([[int(x) for x in row] for row in T])) == 1
            gluing[f"{a.name}->{b.name}"] = ok
    report["gluing"] = gluing
    report["fan"] = fan_covers_octant(ray_sets)
    report["all_ok"] = (
        all(
            c["rays_in_N"] and c["unimodular"] and c["crepant"] and c["w_expressions"] and c["w111_product"]
            for c in report["charts"].values()
        )
        and all(gluing.values())
        and report["fan"]["covers"]
    )
    return report


def fan_covers_octant(ray_sets) -> dict:
    """Checks the cones form the star subdivision of the positive octant at an interior ray."""
    scaled_axes = [(3, 0, 0), (0, 3, 0), (0, 0, 3)]
    common = set(ray_sets[0])
    for rs in ray_sets[1:]:
        common &= set(rs)
    centre = next(iter(common)) if len(common) == 1 else None
    interior = centre is not None and all(x > 0 for x in centre)
    facets = set()
    for rs in ray_sets:
        rest = frozenset(r for r in rs if r != centre)
        if not rest <= set(scaled_axes) or len(rest) != 2:
            return {"covers": False, "reason": "cone is not spanned by the centre and an octant facet"}
        facets.add(rest)
    all_facets = len(facets) == 3
    # adjacent cones lie on opposite sides of their shared facet
    opposite = True
    for i in range(len(ray_sets)):
        for j in range(i + 1, len(ray_sets)):
            shared = set(ray_sets[i]) & set(ray_sets[j])
            if len(shared) != 2:
                opposite = False
                continue
            s = sorted(shared)
            (ri,) = set(ray_sets[i]) - shared
            (rj,) = set(ray_sets[j]) - shared
            di = il.det([s[0], s[1], list(ri)])
            dj = il.det([s[0], s[1], list(rj)])
            opposite = opposite and di * dj < 0
    return {"covers": interior and all_facets and opposite, "centre": centre, "opposite_sides": opposite}


# -- birational model of E_omega^3 / Z_3 -----------------------------------------

# variables X1, X2, X3, Y1, Y2, Y3
_NV = 6


def _reduce_cubic_cover(p: MPoly) -> MPoly:
    """Rewrite Y_j^k (k >= 3) using Y_j^3 = X_j (X_j - 1)."""
    out = MPoly({}, _NV)
    todo = [p]
    while todo:
        q = todo.pop()
        for e, c in q.terms.items():
            j = next((j for j in range(3) if e[3 + j] >= 3), None)
            if j is None:
                out = out + MPoly({e: c}, _NV)
                continue
            e2 = list(e)
            e2[3 + j] -= 3
            x = MPoly.var(j, _NV)
            todo.append(MPoly({tuple(e2): c}, _NV) * x * (x - 1))
    return out


def kummer_z3_birational_model() -> dict:
    primed = [n for n in index_set() if n not in PURE_CUBES]
    checks = {}
    for n in primed:
        w = MPoly.monomial((0, 0, 0) + tuple(n), 1)
        lhs = _reduce_cubic_cover(w ** 3)
        rhs = MPoly.const(1, _NV)
        for j in range(3):
            x = MPoly.var(j, _NV)
            rhs = rhs * (x * (x - 1)) ** n[j]
        checks[w_name(n)] = lhs == rhs
    # Y_j -> omega Y_j multiplies W_n by omega^(n1+n2+n3)
    invariant = all(sum(n) % 3 == 0 for n in index_set())
    return {
        "index_set": primed,
        "count": len(primed),
        "relations_hold": all(checks.values()),
        "relation_checks": checks,
        "omega_invariant": invariant,
    }


# ---------------------------------------------------------------------------
# Z_7 on S(A) = Q[s1, s2, s3, sigma1, sigma2, sigma3]
# ---------------------------------------------------------------------------

Z7_WEIGHTS = (0, 0, 0, 1, 2, 3)
Z3_WEIGHTS = (1, 1, 1)


def sigma_box_exponents() -> list[tuple]:
    return [n for n in product(range(7), repeat=3) if (n[0] + 2 * n[1] + 3 * n[2]) % 7 == 0]


@dataclass(frozen=True)
class InvariantGenerator:
    name: str
    exponents: tuple  # in (s1, s2, s3, sigma1, sigma2, sigma3)

    def degree(self) -> int:
        return sum(self.exponents)


def z7_invariant_generators() -> dict:
    gens = [InvariantGenerator(f"s{k + 1}", tuple(int(i == k) for i in range(6))) for k in range(3)]
    gens += [
        InvariantGenerator(f"sigma{k + 1}^7", tuple(7 * int(i == 3 + k) for i in range(6))) for k in range(3)
    ]
    box = sigma_box_exponents()
    for n in box:
        name = "*".join(f"sigma{j + 1}^{k}" for j, k in enumerate(n) if k) or "1"
        gens.append(InvariantGenerator(name, (0, 0, 0) + n))
    mu = Cyc.mu(1)
    invariant = []
    for g in gens:
        factor = ONE
        for w, k in zip(Z7_WEIGHTS, g.exponents):
            factor = factor * mu ** (w * k)
        invariant.append(factor == ONE)
    return {
        "generators": gens,
        "box_count": len(box),
        "count": len(gens),
        "all_invariant": all(invariant),
        "symmetric_definitions": symmetric_function_check(),
    }


def elementary_symmetric(nvars: int = 3, coeff_one=1) -> list[MPoly]:
    xs = [MPoly.var(i, nvars, coeff_one) for i in range(nvars)]
    out = []
    for k in range(1, nvars + 1):
        total = MPoly({}, nvars)
        for idx in product(range(2), repeat=nvars):
            if sum(idx) == k:
                term = MPoly.const(coeff_one, nvars)
                for i, b in enumerate(idx):
                    if b:
                        term = term * xs[i]
                total = total + term
        out.append(total)
    return out


def symmetric_function_check() -> dict:
    """s_k are symmetric in the x_j, and y_j -> mu y_j sends sigma_k to mu^k sigma_k."""
    elem = elementary_symmetric()
    symmetric = all(
        e.substitute([MPoly.var(i, 3) for i in perm]) == e for e in elem for perm in permutations(range(3))
    )
    mu = Cyc.mu(1)
    scaled = [MPoly.var(i, 3, ONE) * mu for i in range(3)]
    weights_ok = []
    for k, e in enumerate(elementary_symmetric(coeff_one=ONE), start=1):
        weights_ok.append(e.substitute(scaled) == e * mu ** k)
    return {"s_symmetric": symmetric, "sigma_weights": weights_ok == [True] * 3}


def invariant_monomials(weights, modulus: int, degree_bound: int) -> list[tuple]:
    n = len(weights)
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            if sum(w * e for w, e in zip(weights, prefix)) % modulus == 0:
                out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k)

    rec([], degree_bound)
    return out


@dataclass(frozen=True)
class GenerationResult:
    generated: bool
    degree_bound: int
    invariant_count: int
    counterexample: tuple | None

    def to_json(self):
        return {
            "generated": self.generated,
            "degree_bound": self.degree_bound,
            "invariant_count": self.invariant_count,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def verify_invariant_generation(weights, modulus: int, generators, degree_bound: int) -> GenerationResult:
    """Every invariant monomial of total degree <= D is a product of generator monomials."""
    gens = [tuple(g) for g in generators if any(g)]
    zero = (0,) * len(weights)
    reached = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                p = tuple(a + b for a, b in zip(m, g))
                if sum(p) <= degree_bound and p not in reached:
                    reached.add(p)
                    new.append(p)
        frontier = new
    targets = invariant_monomials(weights, modulus, degree_bound)
    missing = sorted((t for t in targets if t not in reached), key=lambda t: (sum(t), t))
    return GenerationResult(not missing, degree_bound, len(targets), missing[0] if missing else None)


def z3_generation(degree_bound: int = 12) -> GenerationResult:
    return verify_invariant_generation(Z3_WEIGHTS, 3, index_set(), degree_bound)


def z7_generation(degree_bound: int = 14) -> GenerationResult:
    gens = [g.exponents for g in z7_invariant_generators()["generators"]]
    return verify_invariant_generation(Z7_WEIGHTS, 7, gens, degree_bound)
