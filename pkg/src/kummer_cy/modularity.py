"""Frobenius traces of the two CM elliptic curves, Grossencharacter calibration,
weight-4 Euler factors and the Klein quartic trace comparison.

Curves (projective closures):
  OMEGA_CUBIC      X^2 Z - X Z^2 - Y^3 = 0      (affine Y^3 = X(X - 1))
  ETA_WEIERSTRASS  Y^2 Z - 4X^3 - 21X^2 Z - 28X Z^2 = 0
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .arith import primes_up_to
from .cyclotomic import Disc, QuadInt, SplitResult, factor_rational_prime, units
from .finitefield import PrimeField, field_of_order
from .klein import count_points_quartic

JOBS_ENV = "KUMMER_CY_JOBS"


class BadReductionError(ValueError):
    pass


class MissingPrimeError(KeyError):
    pass


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


class CurveKind(enum.Enum):
    OMEGA_CUBIC = "OMEGA_CUBIC"
    ETA_WEIERSTRASS = "ETA_WEIERSTRASS"


@dataclass(frozen=True)
class EllipticModel:
    """Affine part Y^k = f(X) of a plane cubic, plus its homogeneous equation.

    homogeneous: dict (i, j, l) -> coefficient of X^i Y^j Z^l.
    """

    kind: CurveKind
    tag: Disc
    y_power: int
    f: tuple  # coefficients of f(X), low degree first
    homogeneous: tuple  # sorted ((i, j, l), c) pairs

    def terms(self) -> dict:
        return dict(self.homogeneous)


OMEGA_CUBIC = EllipticModel(
    CurveKind.OMEGA_CUBIC,
    Disc.OMEGA,
    3,
    (0, -1, 1),
    (((0, 3, 0), -1), ((1, 0, 2), -1), ((2, 0, 1), 1)),
)
ETA_WEIERSTRASS = EllipticModel(
    CurveKind.ETA_WEIERSTRASS,
    Disc.ETA,
    2,
    (0, 28, 21, 4),
    (((0, 2, 1), 1), ((1, 0, 2), -28), ((2, 0, 1), -21), ((3, 0, 0), -4)),
)
MODELS = {CurveKind.OMEGA_CUBIC: OMEGA_CUBIC, CurveKind.ETA_WEIERSTRASS: ETA_WEIERSTRASS}


def _poly_eval(F, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), F.from_int(c))
    return acc


def _deriv_coeffs(coeffs):
    return tuple(i * c for i, c in enumerate(coeffs))[1:]


def eval_homogeneous(F, terms: dict, pt) -> int:
    total = 0
    for (i, j, l), c in terms.items():
        t = F.from_int(c)
        for v, e in zip(pt, (i, j, l)):
            if e:
                t = F.mul(t, F.pow(v, e))
        total = F.add(total, t)
    return total


def homogeneous_gradient(terms: dict) -> list[dict]:
    out = []
    for var in range(3):
        d = {}
        for exps, c in terms.items():
            if exps[var]:
                e = list(exps)
                e[var] -= 1
                d[tuple(e)] = d.get(tuple(e), 0) + c * exps[var]
        out.append(d)
    return out


def projective_points(F):
    """All points of P^2(F_q) in normalised form (last nonzero coordinate 1)."""
    for x in F.elements():
        for y in F.elements():
            yield (x, y, 1)
    for x in F.elements():
        yield (x, 1, 0)
    yield (1, 0, 0)


def _infinity_points(model: EllipticModel, F) -> list:
    terms = model.terms()
    return [pt for pt in [(x, 1, 0) for x in F.elements()] + [(1, 0, 0)] if eval_homogeneous(F, terms, pt) == 0]


def _power_table(F, k: int) -> dict:
    """value -> list of y with y^k = value."""
    table: dict = {}
    for y in F.elements():
        table.setdefault(F.pow(y, k), []).append(y)
    return table


def singular_points(model: EllipticModel, F) -> list:
    """Singular points over F, exactly.

    On Z = 1 the affine equation is Y^k - f(X) up to sign, so a singular
    affine point has f'(X) = 0 and k Y^(k-1) = 0; Euler's identity then
    forces the Z-partial to vanish as well.  Points at infinity are tested
    with the homogeneous gradient.
    """
    k = model.y_power
    roots = _power_table(F, k)
    df = _deriv_coeffs(model.f)
    out = []
    for x in F.elements():
        if _poly_eval(F, df, x) != 0:
            continue
        for y in roots.get(_poly_eval(F, model.f, x), []):
            if F.mul(F.from_int(k), F.pow(y, k - 1)) == 0:
                out.append((x, y, 1))
    grad = homogeneous_gradient(model.terms())
    for pt in _infinity_points(model, F):
        if all(eval_homogeneous(F, g, pt) == 0 for g in grad):
            out.append(pt)
    return out


def has_good_reduction(model: EllipticModel, p: int) -> bool:
    return not singular_points(model, PrimeField(p))


def bad_primes(model: EllipticModel, p_max: int) -> list[int]:
    return [p for p in primes_up_to(p_max) if not has_good_reduction(model, p)]


def count_points(model: EllipticModel, q: int, check_smooth: bool = True) -> int:
    """Projective point count over F_q (q = p or p^3), one X at a time."""
    F = field_of_order(q)
    if check_smooth and singular_points(model, F):
        raise BadReductionError(f"{model.kind.value} is singular over GF({q})")
    counts: dict = {}
    for y in F.elements():
        v = F.pow(y, model.y_power)
        counts[v] = counts.get(v, 0) + 1
    affine = sum(counts.get(_poly_eval(F, model.f, x), 0) for x in F.elements())
    return affine + len(_infinity_points(model, F))


def count_points_brute(model: EllipticModel, q: int) -> int:
    """Independent oracle: test the homogeneous equation at every point of P^2(F_q)."""
    F = field_of_order(q)
    terms = model.terms()
    return sum(1 for pt in projective_points(F) if eval_homogeneous(F, terms, pt) == 0)


# ---------------------------------------------------------------------------
# Frobenius data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusData:
    p: int
    n_p: int
    a_p: int
    split: SplitResult

    @property
    def hasse_ok(self) -> bool:
        return self.a_p * self.a_p <= 4 * self.p

    @property
    def inert_ok(self) -> bool:
        return self.split.split or self.a_p == 0

    def to_json(self):
        return {
            "p": self.p,
            "N_p": self.n_p,
            "a_p": self.a_p,
            "split": self.split.kind,
            "pi": None if self.split.pi is None else self.split.pi.to_json(),
        }


def frobenius_trace(model: EllipticModel, p: int) -> FrobeniusData:
    n = count_points(model, p)
    a = p + 1 - n
    return FrobeniusData(p, n, a, factor_rational_prime(p, model.tag))


@dataclass(frozen=True)
class EulerFactorH3:
    p: int
    a_p: int
    b_p: int

    @property
    def coefficients(self) -> tuple[int, int, int]:
        """1 - b_p T + p^3 T^2."""
        return (1, -self.b_p, self.p ** 3)

    def cubes_of_roots_ok(self) -> bool:
        # alpha + beta = a_p, alpha beta = p  =>  alpha^3 + beta^3 = a^3 - 3pa, (alpha beta)^3 = p^3
        a, p = self.a_p, self.p
        e1, e2 = a, p
        power_sum3 = e1 ** 3 - 3 * e1 * e2
        return power_sum3 == self.b_p and e2 ** 3 == self.coefficients[2]

    def to_json(self):
        return {"p": self.p, "a_p": self.a_p, "b_p": self.b_p, "factor": list(self.coefficients)}


def euler_factor_h3(fd: FrobeniusData) -> EulerFactorH3:
    a, p = fd.a_p, fd.p
    return EulerFactorH3(p, a, a ** 3 - 3 * p * a)


def cube_count_check(model: EllipticModel, p: int) -> dict:
    """b_p from the cube formula against an independent count over F_{p^3}."""
    fd = frobenius_trace(model, p)
    b = euler_factor_h3(fd).b_p
    n3 = count_points(model, p ** 3)
    n3_brute = count_points_brute(model, p ** 3)
    return {
        "p": p,
        "b_p": b,
        "N_p3": n3,
        "N_p3_brute": n3_brute,
        "matches": p ** 3 + 1 - n3 == b and n3 == n3_brute,
    }


def _trace_worker(args):
    kind, p = args
    model = MODELS[CurveKind(kind)]
    if not has_good_reduction(model, p):
        return p, None
    return p, frobenius_trace(model, p)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def frobenius_table(model: EllipticModel, p_max: int, jobs: int = 1) -> tuple[dict, list[int]]:
    """({p: FrobeniusData} for good p <= p_max, bad primes), ordered by p."""
    results = _map(_trace_worker, [(model.kind.value, p) for p in primes_up_to(p_max)], jobs)
    table, bad = {}, []
    for p, fd in sorted(results, key=lambda r: r[0]):
        if fd is None:
            bad.append(p)
        else:
            table[p] = fd
    return table, bad


# ---------------------------------------------------------------------------
# Grossencharacter calibration
# ---------------------------------------------------------------------------


def residue(x: QuadInt) -> tuple:
    """Class of x modulo the ramified prime: mod 3 in Z[omega], mod (2 eta + 1) in Z[eta]."""
    if x.tag is Disc.OMEGA:
        return (x.a % 3, x.b % 3)
    # eta = -1/2 = 3 modulo (2 eta + 1), residue field F_7
    return ((x.a + 3 * x.b) % 7,)


def _residue_mul(r1, r2, tag: Disc):
    if tag is Disc.OMEGA:
        return residue(QuadInt(r1[0], r1[1], tag) * QuadInt(r2[0], r2[1], tag))
    return ((r1[0] * r2[0]) % 7,)


def residue_unit_group(tag: Disc) -> list[tuple]:
    if tag is Disc.OMEGA:
        elems = {residue(QuadInt(a, b, tag)) for a in range(3) for b in range(3)}
        return sorted(r for r in elems if QuadInt(r[0], r[1], tag).norm() % 3)
    return [(k,) for k in range(1, 7)]


def unit_complements(tag: Disc) -> list[frozenset]:
    """Cyclic subgroups H of (O/f)^* with H * image(units) = everything and trivial intersection."""
    group = residue_unit_group(tag)
    one = residue(QuadInt(1, 0, tag))
    unit_image = {residue(u) for u in units(tag)}
    target = len(group) // len(unit_image)
    out = set()
    for g in group:
        h, x = {one}, g
        while x != one:
            h.add(x)
            x = _residue_mul(x, g, tag)
        if len(h) == target and h & unit_image == {one}:
            out.add(frozenset(h))
    return sorted(out, key=sorted)


@dataclass(frozen=True)
class CongruenceRule:
    """An associate of pi is normalised when its residue lies in coset * subgroup."""

    tag: Disc
    coset: tuple
    subgroup: frozenset

    def residues(self) -> frozenset:
        return frozenset(_residue_mul(self.coset, h, self.tag) for h in self.subgroup)

    def normalised(self, split: SplitResult) -> list[QuadInt]:
        allowed = self.residues()
        return [x for x in split.associates() if residue(x) in allowed]

    def predict(self, split: SplitResult) -> int | None:
        """Trace of the normalised associates, or None if they disagree or none exist."""
        traces = {x.trace() for x in self.normalised(split)}
        return traces.pop() if len(traces) == 1 else None

    def describe(self) -> str:
        if self.tag is Disc.OMEGA:
            mod = "3"
            shown = [f"{a}" if b == 0 else f"{a}{b:+d}w" for a, b in sorted(self.residues())]
        else:
            mod = "(2*eta + 1)"
            shown = [str(r[0]) for r in sorted(self.residues())]
        return f"a_p = tr(pi) for the associate pi with pi mod {mod} in {{{', '.join(shown)}}}"

    def to_json(self):
        return {"residues": [list(r) for r in sorted(self.residues())], "description": self.describe()}


def candidate_rules(tag: Disc) -> list[CongruenceRule]:
    rules = {}
    for h in unit_complements(tag):
        for c in residue_unit_group(tag):
            r = CongruenceRule(tag, c, h)
            rules.setdefault(r.residues(), r)
    return [rules[k] for k in sorted(rules, key=sorted)]


def trace_classes(fd: FrobeniusData) -> list[QuadInt]:
    return [x for x in fd.split.associates() if x.trace() == fd.a_p]


@dataclass
class Calibration:
    tag: Disc
    rule: CongruenceRule | None
    surviving_rules: list
    train_primes: list
    test_primes: list
    mismatches: list  # (p, predicted, actual) on the held-out primes
    unique_trace_class: bool
    table: list

    @property
    def ok(self) -> bool:
        return self.rule is not None and not self.mismatches and self.unique_trace_class

    def to_json(self):
        return {
            "rule": None if self.rule is None else self.rule.to_json(),
            "surviving_rules": [r.to_json() for r in self.surviving_rules],
            "train_primes": self.train_primes,
            "test_primes": self.test_primes,
            "mismatches": [list(m) for m in self.mismatches],
            "unique_trace_class": self.unique_trace_class,
            "table": self.table,
        }


def calibrate_grossencharacter(model: EllipticModel, frob: dict, split_at: int = 50) -> Calibration:
    """Find a congruence normalisation of pi reproducing a_p; train on p <= split_at."""
    split_primes = sorted(p for p, fd in frob.items() if fd.split.split)
    train = [p for p in split_primes if p <= split_at]
    test = [p for p in split_primes if p > split_at]
    unique = True
    table = []
    for p in split_primes:
        fd = frob[p]
        cls = trace_classes(fd)
        # exactly one associate up to conjugation: the set is {x, conj(x)}
        unique = unique and bool(cls) and set(cls) == {cls[0], cls[0].conj()}
        table.append({"p": p, "a_p": fd.a_p, "trace_class": sorted(c.to_json() for c in cls)})
    surviving = [r for r in candidate_rules(model.tag) if all(r.predict(frob[p].split) == frob[p].a_p for p in train)]
    rule = surviving[0] if surviving else None
    mismatches = []
    if rule is not None:
        for p in test:
            pred = rule.predict(frob[p].split)
            if pred != frob[p].a_p:
                mismatches.append((p, pred, frob[p].a_p))
        for row in table:
            normalised = rule.normalised(frob[row["p"]].split)
            row["normalised_pi"] = normalised[0].to_json() if normalised else None
    return Calibration(model.tag, rule, surviving, train, test, mismatches, unique, table)


def chi_cubed_check(rule: CongruenceRule, fd: FrobeniusData) -> bool:
    """b_p = pi^3 + conj(pi)^3 for the calibrated pi."""
    normalised = rule.normalised(fd.split)
    return bool(normalised) and (normalised[0] ** 3).trace() == euler_factor_h3(fd).b_p


# ---------------------------------------------------------------------------
# Dirichlet series
# ---------------------------------------------------------------------------


def dirichlet_coefficients(traces: dict, n_max: int, weight_exponent: int = 1, bad: dict | None = None) -> list[int]:
    """Coefficients a_1..a_N (index 0 unused) of prod_p 1/(1 - a_p p^-s + p^(w - 2s)).

    traces: p -> a_p at good primes.  bad: p -> eps for a linear factor
    1/(1 - eps p^-s); eps = 0 drops the factor.  A prime <= N in neither
    raises MissingPrimeError.
    """
    bad = bad or {}
    coeffs = [0] * (n_max + 1)
    if n_max >= 1:
        coeffs[1] = 1
    prime_powers: dict = {}
    for p in primes_up_to(n_max):
        if p in traces:
            seq = [1, traces[p]]
            while p ** len(seq) <= n_max:
                k = len(seq) - 1
                seq.append(traces[p] * seq[k] - p ** weight_exponent * seq[k - 1])
        elif p in bad:
            seq = [1]
            while p ** len(seq) <= n_max:
                seq.append(bad[p] ** len(seq))
        else:
            raise MissingPrimeError(p)
        prime_powers[p] = seq
    for n in range(2, n_max + 1):
        m, value = n, 1
        for p, seq in prime_powers.items():
            if m % p == 0:
                k = 0
                while m % p == 0:
                    m //= p
                    k += 1
                value *= seq[k]
            if m == 1:
                break
        coeffs[n] = value
    return coeffs


def read_qexp_file(path) -> list[int]:
    """One integer coefficient per line, 1-indexed; blank lines and '#' comments are skipped."""
    out = [0]
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(int(line))
    return out


def compare_qexp(external: list[int], ours: list[int], bad_primes_list) -> dict:
    n = min(len(external), len(ours)) - 1
    skipped, mismatches = [], []
    for k in range(1, n + 1):
        if any(k % p == 0 for p in bad_primes_list):
            skipped.append(k)
        elif external[k] != ours[k]:
            mismatches.append(k)
    return {"compared": n - len(skipped), "skipped_bad": len(skipped), "mismatches": mismatches[:50]}


# ---------------------------------------------------------------------------
# Klein quartic
# ---------------------------------------------------------------------------


def cubic_character_sum(p: int) -> int:
    """1 + chi(p) + chi(p)^2 for a cubic Dirichlet character chi of conductor 7.

    chi(p) = 1 exactly when p is a cube mod 7, i.e. p = 1 or 6 mod 7.
    """
    return 3 if p % 7 in (1, 6) else 0


def _klein_worker(p: int) -> tuple[int, int]:
    return p, count_points_quartic(p)


def klein_jacobian_trace_check(p_max: int = 100, eta_table: dict | None = None, jobs: int = 1) -> dict:
    """Compare t_p = p + 1 - #K(F_p) with 3 a_p(E_eta) at primes of good reduction."""
    if eta_table is None:
        eta_table, _ = frobenius_table(ETA_WEIERSTRASS, p_max, jobs)
    primes = [p for p in primes_up_to(p_max) if p != 7]
    counts = dict(_map(_klein_worker, primes, jobs))
    rows = []
    for p in primes:
        t = p + 1 - counts[p]
        row = {"p": p, "N_K": counts[p], "t_p": t, "weil_ok": t * t <= 36 * p}
        if p in eta_table:
            a = eta_table[p].a_p
            row.update(
                {
                    "a_p_eta": a,
                    "equal": t == 3 * a,
                    "negated": t == -3 * a,
                    "cubic_twist": t == cubic_character_sum(p) * a,
                }
            )
        else:
            row.update({"a_p_eta": None, "equal": None, "negated": None, "cubic_twist": None})
        rows.append(row)
    compared = [r for r in rows if r["equal"] is not None]
    eq = all(r["equal"] for r in compared)
    neg = all(r["negated"] for r in compared)
    twist = all(r["cubic_twist"] for r in compared)
    if eq:
        pattern = "t_p = 3 a_p(E_eta) at every compared prime"
    elif neg:
        pattern = "t_p = -3 a_p(E_eta) at every compared prime"
    elif twist:
        pattern = "t_p = (1 + chi(p) + chi(p)^2) a_p(E_eta) with chi cubic of conductor 7; not 3 a_p on the nose"
    else:
        pattern = "no uniform relation between t_p and a_p(E_eta)"
    return {
        "rows": rows,
        "compared_primes": [r["p"] for r in compared],
        "quartic_only_primes": [r["p"] for r in rows if r["equal"] is None],
        "all_equal": eq,
        "all_negated": neg,
        "cubic_twist_holds": twist,
        "equal_primes": [r["p"] for r in compared if r["equal"]],
        "unequal_primes": [r["p"] for r in compared if not r["equal"]],
        "weil_ok": all(r["weil_ok"] for r in rows),
        "pattern": pattern,
    }
