"""Suites of claims assembled from the computational modules."""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import intlattice as il
from .cyclotomic import ONE, ZERO, Cyc, Disc
from .report import Status, VerificationReport

SUITES = ("group", "torus", "klein", "cohomology", "quotients", "modularity")


@dataclass(frozen=True)
class Options:
    p_max: int = 200
    z3_degree_bound: int = 12
    z7_degree_bound: int = 14
    calibration_split: int = 50
    klein_p_max: int = 100
    qexp_file: str | None = None
    jobs: int = 1

    def with_degree_bound(self, d: int | None) -> Options:
        if d is None:
            return self
        return replace(self, z3_degree_bound=d, z7_degree_bound=d)


# ---------------------------------------------------------------------------


def group_suite(opts: Options) -> VerificationReport:
    from .klein import quartic_invariance, verify_group_presentation

    rep = VerificationReport("group")
    res = verify_group_presentation()
    for name, ok in res["relations"].items():
        rep.add(f"group.relation.{name.replace(' ', '')}", name, ok)
    rep.add("group.order.gh", "|<g, h>| = 21", res["order_gh"] == 21, res["order_gh"])
    rep.add("group.order.ghr", "|<g, h, r>| = 168", res["order_ghr"] == 168, res["order_ghr"])
    rep.add("group.det_one", "det g = det h = det r = 1", res["dets_one"])
    bad = sum(1 for M in res["elements"] if not quartic_invariance(M))
    rep.add(
        "group.phi4_invariant",
        "Z1^3 Z2 + Z2^3 Z3 + Z3^3 Z1 is fixed by all 168 elements",
        bad == 0 and len(res["elements"]) == 168,
        {"elements": len(res["elements"]), "non_invariant": bad},
    )
    return rep


def torus_suite(opts: Options) -> VerificationReport:
    from . import torus as t

    rep = VerificationReport("torus")
    cm = t.CM_TYPE
    rep.add(
        "torus.cm_type",
        "{4, 2, 1} and their negatives partition (Z/7)^*",
        sorted(cm + tuple((7 - k) % 7 for k in cm)) == [1, 2, 3, 4, 5, 6],
        list(cm),
    )
    mu_m = t.mu_matrix_in_eta_basis()
    h_m = t.h_matrix_in_eta_basis()
    rep.add("torus.mu_matrix", "m_mu in basis (1, mu, mu^2) equals g_eta", mu_m == t.G_ETA, mu_m)
    rep.add("torus.h_matrix", "mu -> mu^4 in basis (1, mu, mu^2) equals h~", h_m == t.H_TILDE, h_m)
    ident = t.qidentity(Disc.ETA)
    rep.add("torus.g_eta_order", "g_eta^7 = 1", t.qmatpow(t.G_ETA, 7) == ident)
    rep.add("torus.h_tilde_order", "h~^3 = 1", t.qmatpow(t.H_TILDE, 3) == ident)
    conj = t.qmatmul(t.qmatmul(t.qmatinv(t.H_TILDE), t.G_ETA), t.H_TILDE)
    rep.add("torus.conjugation", "h~^-1 g_eta h~ = g_eta^2", conj == t.qmatpow(t.G_ETA, 2))
    roots = t.charpoly_roots_at(t.G_ETA)
    rep.add("torus.eigenvalues", "det(x - g_eta) vanishes at mu, mu^2, mu^4", all(roots.values()), roots)
    dets = {n: t.qdet(A) for n, A in (("g_eta", t.G_ETA), ("h_tilde", t.H_TILDE))}
    rep.add("torus.unit_determinants", "det g_eta and det h~ are units", all(d.is_unit() for d in dets.values()), dets)

    integ = t.r_lattice_integrality()
    rep.add("torus.lattice.g", "g preserves u(Z[mu])", integ["g"] is True)
    rep.add("torus.lattice.h", "h preserves u(Z[mu])", integ["h"] is True)
    rep.add("torus.lattice.r", "r does not preserve u(Z[mu])", integ["r"] is False)

    eta = t.e_eta_cube_model()
    fg = t.fixed_subgroup(eta, "g_eta")
    members = t.subgroup_elements(fg.generators)
    rep.add(
        "torus.fixed.g_eta",
        "E_eta^3 fixed by g_eta: order 7, contains (1/7)(6+5eta, 2+4eta, 6+5eta)",
        fg.order == 7 and fg.dimension == 0 and t.ETA_FIXED_GENERATOR in members,
        fg,
    )
    fh = t.fixed_subgroup(eta, "h_tilde")
    first_factor = all(all(x == 0 for x in v[2:]) for v in fh.kernel_basis) and len(fh.kernel_basis) == 2
    first_factor = first_factor and abs(il.det([v[:2] for v in fh.kernel_basis])) == 1
    rep.add(
        "torus.fixed.h_tilde",
        "h~-fixed set of E_eta^3 is the connected 1-torus E_eta x 0 x 0",
        first_factor and fh.order == 1,
        fh,
    )
    fo = t.fixed_subgroup(t.e_omega_cube_model(), "omega")
    rep.add(
        "torus.fixed.omega",
        "omega Id on E_omega^3 fixes |det(omega - 1)| = 27 points",
        fo.order == 27 and abs(il.det(il.matsub(t.e_omega_cube_model().real_matrix("omega"), il.identity(6)))) == 27,
        fo,
    )
    fa = t.fixed_subgroup(t.a_mu_model(), "m_mu")
    rep.add("torus.fixed.m_mu", "m_mu on A(mu) fixes 7 points", fa.order == 7, fa)
    rep.report("torus.alpha_claims", "truth table for the two expressions of the generator alpha", t.verify_alpha_claims())
    return rep


def klein_suite(opts: Options) -> VerificationReport:
    from . import klein as k

    rep = VerificationReport("klein")
    expected = {"q0": k._div(q0=3, q1=1), "q1": k._div(q1=3, qinf=1), "qinf": k._div(qinf=3, q0=1)}
    for q, D in expected.items():
        td = k.tangent_divisor(q)
        rep.add(f"klein.tangent.{q}", f"tangent line at {q} cuts {D}", td["divisor"] == D and td["degree"] == 4, td)
    ph = k.phiq_identities()
    rep.add(
        "klein.phiq",
        "2q0+q1 ~ 3qinf, 2q1+qinf ~ 3q0, 2qinf+q0 ~ 3q1",
        all(ph["identities"].values()),
        ph["identities"],
    )
    rep.add(
        "klein.s3_fixed_classes",
        "S^3 of the 3 fixed points: 10 divisors in 7 classes, 3 pairs and 4 singletons",
        ph["s3_size"] == 10 and ph["class_count"] == 7 and ph["pairs_match"] and ph["singletons_match"],
        ph,
    )
    cm = k.coordinate_maps()
    rep.add("klein.coordinate_maps", "g: (X, Y) -> (X, mu Y), h: (X, Y) -> (1/(1-X), -X/Y^3)", all(cm.values()), cm)
    mu = Cyc.mu
    diag = ((mu(4), ZERO, ZERO), (ZERO, mu(2), ZERO), (ZERO, ZERO, mu(1)))
    cyc = ((ZERO, ZERO, ONE), (ONE, ZERO, ZERO), (ZERO, ONE, ZERO))
    pg = k.pullback_differentials("g")
    ph_ = k.pullback_differentials("h")
    rep.add("klein.pullback.g", "g^* = diag(mu^4, mu^2, mu) on holomorphic differentials", pg == diag, pg)
    rep.add("klein.pullback.h", "h^* permutes the differential basis cyclically", ph_ == cyc, ph_)
    value = k.eval_phi4((1, 1, 1))
    rep.report(
        "klein.phi4_at_u1",
        "value of Z1^3 Z2 + Z2^3 Z3 + Z3^3 Z1 at (1, 1, 1) against the reference value 4",
        {"computed": value, "reference": 4, "agrees": value == 4},
    )
    rep.add("klein.phi4_at_u1_nonzero", "Phi4(1, 1, 1) != 0, so u(1) is off the quartic", value != 0, value)
    return rep


def cohomology_suite(opts: Options) -> VerificationReport:
    from . import cohomology as c

    rep = VerificationReport("cohomology")
    gen = c.verify_generic_expansion()
    rep.add(
        "cohomology.volume_form",
        "Re/Im of dz1^dz2^dz3 in e*, f* for generic alpha, beta",
        gen["all_coefficients_match"],
        gen,
    )
    rep.add("cohomology.wedge_signs", "top wedge of permuted covectors = sign of the permutation", c.all_permutation_signs_match())
    for tag in Disc:
        name = tag.name.lower()
        sp = c.check_specialization(tag)
        rep.add(
            f"cohomology.{name}.specialization",
            "Re Omega = A - B/2, Im Omega = beta B",
            all(v for k, v in sp.items() if k != "beta_squared"),
            sp,
        )
        ab = c.verify_AB_basis(tag)
        rep.add(f"cohomology.{name}.invariant_rank", "H^3(T, Z)^G has rank 2", ab["rank"] == 2, ab["basis"])
        rep.add(f"cohomology.{name}.AB_invariant", "A and B are G-invariant", ab["A_invariant"] and ab["B_invariant"])
        rep.add(
            f"cohomology.{name}.AB_basis",
            "A, B is an integral basis of H^3(T, Z)^G",
            ab["unimodular"] and abs(ab["coefficient_minor_det"]) == 1,
            {k: ab[k] for k in ("change_of_basis", "determinant", "coefficient_minor", "coefficient_minor_det")},
        )
        rank = c.hodge_plane_rank(tag)
        rep.add(f"cohomology.{name}.hodge_plane", "span{Re Omega, Im Omega} = H^3(T, R)^G", rank == 2, rank)
        jac = c.intermediate_jacobian(c.TauData.of(tag))
        rep.add(f"cohomology.{name}.intermediate_jacobian", f"J^2 is homothetic to E_{name}", jac.homothetic_to_tau, jac)
    ji = c.intermediate_jacobian(c.TAU_I)
    rep.add("cohomology.tau_i.intermediate_jacobian", "tau = i gives Z + Zi", ji.homothetic_to_tau, ji)
    return rep


def quotients_suite(opts: Options) -> VerificationReport:
    from . import quotients as q

    rep = VerificationReport("quotients")
    pres = q.z3_invariant_presentation()
    rep.add("quotients.z3.index_set", "|I| = 10", pres["count"] == 10, [list(n) for n in pres["generators"]])
    rep.add(
        "quotients.z3.relations",
        "W_n^3 = W_(3,0,0)^n1 W_(0,3,0)^n2 W_(0,0,3)^n3 under W_n -> z^n",
        pres["all_identities"],
        [str(r) for r in pres["relations"]],
    )
    charts = q.toric_charts_z3()
    rep.add(
        "quotients.z3.charts",
        "three charts, unimodular and crepant, glued by monomial maps, covering the quotient cone",
        charts["all_ok"],
        charts,
    )
    bm = q.kummer_z3_birational_model()
    rep.add(
        "quotients.z3.birational_model",
        "W_n^3 = prod X_j^nj (X_j - 1)^nj for n in I', with Y_j^3 = X_j (X_j - 1)",
        bm["count"] == 7 and bm["relations_hold"] and bm["omega_invariant"],
        bm,
    )
    z7 = q.z7_invariant_generators()
    rep.add("quotients.z7.box_count", "#{0 <= n_j < 7 : n1 + 2n2 + 3n3 = 0 mod 7} = 49", z7["box_count"] == 49, z7["box_count"])
    rep.add(
        "quotients.z7.invariance",
        "every listed generator is fixed by sigma_k -> mu^k sigma_k",
        z7["all_invariant"] and all(z7["symmetric_definitions"].values()),
        z7["symmetric_definitions"],
    )
    g3 = q.z3_generation(opts.z3_degree_bound)
    rep.add("quotients.z3.generation", f"I generates all Z_3-invariant monomials up to degree {opts.z3_degree_bound}", g3.generated, g3)
    g7 = q.z7_generation(opts.z7_degree_bound)
    rep.report(
        "quotients.z7.generation",
        f"listed generators produce every invariant monomial in s, sigma up to degree {opts.z7_degree_bound}",
        g7,
    )
    return rep


def modularity_suite(opts: Options) -> VerificationReport:
    from . import modularity as m

    rep = VerificationReport("modularity")
    rows = []
    eta_table = None
    for model in (m.OMEGA_CUBIC, m.ETA_WEIERSTRASS):
        name = model.tag.name.lower()
        table, bad = m.frobenius_table(model, opts.p_max, opts.jobs)
        if model is m.ETA_WEIERSTRASS:
            eta_table = table
        rep.report(f"modularity.{name}.bad_primes", "primes where the model is singular", bad)
        rep.add(
            f"modularity.{name}.hasse",
            f"|a_p| <= 2 sqrt(p) for good p <= {opts.p_max}",
            all(fd.hasse_ok for fd in table.values()),
        )
        inert = [p for p, fd in table.items() if not fd.split.split]
        rep.add(
            f"modularity.{name}.inert_zero",
            "a_p = 0 at inert good primes",
            all(table[p].a_p == 0 for p in inert),
            inert,
        )
        cal = m.calibrate_grossencharacter(model, table, opts.calibration_split)
        rep.add(
            f"modularity.{name}.calibration",
            f"one congruence rule picks pi with a_p = tr(pi); trained p <= {opts.calibration_split}, no held-out mismatch",
            cal.ok,
            cal,
        )
        factors = {p: m.euler_factor_h3(fd) for p, fd in table.items()}
        rep.add(
            f"modularity.{name}.h3_factor",
            "roots of 1 - b_p T + p^3 T^2 are the cubes of the weight-2 roots",
            all(f.cubes_of_roots_ok() for f in factors.values()),
        )
        if cal.rule is not None:
            chi3 = all(m.chi_cubed_check(cal.rule, fd) for fd in table.values() if fd.split.split)
            rep.add(f"modularity.{name}.chi_cubed", "b_p = pi^3 + conj(pi)^3 for calibrated pi", chi3)
            rep.add(
                f"modularity.{name}.multiplicative",
                "a_pq = tr(pi_p pi_q) + tr(pi_p conj(pi_q)) for split p, q",
                _multiplicativity(m, cal.rule, table, bad, opts.p_max),
            )
        cube = [m.cube_count_check(model, p) for p in (2, 3, 5) if p in table]
        rep.add(
            f"modularity.{name}.cube_field_count",
            "b_p = p^3 + 1 - #E(F_p^3) at good p in {2, 3, 5}",
            bool(cube) and all(c["matches"] for c in cube),
            cube,
        )
        for p, fd in table.items():
            checks = fd.hasse_ok and fd.inert_ok
            rows.append(
                {
                    "curve": model.kind.value,
                    "p": p,
                    "N_p": fd.n_p,
                    "a_p": fd.a_p,
                    "split": fd.split.kind,
                    "pi": "" if fd.split.pi is None else f"{fd.split.pi.a}{fd.split.pi.b:+d}*tau",
                    "b_p": factors[p].b_p,
                    "checks": "ok" if checks else "FAILED",
                }
            )
        if opts.qexp_file:
            ext = m.read_qexp_file(opts.qexp_file)
            n = len(ext) - 1
            tr = {p: fd.a_p for p, fd in table.items() if p <= n}
            bad_eps = {p: 0 for p in bad}
            try:
                w2 = m.dirichlet_coefficients(tr, n, 1, bad_eps)
                w4 = m.dirichlet_coefficients({p: factors[p].b_p for p in tr}, n, 3, bad_eps)
                cmp = {"weight2": m.compare_qexp(ext, w2, bad), "weight4": m.compare_qexp(ext, w4, bad)}
            except m.MissingPrimeError as exc:
                cmp = {"error": f"missing prime {exc.args[0]}; raise --p-max to at least the file length"}
            rep.report(f"modularity.{name}.qexp_comparison", "agreement with the supplied q-expansion", cmp)
    klein = m.klein_jacobian_trace_check(min(opts.klein_p_max, opts.p_max), eta_table, opts.jobs)
    rep.report(
        "modularity.klein_trace",
        "p + 1 - #K(F_p) against 3 a_p(E_eta) at good p",
        klein,
    )
    rep.tables["primes"] = rows
    return rep


def _multiplicativity(m, rule, table, bad, n_max) -> bool:
    coeffs = m.dirichlet_coefficients({p: fd.a_p for p, fd in table.items()}, n_max, 1, {p: 0 for p in bad})
    split = [p for p, fd in table.items() if fd.split.split]
    for i, p in enumerate(split):
        for q in split[i + 1:]:
            if p * q > n_max:
                break
            pp = rule.normalised(table[p].split)[0]
            pq = rule.normalised(table[q].split)[0]
            if (pp * pq).trace() + (pp * pq.conj()).trace() != coeffs[p * q]:
                return False
    return True


_RUNNERS = {
    "group": group_suite,
    "torus": torus_suite,
    "klein": klein_suite,
    "cohomology": cohomology_suite,
    "quotients": quotients_suite,
    "modularity": modularity_suite,
}


def run_suite(name: str, options: Options | None = None) -> VerificationReport:
    opts = options or Options()
    if name == "all":
        rep = VerificationReport("all")
        for s in SUITES:
            rep.extend(_RUNNERS[s](opts))
        return rep
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](opts)


__all__ = ["Options", "SUITES", "Status", "run_suite"]
