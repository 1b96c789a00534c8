"""Named verification suites.  Each returns a SuiteReport; nothing here prints."""
from __future__ import annotations

import random
import time

from . import bimodule as bm
from . import jet as jt
from .bundles import (DelbarConnection, DelConnection, holomorphic_sections, leibniz01_residual,
                      leibniz10_residual, nabla01_std, nabla10_canonical, random_weighted,
                      total_curvature, weight_basis, weight_words)
from .calculus import LAMBDA, Form, d, dell, delbar, solve_wedge_constant, wedge
from .ncalg import SUQ2, Poly, check_confluence, normal_form_by_strategy, random_poly
from .printing import format_scalar
from .report import SuiteReport
from .scalar import Q, qint_by_quotient
from .su2 import check_relations, is_homogeneous, xminus, xplus

DEFAULT_RANGES = {
    "connections": range(-2, 3),
    "sections": range(-3, 4),
    "jet": range(-2, 3),
    "theorem": range(-3, 4),
    "curvature-table": range(-4, 5),
    "bimodule": range(-2, 3),
}
SUITES = ("confluence", "calculus", "connections", "sections", "jet", "theorem",
          "curvature-table", "bimodule")


def suite_registry():
    return list(SUITES)


def rng_for(cfg, suite, n=None):
    # str seeds are hashed deterministically by random.Random
    return random.Random(f"{cfg.seed}:{suite}:{n}")


def _few(cfg, k):
    return max(1, min(cfg.samples, k))


def _z(x):
    return x.is_zero() if hasattr(x, "is_zero") else not x


def _acc(items):
    """First nonzero residual of an iterable, or None."""
    for r in items:
        if not _z(r):
            return r
    return None


def _check(rep, name, residuals):
    bad = _acc(residuals)
    rep.add(name, bad is None, "" if bad is None else _fmt(bad))


def _fmt(x):
    if isinstance(x, (jt.JetForm, jt.JetElement)):
        return jt._show(x)
    return str(x)


def nonholomorphic(rng, n, maxlen):
    L = max(maxlen, abs(n) + 2)
    while True:
        e = random_weighted(rng, n, L)
        if xminus(e):
            return e


# ------------------------------------------------------------------- suites

def run_confluence(cfg, n=None):
    rep = SuiteReport("confluence", cfg.params())
    r = check_confluence(SUQ2)
    rep.add("confluence.rules", len(SUQ2.rules) == 7, f"{len(SUQ2.rules)} rules")
    rep.add(f"confluence.overlaps.count={r.count}", r.count > 0)
    rep.add("confluence.overlaps.resolved", r.confluent,
            "; ".join(f"{w}: {d}" for w, d in r.failures))
    rng = rng_for(cfg, "confluence")
    polys = [random_poly(rng, maxlen=cfg.maxlen + 1, nterms=3) for _ in range(cfg.samples)]
    _check(rep, "confluence.strategy-independence",
           (normal_form_by_strategy(Poly(p.terms, normalized=True), rng) - p for p in polys))
    bad = check_relations()
    rep.add("su2.action-respects-relations", not bad, "; ".join(f"{h} on {w}" for h, w, _ in bad))
    return rep


def run_calculus(cfg, n=None):
    rep = SuiteReport("calculus", cfg.params())
    rng = rng_for(cfg, "calculus")
    L = max(cfg.maxlen, 3)
    words = [Poly.word(w) for w in weight_words(0, L + 1)]
    rand = [random_weighted(rng, 0, L + 1) for _ in range(2 * cfg.samples)]
    fs = words + rand
    _check(rep, "calculus.d2=0.functions", (d(d(Form.fn(f))) for f in fs))
    one_forms = [Form(cm=random_weighted(rng, -2, L), cp=random_weighted(rng, 2, L))
                 for _ in range(cfg.samples)]
    _check(rep, "calculus.d2=0.one-forms", (d(d(x)) for x in one_forms))
    pairs = [(f, g) for f in words[:6] for g in words[:6]]
    pairs += [(random_weighted(rng, 0, L), random_weighted(rng, 0, L)) for _ in range(2 * cfg.samples)]
    _check(rep, "calculus.leibniz.functions",
           (d(Form.fn(f * g)) - wedge(d(Form.fn(f)), Form.fn(g)) - wedge(Form.fn(f), d(Form.fn(g)))
            for f, g in pairs))
    _check(rep, "calculus.leibniz.function-one-form",
           (d(wedge(Form.fn(f), x)) - wedge(d(Form.fn(f)), x) - wedge(Form.fn(f), d(x))
            for (f, _), x in zip(pairs, one_forms)))
    _check(rep, "calculus.leibniz.one-form-function",
           (d(wedge(x, Form.fn(f))) - wedge(d(x), Form.fn(f)) + wedge(x, d(Form.fn(f)))
            for (f, _), x in zip(pairs, one_forms)))
    _check(rep, "calculus.del-delbar-anticommute",
           (dell(delbar(Form.fn(f))) + delbar(dell(Form.fn(f))) for f in fs))

    def bad_bidegree(f):
        x = delbar(Form.fn(f))
        ok = not x.c0 and not x.cp and not x.cmp and is_homogeneous(x.cm, -2)
        return Poly() if ok else x.cm + x.cp + x.cmp

    _check(rep, "calculus.delbar-bidegree", (bad_bidegree(random_weighted(rng, 0, L + 1))
                                             for _ in range(cfg.samples)))
    lam = solve_wedge_constant()
    rep.add("calculus.wedge-constant", lam == LAMBDA, format_scalar(lam), note=format_scalar(lam))
    return rep


def run_connections(cfg, n):
    rep = SuiteReport("connections", dict(cfg.params(), n=n))
    rng = rng_for(cfg, "connections", n)
    k = _few(cfg, 20)
    sam = [(random_weighted(rng, 0, cfg.maxlen), random_weighted(rng, n, cfg.maxlen)) for _ in range(k)]
    g01, g10 = random_weighted(rng, -2, cfg.maxlen), random_weighted(rng, 2, cfg.maxlen)
    conns01 = {"std": nabla01_std(n), "perturbed": DelbarConnection(n, g01)}
    conns10 = {"canonical": nabla10_canonical(n), "perturbed": DelConnection(n, g10)}
    for name, c in conns01.items():
        _check(rep, f"connections.delbar-leibniz.{name}[n={n}]",
               (leibniz01_residual(c, a, e) for a, e in sam))
    for name, c in conns10.items():
        _check(rep, f"connections.del-leibniz.{name}[n={n}]",
               (leibniz10_residual(c, a, e) for a, e in sam))
    # curvature is a left module map
    _check(rep, f"connections.curvature-left-linear[n={n}]",
           (total_curvature(conns10["perturbed"], conns01["perturbed"], a * e)
            - a * total_curvature(conns10["perturbed"], conns01["perturbed"], e) for a, e in sam))
    return rep


def run_sections(cfg, n):
    rep = SuiteReport("sections", dict(cfg.params(), n=n))
    if n == 0:
        H = holomorphic_sections(nabla01_std(0), 6)
        ok = len(H) == 1 and set(H[0].terms) == {()}
        rep.add("sections.ker-delbar.weight0.len<=6", ok, ", ".join(map(str, H)),
                note=f"basis: {', '.join(map(str, H))}")
    L = max(cfg.maxlen, abs(n) + 2)
    H = holomorphic_sections(nabla01_std(n), L)
    expect = max(0, 1 - n)
    rep.add(f"sections.dim[n={n}]", len(H) == expect, f"{len(H)} != {expect}",
            note=f"dim {len(H)} at maxlen {L}")
    starred = {SUQ2.index["a*"], SUQ2.index["c*"]}
    rep.add(f"sections.only-a-c[n={n}]", all(not (set(w) & starred) for h in H for w in h.terms),
            ", ".join(map(str, H)))
    return rep


def run_jet(cfg, n, conn01=None):
    conn01 = conn01 or nabla01_std(n)
    rep = SuiteReport("jet", dict(cfg.params(), n=n))
    rng = rng_for(cfg, "jet", n)
    k = _few(cfg, 15)
    L = cfg.maxlen
    Le = jt.eta_len(n, L)
    sam = [(random_weighted(rng, 0, L), jt.JetElement(n, random_weighted(rng, n, L), random_weighted(rng, n + 2, Le)))
           for _ in range(k)]
    tag = f"[n={n}]"
    _check(rep, "jet.left-action.unit" + tag, (jt.jet_left_action(Poly.const(1), j) - j for _, j in sam))
    _check(rep, "jet.left-action.assoc" + tag,
           (jt.jet_left_action(a * b, j) - jt.jet_left_action(a, jt.jet_left_action(b, j))
            for (a, j), (b, _) in zip(sam, reversed(sam))))
    _check(rep, "jet.nablaJ-leibniz" + tag, (jt.jet_leibniz_residual(conn01, a, j) for a, j in sam))
    _check(rep, "jet.Dtilde-leibniz" + tag, (jt.D_tilde_leibniz_residual(conn01, a, j.eta) for a, j in sam))
    _check(rep, "jet.D-expand" + tag, (jt.D_E_expand_residual(conn01, a, j.e) for a, j in sam))
    _check(rep, "jet.beta-expand" + tag, (jt.beta_expand_residual(conn01, a, j.e) for a, j in sam))
    naive = sum(not jt.beta_expand_residual(conn01, a, j.e, corrected=False).is_zero() for a, j in sam)
    rep.notes.append(f"beta expansion without the dbar a ^ nabla_can e term fails on {naive}/{len(sam)} samples {tag}")
    _check(rep, "jet.betatilde=mu^-1.beta" + tag,
           (jt.beta_tilde(conn01, j.e).scale(jt.mu_factor(n)) - jt.beta(conn01, j.e) for _, j in sam))
    _check(rep, "jet.nablaJ-at-eta=0" + tag,
           (jt.nabla_J(conn01)(jt.JetElement(n, j.e))
            - jt.JetForm(n, conn01(j.e), jt.beta_tilde(conn01, j.e)) for _, j in sam))
    rep.extend(jt.jet_sequence_check(n, L, conn01), prefix="jet.sequence.")
    # functor: phi = right multiplication by a holomorphic h (a polynomial in a, c)
    h1 = random_ac(rng, 1)
    h2 = random_ac(rng, 1)
    phi, psi = jt.RightMult(n, h1), None
    psi = jt.RightMult(phi.m, h2)
    for r in jt.functor_checks(phi, sam[:8], psi):
        rep.add(f"jet.functor.{r.name}{tag}", r.ok, r.residual)
    _check(rep, "jet.functor.beta-identity" + tag, (jt.beta_identity_residual(phi, j.e) for _, j in sam[:8]))
    # a map that is not holomorphic is rejected by the intertwining check
    bad = jt.RightMult(n, Poly.gen("a*"))
    rep.add("jet.functor.rejects-non-holomorphic" + tag,
            any(not jt.intertwining_residual(bad, nonholomorphic(rng, n, L)).is_zero() for _ in range(3)))
    return rep


def random_ac(rng, degree):
    """Random homogeneous polynomial of degree `degree` in a and c (weight -degree)."""
    from .scalar import Scalar
    terms = {}
    for i in range(degree + 1):
        c = rng.choice((-2, -1, 1, 2, 3))
        if c:
            terms[(0,) * (degree - i) + (2,) * i] = Scalar.s_power(0, c)
    return Poly(terms)


def run_theorem(cfg, n, conn10=None, conn01=None):
    rep = SuiteReport("theorem", dict(cfg.params(), n=n))
    rng = rng_for(cfg, "theorem", n)
    tag = f"[n={n}]"
    c01 = conn01 or nabla01_std(n)
    c10 = conn10 or nabla10_canonical(n)
    L = max(cfg.maxlen, abs(n) + 2)
    dz, tz = jt.theorem_instance(c10, c01, L)
    label = "both zero" if dz and tz else ("both nonzero" if not dz and not tz else "INCONSISTENT")
    rep.add("theorem.given-pair" + tag, dz == tz, f"delta zero={dz}, Theta zero={tz}",
            note=f"CONSISTENT ({label})" if dz == tz else label)
    k = _few(cfg, 20)
    sam = [(random_weighted(rng, 0, cfg.maxlen), random_weighted(rng, n, max(cfg.maxlen, abs(n))))
           for _ in range(k)]
    for r in jt.splitting_checks(c10, c01, sam[:10]):
        rep.add(f"theorem.splitting.{r.name}{tag}", r.ok, r.residual)
    # perturbations of nabla^{1,0} by e -> e g, g of weight 2; the first is g = 0
    agree = []
    counts = [0, 0]
    for i in range(k):
        g = Poly()
        while i and not g:  # coefficients can cancel; keep g = 0 for the first case only
            g = random_weighted(rng, 2, max(cfg.maxlen, 2))
        dz, tz = jt.theorem_instance(DelConnection(n, c10.perturbation + g), c01, L)
        agree.append(dz == tz)
        counts[dz] += 1
    rep.add(f"theorem.perturbations{tag}", all(agree), f"{agree.count(False)} disagreements",
            note=f"{k} perturbations, delta=0 in {counts[1]}")
    _check(rep, "theorem.two-route-curvature" + tag,
           (jt.total_curvature_expanded(c10, c01, e) - jt.total_curvature_direct(c10, c01, e) for _, e in sam))
    return rep


def run_curvature_table(cfg, ns):
    rep = SuiteReport("curvature-table", dict(cfg.params(), range=f"{min(ns)}:{max(ns)}"))
    rows = []
    for n in ns:
        kappa = jt.curvature_line_bundle(n)
        expect = -(Q ** (1 - n)) * qint_by_quotient(n)
        rep.add(f"curvature-table.formula[n={n:+d}]", kappa == expect,
                f"{format_scalar(kappa)} != {format_scalar(expect)}", note=format_scalar(kappa))
        rep.add(f"curvature-table.vanishes-iff-n=0[n={n:+d}]", (not kappa) == (n == 0))
        rows.append(f"n={n:+d}  kappa = {format_scalar(kappa)}")
    rep.notes.extend(rows)
    return rep


def run_bimodule(cfg, n):
    rep = SuiteReport("bimodule", dict(cfg.params(), n=n))
    rng = rng_for(cfg, "bimodule", n)
    tag = f"[n={n}]"
    L = cfg.maxlen
    k = _few(cfg, 10)
    Le = max(L, abs(n) + 2)

    def pair():
        return random_weighted(rng, n, Le), random_weighted(rng, 0, L)

    ext, fresh = [pair() for _ in range(k)], [pair() for _ in range(k)]
    rep.add("bimodule.delbar-surjective" + f"[maxlen={L}]", bm.delbar_surjective(L))
    try:
        data = bm.extracted_data(n, ext, fresh)
        rep.add("bimodule.sigma-bar-extracted" + tag, True, note=f"twist {format_scalar(data.sigmaBar.twist)}")
        rep.add("bimodule.sigma-E-extracted" + tag, True, note=f"twist {format_scalar(data.sigmaE.twist)}")
    except bm.NotBimoduleError as ex:
        rep.add("bimodule.sigma-extraction" + tag, False, f"{ex}: {ex.residual}")
        return rep
    # a second extraction through shifted preimages a + 1
    alt = bm.sigma_bar_from_connection(data.conn01, [(e, a + Poly.const(1)) for e, a in ext])
    rep.add("bimodule.sigma-bar-unique" + tag, alt == data.sigmaBar)
    for label, conn, fn in (("delbar", DelbarConnection(n, bm.non_bimodule_perturbation(n, -1)),
                             bm.sigma_bar_from_connection),
                            ("del", DelConnection(n, bm.non_bimodule_perturbation(n, +1)),
                             bm.sigma_from_connection)):
        try:
            fn(conn, ext, fresh)
            rep.add(f"bimodule.rejects-non-bimodule-{label}" + tag, False, "accepted")
        except bm.NotBimoduleError:
            rep.add(f"bimodule.rejects-non-bimodule-{label}" + tag, True)

    trip = [(random_weighted(rng, 0, L), random_weighted(rng, 0, L), random_weighted(rng, 0, L),
             nonholomorphic(rng, n, L), random_weighted(rng, n + 2, Le)) for _ in range(k)]
    jets = [jt.JetElement(n, e, eta) for *_, e, eta in trip]
    sE = data.sigmaE
    _check(rep, "bimodule.right-action.unit" + tag, (bm.right_jet_action(sE, j, Poly.const(1)) - j for j in jets))
    _check(rep, "bimodule.right-action.commutes" + tag,
           (bm.right_jet_action(sE, jt.jet_left_action(b, j), a) - jt.jet_left_action(b, bm.right_jet_action(sE, j, a))
            for (a, b, *_), j in zip(trip, jets)))
    _check(rep, "bimodule.right-action.kernel" + tag,
           (bm.right_jet_action(sE, jt.JetElement(n, Poly(), j.eta), a) - jt.JetElement(n, Poly(), j.eta * a)
            for (a, *_), j in zip(trip, jets)))
    _check(rep, "bimodule.psi0.Dtilde-twisted-leibniz" + tag,
           (jt.D_tilde(data.conn01, sE(e * xplus(b)) * a) - jt.D_tilde(data.conn01, sE(e * xplus(b))) * a
            - data.psi0(sE(e * xplus(b)) * xminus(a)) for a, b, c, e, _ in trip))
    _check(rep, "bimodule.sigma.left-linear" + tag,
           (bm.sigma_left_residual(data, b, e, a) for a, b, c, e, _ in trip))
    # right-linearity defect of sigma_J in pair coordinates against the compatibility residual, sample by sample
    mism = [(bm.sigma_right_residual(data, e, a, b).is_zero(), bm.compatibility_residual(data, e, a, b).is_zero())
            for a, b, c, e, _ in trip]
    rep.add("bimodule.sigma.right-iff-compatibility" + tag, all(x == y for x, y in mism),
            f"{sum(x != y for x, y in mism)} samples disagree")
    rc = _acc(bm.compatibility_residual(data, e, a, b) for a, b, c, e, _ in trip)
    rep.add("bimodule.compatibility.canonical" + tag, rc is None, "" if rc is None else str(rc))
    _check(rep, "bimodule.lift.lift" + tag, (bm.lift_residual(data, j, b) for (a, b, *_), j in zip(trip, jets)))
    broken = bm.BimoduleData(data.conn01, data.conn10, data.sigmaBar, sE.perturbed(Q))
    neg = [bm.lift_residual(broken, j, b) for (a, b, *_), j in zip(trip, jets) if xplus(b)]
    rep.add("bimodule.lift.broken-sigmaE-detected" + tag, any(not r.is_zero() for r in neg))
    _check(rep, "bimodule.sigmaJ.left-linear" + tag,
           (bm.sigma_J_left_residual(data, a, j, b) for (a, b, *_), j in zip(trip, jets)))
    _check(rep, "bimodule.sigmaJ.right-linear" + tag,
           (bm.sigma_J_right_residual(data, j, b, c) for (a, b, c, *_), j in zip(trip, jets)))
    xs = [random_weighted(rng, -2, L) for _ in trip]
    ps = [(a, j, x) for (a, *_), j, x in zip(trip, jets, xs)]
    for psi, label in ((data.psi0, "psi0"), (data.psi0.perturbed(0), "zero")):
        for r in bm.extend_psi_checks(psi, data, ps):
            rep.add(f"bimodule.{r.name.replace(' ', '-')}.{label}{tag}", r.ok, r.residual)
    Ps = [random_weighted(rng, n - 2, Le) for _ in trip]
    _check(rep, "bimodule.Psi-nabla-leibniz" + tag,
           (bm.psi_nabla_leibniz_residual(data.conn10, sE, P, b) for (a, b, *_), P in zip(trip, Ps)))
    agree, h10, htot = bm.total_connection_checks(data.conn10, data.conn01, sE, data.sigmaBar, ext)
    rep.add("bimodule.total-connection.canonical" + tag, agree and h10 and htot)
    pert = DelConnection(n, bm.non_bimodule_perturbation(n, +1))
    agree2, h10b, htotb = bm.total_connection_checks(pert, data.conn01, sE, data.sigmaBar, ext)
    rep.add("bimodule.total-connection.perturbed-both-break" + tag, agree2 and not h10b and not htotb)
    _check(rep, "bimodule.curvature-right-defect" + tag,
           (bm.curvature_right_defect_residual(data, e, a) for a, b, c, e, _ in trip))
    if n == 0:
        rd = _acc(bm.diagram_residual(data, e, a) for a, b, c, e, _ in trip)
        rep.add("bimodule.diagram.as-stated" + tag, rd is None, "" if rd is None else str(rd))
        _check(rep, "bimodule.diagram.with-cross-terms" + tag,
               (bm.diagram_residual(data, e, a, corrected=True) for a, b, c, e, _ in trip))
        _check(rep, "bimodule.diagram.constant-e" + tag,
               (bm.diagram_residual(data, Poly.const(1), a) for a, *_ in trip))
    return rep


RUNNERS = {
    "confluence": run_confluence,
    "calculus": run_calculus,
    "connections": run_connections,
    "sections": run_sections,
    "jet": run_jet,
    "theorem": run_theorem,
    "bimodule": run_bimodule,
}


def run_suite(name, cfg, ns=None):
    """Run one suite; n-dependent suites run once per n in ns (or their default range)."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    t0 = time.perf_counter()
    if name == "curvature-table":
        reps = [run_curvature_table(cfg, list(ns if ns is not None else DEFAULT_RANGES[name]))]
    elif name in ("confluence", "calculus"):
        reps = [RUNNERS[name](cfg)]
    else:
        nn = list(ns if ns is not None else DEFAULT_RANGES[name])
        parts = [RUNNERS[name](cfg, n) for n in nn]
        merged = SuiteReport(name, dict(cfg.params(), n=f"{min(nn)}:{max(nn)}" if len(nn) > 1 else nn[0]))
        for p in parts:
            merged.checks.extend(p.checks)
            merged.notes.extend(p.notes)
        reps = [merged]
    for r in reps:
        r.duration = time.perf_counter() - t0
    return reps
