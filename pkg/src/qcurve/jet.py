"""First jets of line bundles, the lifted holomorphic structure and the
splitting/defect machinery for holomorphic connections.

A JetElement (e, eta) stores e in L_n and eta as the collapsed value of
Omega^{1,0} (x) L_n (weight n+2).  The left action is deformed,

    a.(e, eta) = (a e, q^n X_+(a) e + a eta),

so J is isomorphic to E + Omega^{1,0} (x) E as a left module only after the
shift (e, eta) -> (e, eta - X_+ e), i.e. subtracting the canonical
del-connection.  Values in Omega^{0,1} (x) J are stored in these "split"
coordinates, where the left action is componentwise:

    JetForm(u, w):  u collapsed in Omega^{0,1} (x) E        (weight n-2)
                    w collapsed in Omega^{0,1} (x) Omega^{1,0} (x) E  (weight n)
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bundles import (DelbarConnection, DelConnection, WeightError, collapse, delbar_tensor,
                      nabla01_std, nabla10_canonical, qn, require_weight, total_curvature,
                      uncollapse, weight_basis)
from .calculus import LAMBDA, Form, dell, delbar, wedge
from .linalg import kernel_vectors
from .ncalg import Poly
from .scalar import Q, ZERO, Scalar
from .su2 import xminus, xplus


class CurvatureError(ArithmeticError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


def mu_factor(n: int) -> Scalar:
    """Collapsed wedge Omega^{0,1} (x) Omega^{1,0} (x) L_n -> Omega^{1,1} (x) L_n."""
    return Q ** (n + 2)


@dataclass(frozen=True)
class JetElement:
    n: int
    e: Poly = field(default_factory=Poly)
    eta: Poly = field(default_factory=Poly)

    def __post_init__(self):
        require_weight(self.e, self.n, "jet e-slot")
        require_weight(self.eta, self.n + 2, "jet eta-slot")

    def __add__(self, o):
        return JetElement(self.n, self.e + o.e, self.eta + o.eta)

    def __sub__(self, o):
        return JetElement(self.n, self.e - o.e, self.eta - o.eta)

    def scale(self, c):
        return JetElement(self.n, self.e.scale(c), self.eta.scale(c))

    def is_zero(self):
        return not self.e and not self.eta

    def split(self):
        return self.e, self.eta - xplus(self.e)


@dataclass(frozen=True)
class JetForm:
    n: int
    u: Poly = field(default_factory=Poly)
    w: Poly = field(default_factory=Poly)

    def __post_init__(self):
        require_weight(self.u, self.n - 2, "Omega^{0,1} (x) E slot")
        require_weight(self.w, self.n, "Omega^{0,1} (x) Omega^{1,0} (x) E slot")

    def __add__(self, o):
        return JetForm(self.n, self.u + o.u, self.w + o.w)

    def __sub__(self, o):
        return JetForm(self.n, self.u - o.u, self.w - o.w)

    def lmul(self, a):
        return JetForm(self.n, a * self.u, a * self.w)

    def is_zero(self):
        return not self.u and not self.w

    def parts(self):
        return (self.u, self.w)


def from_split(n, e, zeta) -> JetElement:
    return JetElement(n, e, zeta + xplus(e))


def jet_left_action(a: Poly, j: JetElement) -> JetElement:
    require_weight(a, 0, "scalar function")
    return JetElement(j.n, a * j.e, xplus(a).scale(qn(j.n)) * j.e + a * j.eta)


def delbar_tensor_jet(a: Poly, j: JetElement) -> JetForm:
    """dbar a (x) j in split coordinates."""
    e, zeta = j.split()
    return JetForm(j.n, delbar_tensor(a, e, j.n), xminus(a) * zeta)


# --------------------------------------------------------- D_E, beta, nabla_J

def D_E(conn01: DelbarConnection, eta: Poly) -> Poly:
    """dbar (x) id - wedge (id (x) nabla) on Omega^{1,0} (x) E, collapsed in Omega^{1,1} (x) E."""
    require_weight(eta, conn01.n + 2, "eta")
    return conn01.extend(eta)


def D_tilde(conn01: DelbarConnection, eta: Poly) -> Poly:
    return D_E(conn01, eta).scale(mu_factor(conn01.n).inv())


def beta(conn01: DelbarConnection, e: Poly) -> Poly:
    """(d (x) id) o nabla-bar, with d (x) id read as the canonical del-extension
    on Omega^{0,1} (x) E (the naive d (x) id depends on the representative)."""
    return nabla10_canonical(conn01.n).extend(conn01(e))


def beta_tilde(conn01: DelbarConnection, e: Poly) -> Poly:
    return beta(conn01, e).scale(mu_factor(conn01.n).inv())


def nabla_J(conn01: DelbarConnection):
    def apply(j: JetElement) -> JetForm:
        if j.n != conn01.n:
            raise WeightError(f"jet of L_{j.n} fed to a connection on L_{conn01.n}")
        return JetForm(j.n, conn01(j.e), beta_tilde(conn01, j.e) + D_tilde(conn01, j.eta))
    return apply


def jet_leibniz_residual(conn01, a, j) -> JetForm:
    nJ = nabla_J(conn01)
    return nJ(jet_left_action(a, j)) - nJ(j).lmul(a) - delbar_tensor_jet(a, j)


def D_tilde_leibniz_residual(conn01, a, eta) -> Poly:
    # dbar a (x) eta in Omega^{0,1} (x) Omega^{1,0} (x) E is X_-(a) eta
    return D_tilde(conn01, a * eta) - a * D_tilde(conn01, eta) - xminus(a) * eta


# ------------------------------------------------ representative-level oracles

def apply_form_op(op, pairs):
    return [(op(xi), v) for xi, v in pairs]


def wedge_with(pairs, conn, kind, n):
    """sum_i xi_i ^ nabla(v_i), expanded through representatives of nabla(v_i)."""
    out = []
    for xi, v in pairs:
        for zeta, v2 in uncollapse(conn(v), n, kind):
            out.append((wedge(xi, zeta), v2))
    return out


def D_E_expand_residual(conn01: DelbarConnection, a: Poly, e: Poly) -> Poly:
    """D_E(da (x) e) - (dbar d a (x) e - da ^ nabla-bar e), right side built from forms."""
    n = conn01.n
    lhs = D_E(conn01, xplus(a).scale(qn(n)) * e)
    da = Form(cp=xplus(a))
    rhs = collapse([(delbar(da), e)], n, "11") - collapse(wedge_with([(da, e)], conn01, "01", n), n, "11")
    return lhs - rhs


def beta_expand_residual(conn01: DelbarConnection, a: Poly, e: Poly, corrected=True) -> Poly:
    """beta(ae) - a beta(e) - da ^ nabla-bar e - d dbar a (x) e [+ dbar a ^ nabla_can e].

    The bracketed term comes from reading d (x) id through the canonical
    del-connection; without it the identity fails for non-constant e."""
    n = conn01.n
    can = nabla10_canonical(n)
    da, dba = Form(cp=xplus(a)), Form(cm=xminus(a))
    r = beta(conn01, a * e) - a * beta(conn01, e)
    r = r - collapse(wedge_with([(da, e)], conn01, "01", n), n, "11")
    r = r - collapse([(dell(dba), e)], n, "11")
    if corrected:
        r = r + collapse(wedge_with([(dba, e)], can, "10", n), n, "11")
    return r


# ------------------------------------------------------------- jet sequence

def jet_i(eta: Poly, n: int) -> JetElement:
    return JetElement(n, Poly(), eta)


def jet_pi(j: JetElement) -> Poly:
    return j.e


def eta_len(n: int, maxlen: int) -> int:
    # the eta-slot has weight n+2; keep it nonempty at small maxlen
    return max(maxlen, abs(n + 2))


def jet_basis(n: int, maxlen: int):
    return ([JetElement(n, b, Poly()) for b in weight_basis(n, maxlen)]
            + [JetElement(n, Poly(), b) for b in weight_basis(n + 2, eta_len(n, maxlen))])


def jet_sections(conn01: DelbarConnection, maxlen: int):
    """Kernel of nabla_J on the truncated jet basis, as JetElements."""
    basis = jet_basis(conn01.n, maxlen)
    nJ = nabla_J(conn01)
    out = []
    for v in kernel_vectors(lambda j: nJ(j).parts(), basis):
        acc = JetElement(conn01.n)
        for c, b in zip(v, basis):
            if c:
                acc = acc + b.scale(c)
        out.append(acc)
    return out


@dataclass
class CheckResult:
    name: str
    ok: bool
    residual: str = ""


def _chk(name, residual):
    """residual: Poly / JetForm / JetElement / bool."""
    if isinstance(residual, bool):
        return CheckResult(name, residual, "" if residual else "false")
    ok = residual.is_zero()
    return CheckResult(name, ok, "" if ok else _show(residual))


def _show(x):
    if isinstance(x, (JetForm, JetElement)):
        a, b = (x.u, x.w) if isinstance(x, JetForm) else (x.e, x.eta)
        return f"({a}, {b})"
    return str(x)


def jet_sequence_check(n: int, maxlen=3, conn01: DelbarConnection | None = None):
    from .bundles import holomorphic_sections
    from .linalg import rank, matrix_of
    conn01 = conn01 or nabla01_std(n)
    nJ = nabla_J(conn01)
    Ebas, Obas = weight_basis(n, maxlen), weight_basis(n + 2, eta_len(n, maxlen))
    Jbas = jet_basis(n, maxlen)
    res = []
    res.append(_chk("pi.i=0", all(not jet_pi(jet_i(b, n)) for b in Obas)))
    # i injective: rank of i on the eta-basis is full
    Mi, _ = matrix_of(lambda b: (jet_i(b, n).e, jet_i(b, n).eta), Obas)
    res.append(_chk("i injective", (rank(Mi, len(Obas)) if Mi else 0) == len(Obas)))
    res.append(_chk("pi surjective", all(jet_pi(JetElement(n, b)) == b for b in Ebas)))
    # ker(pi) on the jet basis has the dimension of im(i) and lies in the eta-slot
    K = kernel_vectors(lambda j: jet_pi(j), Jbas)
    in_im = all(not any(v[: len(Ebas)]) for v in K)
    res.append(_chk("im i = ker pi", in_im and len(K) == len(Obas)))
    inter_pi, inter_i = Poly(), Poly()
    for j in Jbas:
        inter_pi = inter_pi + nJ(j).u - conn01(jet_pi(j))
    for b in Obas:
        f = nJ(jet_i(b, n))
        inter_i = inter_i + f.u + (f.w - D_tilde(conn01, b))
    res.append(_chk("(id x pi).nablaJ = nabla.pi", inter_pi))
    res.append(_chk("nablaJ.i = (id x i).Dtilde", inter_i))
    hJ = len(jet_sections(conn01, maxlen))
    hE = len(holomorphic_sections(conn01, maxlen))
    hO = len(kernel_vectors(lambda b: D_tilde(conn01, b), Obas)) if Obas else 0
    res.append(CheckResult("sections H0(J)=H0(E)+H0(O10 x E)", hJ == hE + hO,
                           "" if hJ == hE + hO else f"{hJ} != {hE} + {hO}"))
    return res


# ------------------------------------------------------------------ functor

@dataclass(frozen=True)
class RightMult:
    """phi: L_n -> L_m, e -> e h (h of weight m-n)."""
    n: int
    h: Poly

    @property
    def m(self):
        return self.n + weights_single(self.h)

    def __call__(self, e):
        return e * self.h

    def on_01(self, P):
        return (P * self.h).scale(Q ** (self.m - self.n))

    on_10 = on_01
    on_mp = on_01

    def then(self, other: "RightMult") -> "RightMult":
        if other.n != self.m:
            raise WeightError("maps are not composable")
        return RightMult(self.n, self.h * other.h)


def weights_single(h: Poly) -> int:
    from .su2 import weights_of
    ws = weights_of(h)
    if len(ws) != 1:
        raise WeightError(f"not weight homogeneous: {h}")
    return ws.pop()


def identity_map(n):
    return RightMult(n, Poly.const(1))


def intertwining_residual(phi: RightMult, e: Poly) -> Poly:
    return nabla01_std(phi.m)(phi(e)) - phi.on_01(nabla01_std(phi.n)(e))


def jet_map(phi: RightMult):
    def J(j: JetElement) -> JetElement:
        return JetElement(phi.m, phi(j.e), phi.on_10(j.eta))
    return J


def jet_map_forms(phi: RightMult):
    """id (x) J(phi) on Omega^{0,1} (x) J in split coordinates.  J(phi) is not
    diagonal there: the e-slot leaks -e X_+(h) into the Omega^{1,0} slot."""
    dh = xplus(phi.h)

    def F(f: JetForm) -> JetForm:
        return JetForm(phi.m, phi.on_01(f.u), phi.on_mp(f.w) - (f.u * dh).scale(qn(phi.n).inv()))
    return F


def functor_checks(phi: RightMult, samples, psi: RightMult | None = None):
    """samples: list of (a, JetElement) on L_n."""
    n, m = phi.n, phi.m
    J = jet_map(phi)
    JF = jet_map_forms(phi)
    nE, nF = nabla_J(nabla01_std(n)), nabla_J(nabla01_std(m))
    r_int, r_left, r_ladder, r_pi, r_i, r_dt = (Poly(),) * 3 + (Poly(),) * 3
    ladder = JetForm(m)
    left = JetElement(m)
    for a, j in samples:
        r_int = r_int + intertwining_residual(phi, j.e)
        left = left + J(jet_left_action(a, j)) - jet_left_action(a, J(j))
        ladder = ladder + nF(J(j)) - JF(nE(j))
        r_pi = r_pi + jet_pi(J(j)) - phi(jet_pi(j))
        r_i = r_i + J(jet_i(j.eta, n)).eta - phi.on_10(j.eta)
        r_dt = r_dt + D_tilde(nabla01_std(m), phi.on_10(j.eta)) - phi.on_mp(D_tilde(nabla01_std(n), j.eta))
    out = [
        _chk("phi intertwines nabla-bar", r_int),
        _chk("J(phi) left linear", left),
        _chk("J(phi) holomorphic (ladder)", ladder),
        _chk("pi.J(phi) = phi.pi", r_pi),
        _chk("J(phi).i = i.(id x phi)", r_i),
        _chk("Dtilde identity", r_dt),
    ]
    idJ = jet_map(identity_map(n))
    out.append(_chk("J(id) = id", all(idJ(j) == j for _, j in samples)))
    if psi is not None:
        comp = jet_map(phi.then(psi))
        Jpsi = jet_map(psi)
        out.append(_chk("J(psi.phi) = J(psi).J(phi)", all(comp(j) == Jpsi(J(j)) for _, j in samples)))
    return out


def beta_identity_residual(phi: RightMult, e: Poly, corrected=True) -> Poly:
    """beta~_F(phi e) - (id (x) id (x) phi) beta~_E(e) [+ q^-n nabla-bar(e) X_+(h)]."""
    bE, bF = nabla01_std(phi.n), nabla01_std(phi.m)
    r = beta_tilde(bF, phi(e)) - phi.on_mp(beta_tilde(bE, e))
    if corrected:
        r = r + (bE(e) * xplus(phi.h)).scale(qn(phi.n).inv())
    return r


# ---------------------------------------------------------------- curvature

def total_curvature_expanded(c10: DelConnection, c01: DelbarConnection, e: Poly) -> Poly:
    """Four-term expression, every term computed on explicit representatives:
    (d (x) id) nb + (dbar (x) id) n10 - (^ (x) id)(id (x) nb) n10 - (mu (x) id)(id (x) n10) nb."""
    n = c01.n
    nb = uncollapse(c01(e), n, "01")
    n10 = uncollapse(c10(e), n, "10")
    t1 = collapse(apply_form_op(dell, nb), n, "11")
    t2 = collapse(apply_form_op(delbar, n10), n, "11")
    t3 = collapse(wedge_with(n10, c01, "01", n), n, "11")
    t4 = collapse(wedge_with(nb, c10, "10", n), n, "11")
    return t1 + t2 - t3 - t4


def total_curvature_direct(c10, c01, e):
    """nabla~_tot o nabla_tot with the covariant extensions in closed form."""
    return total_curvature(c10, c01, e)


def curvature_coefficient(c10, c01, maxlen=None):
    """Scalar c with Theta(e) = c e (collapsed, forms pushed right) on the basis; raises
    CurvatureError if Theta is not a scalar multiple."""
    if maxlen is None:
        maxlen = abs(c01.n) + 2
    coeff = None
    for e in weight_basis(c01.n, maxlen):
        th = total_curvature(c10, c01, e)
        w, c0 = next(iter(e.terms.items()))
        cand = th.terms[w] / c0 if w in th.terms else ZERO
        if th != e.scale(cand):
            raise CurvatureError("curvature is not a scalar multiple", th - e.scale(cand))
        if coeff is None:
            coeff = cand
        elif coeff != cand:
            raise CurvatureError("curvature coefficient depends on e", th - e.scale(coeff))
    return coeff


def curvature_line_bundle(n: int) -> Scalar:
    """kappa with Theta = kappa w-^w+ (x) phi, forms on the left, for the canonical pair."""
    c = curvature_coefficient(nabla10_canonical(n), nabla01_std(n))
    # collapsed values carry the forms on the right; moving w-^w+ to the left of phi costs q^{2n}
    return c * qn(n).inv() ** 2


# ---------------------------------------------------------- splitting, defect

def splitting(c10: DelConnection):
    def s(e):
        return JetElement(c10.n, e, c10(e))
    return s


def splitting_forms(c10: DelConnection):
    """id (x) s in split coordinates: u -> (u, q^-n u g), g the perturbation."""
    g = c10.perturbation

    def S(u):
        return JetForm(c10.n, u, (u * g).scale(qn(c10.n).inv()))
    return S


@dataclass
class SplittingDefect:
    n: int
    values: list  # (e, delta(e)) with delta(e) a JetForm
    is_zero: bool = field(init=False)

    def __post_init__(self):
        self.is_zero = all(d.is_zero() for _, d in self.values)


def defect(c10: DelConnection, c01: DelbarConnection, e: Poly) -> JetForm:
    return nabla_J(c01)(splitting(c10)(e)) - splitting_forms(c10)(c01(e))


def splitting_and_defect(c10: DelConnection, c01: DelbarConnection, maxlen=3) -> SplittingDefect:
    if c10.n != c01.n:
        raise WeightError("connections live on different bundles")
    vals = [(e, defect(c10, c01, e)) for e in weight_basis(c01.n, maxlen)]
    return SplittingDefect(c01.n, vals)


def splitting_checks(c10, c01, samples):
    """samples: (a, e) pairs.  s left linear, pi.s = id, delta left linear, mu(delta) = Theta."""
    n = c01.n
    s = splitting(c10)
    out_left, out_pi, d_left, mu_res = JetElement(n), Poly(), JetForm(n), Poly()
    for a, e in samples:
        out_left = out_left + s(a * e) - jet_left_action(a, s(e))
        out_pi = out_pi + jet_pi(s(e)) - e
        d_left = d_left + defect(c10, c01, a * e) - defect(c10, c01, e).lmul(a)
        dl = defect(c10, c01, e)
        mu_res = mu_res + dl.w.scale(mu_factor(n)) - total_curvature(c10, c01, e)
        mu_res = mu_res + dl.u  # the E-component of delta is always zero
    return [_chk("s left linear", out_left), _chk("pi.s = id", out_pi),
            _chk("delta left linear", d_left), _chk("mu(delta) = Theta", mu_res)]


def theorem_instance(c10, c01, maxlen=3):
    """(delta == 0, Theta == 0) on the truncated basis."""
    sd = splitting_and_defect(c10, c01, maxlen)
    theta_zero = all(not total_curvature(c10, c01, e) for e in weight_basis(c01.n, maxlen))
    return sd.is_zero, theta_zero
