"""Bimodule connections on line bundles over CP_q^1 and the lift to jets.

Collapsed conventions (forms pushed right, e in L_n, x of weight -2, y of weight +2):

    E (x) Omega^{0,1}                    e (x) x w-          ->  e x
    E (x) Omega^{1,0}                    e (x) y w+          ->  e y
    (Omega^{1,0} (x) E) (x) Omega^{0,1}  eta (x) x w-        ->  eta x
    Omega^{0,1} (x) Omega^{1,0} (x) E    x w- (x) Y          ->  x Y     ("MP")
    Omega^{1,0} (x) Omega^{0,1} (x) E    y w+ (x) X          ->  y X     ("PM")

with Y, X the collapsed values in Omega^{1,0} (x) E and Omega^{0,1} (x) E.  On
these values every bimodule map between line-bundle tensors is multiplication
by a scalar, which is how SigmaMap stores it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bundles import (DelbarConnection, DelConnection, nabla01_std, nabla10_canonical, qn,
                      weight_basis)
from .jet import (CheckResult, JetElement, JetForm, D_tilde, _chk, jet_left_action, mu_factor,
                  nabla_J)
from .linalg import matrix_of, rank
from .ncalg import Poly
from .scalar import ONE, Q, ZERO, Scalar
from .su2 import xminus, xplus


class NotBimoduleError(ValueError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True)
class SigmaMap:
    source: str
    target: str
    n: int
    twist: Scalar

    def __call__(self, v: Poly) -> Poly:
        return v.scale(self.twist)

    def perturbed(self, c) -> "SigmaMap":
        return SigmaMap(self.source, self.target, self.n, self.twist * c)


# Phi_(2): Omega^{0,1} (x) Omega^{1,0} -> Omega^{1,0} (x) Omega^{0,1}.  Any scalar
# gives a bimodule isomorphism; we fix it by  wedge o Phi = -mu, the q-analogue
# of "wedge is antisymmetric under the flip".  See phi2_twist().
def wedge_pm(n: int) -> Scalar:
    """Collapsed wedge on PM values: y w+ ^ x w- (x) e."""
    return -(Q ** n)   # LAMBDA * q^{n-2}, LAMBDA = -q^2


def phi2_twist(n: int = 0) -> Scalar:
    return -mu_factor(n) / wedge_pm(n)


PHI2 = phi2_twist(0)


# ---------------------------------------------------------------- extraction

def _ratio(pairs):
    """The scalar c with lhs = c rhs for all pairs, or None."""
    c = None
    for lhs, rhs in pairs:
        if not rhs:
            continue
        w, r = next(iter(rhs.terms.items()))
        c = lhs.terms.get(w, ZERO) / r
        break
    if c is None:
        return None
    for lhs, rhs in pairs:
        if lhs != rhs.scale(c):
            return None
    return c


def right_leibniz_pairs(conn, samples, op):
    """(nabla(ea) - nabla(e)a, e op(a)) for (e, a) in samples."""
    return [(conn(e * a) - conn(e) * a, e * op(a)) for e, a in samples]


def _extract(conn, samples, fresh, op, source, target):
    c = _ratio(right_leibniz_pairs(conn, samples, op))
    if c is None:
        bad = next((l for l, r in right_leibniz_pairs(conn, samples, op) if l and not r), None)
        raise NotBimoduleError("not a bimodule connection", bad if bad is not None else
                               right_leibniz_pairs(conn, samples, op)[0][0])
    sm = SigmaMap(source, target, conn.n, c)
    for lhs, rhs in right_leibniz_pairs(conn, fresh, op):
        if lhs != sm(rhs):
            raise NotBimoduleError("not a bimodule connection", lhs - sm(rhs))
    return sm


def sigma_bar_from_connection(conn01: DelbarConnection, samples, fresh=()) -> SigmaMap:
    """samples, fresh: (e, a) pairs, e in L_n and a of weight 0."""
    return _extract(conn01, samples, fresh, xminus, "E.01", "01.E")


def sigma_from_connection(conn10: DelConnection, samples, fresh=()) -> SigmaMap:
    return _extract(conn10, samples, fresh, xplus, "E.10", "10.E")


def right_leibniz_residual(conn, sm: SigmaMap, e, a, op) -> Poly:
    return conn(e * a) - conn(e) * a - sm(e * op(a))


def delbar_surjective(maxlen: int) -> bool:
    """dbar from weight-0 words onto weight -2 words, both of length <= maxlen."""
    src, tgt = weight_basis(0, maxlen), weight_basis(-2, maxlen)
    M, rows = matrix_of(xminus, src)
    return rank(M, len(src)) == len(tgt)


# ------------------------------------------------------------- right actions

def right_jet_action(sigmaE: SigmaMap, j: JetElement, b: Poly) -> JetElement:
    """(e, eta) < b = (e b, eta b + sigma_E(e (x) db))."""
    return JetElement(j.n, j.e * b, j.eta * b + sigmaE(j.e * xplus(b)))


def jetform_right(f: JetForm, b: Poly) -> JetForm:
    # split coordinates: the canonical splitting is a bimodule map, so this is componentwise
    return JetForm(f.n, f.u * b, f.w * b)


# ---------------------------------------------------------------- psi0, sigma

def psi0(sigmaBar: SigmaMap) -> SigmaMap:
    """-(mu^-1 (x) id)(wedge (x) id)(id (x) sigma-bar) on collapsed values."""
    n = sigmaBar.n
    # id (x) sigma-bar: eta x -> y (c e x) = c q^-n (eta x); then wedge_pm, then -mu^-1
    t = sigmaBar.twist * qn(n).inv() * wedge_pm(n) * (-(mu_factor(n).inv()))
    return SigmaMap("10E.01", "01.10E", n, t)


def id_x_sigmaE(sigmaE: SigmaMap, P: Poly, y: Poly) -> Poly:
    """(id (x) sigma_E)(P (x) y w+), P collapsed in Omega^{0,1} (x) E; value in MP."""
    return sigmaE(P * y).scale(qn(sigmaE.n).inv())


@dataclass(frozen=True)
class BimoduleData:
    conn01: DelbarConnection
    conn10: DelConnection
    sigmaBar: SigmaMap
    sigmaE: SigmaMap

    @property
    def n(self):
        return self.conn01.n

    @property
    def psi0(self):
        return psi0(self.sigmaBar)


def canonical_data(n: int) -> BimoduleData:
    c01, c10 = nabla01_std(n), nabla10_canonical(n)
    return BimoduleData(c01, c10, SigmaMap("E.01", "01.E", n, ONE), SigmaMap("E.10", "10.E", n, ONE))


def extracted_data(n: int, samples, fresh=()) -> BimoduleData:
    c01, c10 = nabla01_std(n), nabla10_canonical(n)
    return BimoduleData(c01, c10, sigma_bar_from_connection(c01, samples, fresh),
                        sigma_from_connection(c10, samples, fresh))


def sigma_small(data: BimoduleData, e: Poly, a: Poly) -> Poly:
    """sigma(e (x) dbar a), three terms, value in MP (weight n)."""
    n = data.n
    can = nabla10_canonical(n)
    t1 = can.extend(data.sigmaBar(e * xminus(a))).scale(mu_factor(n).inv())
    t2 = D_tilde(data.conn01, data.sigmaE(e * xplus(a)))
    t3 = id_x_sigmaE(data.sigmaE, data.conn01(e), xplus(a))
    return t1 + t2 - t3


def sigma_left_residual(data: BimoduleData, b, e, a) -> Poly:
    """sigma(be (x) dbar a) - b sigma(e (x) dbar a) + psi0(db (x) e (x) dbar a)."""
    xi = (xplus(b).scale(qn(data.n)) * e) * xminus(a)
    return sigma_small(data, b * e, a) - b * sigma_small(data, e, a) + data.psi0(xi)


def sigma_on_right_product(data, e, a, b) -> Poly:
    # e (x) (dbar a) b = e (x) dbar(ab) - ea (x) dbar b
    return sigma_small(data, e, a * b) - sigma_small(data, e * a, b)


def sigma_right_residual(data: BimoduleData, e, a, b) -> Poly:
    """sigma(e (x) (dbar a).b) - sigma(e (x) dbar a) b - (id (x) sigma_E)(sigma-bar(e (x) dbar a) (x) db)."""
    corr = id_x_sigmaE(data.sigmaE, data.sigmaBar(e * xminus(a)), xplus(b))
    return sigma_on_right_product(data, e, a, b) - sigma_small(data, e, a) * b - corr


def compatibility_residual(data: BimoduleData, e, a, b) -> Poly:
    """psi0(sigma_E(e (x) da) (x) dbar b) - (id (x) sigma_E)(sigma-bar(e (x) dbar a) (x) db)."""
    lhs = data.psi0(data.sigmaE(e * xplus(a)) * xminus(b))
    rhs = id_x_sigmaE(data.sigmaE, data.sigmaBar(e * xminus(a)), xplus(b))
    return lhs - rhs


def compatibility_reduced(e, a, b, n) -> Poly:
    """The compatibility residual for twist-one data, divided down: e (X_+a X_-b - q^2 X_-a X_+b)."""
    return e * (xplus(a) * xminus(b) - (xminus(a) * xplus(b)).scale(Q * Q))


# ------------------------------------------------------------------- sigma_J

def sigma_J(data: BimoduleData, j: JetElement, b: Poly) -> JetForm:
    """sigma_J(j (x) dbar b) with j in jet coordinates, output in split coordinates."""
    u = data.sigmaBar(j.e * xminus(b))
    w = data.psi0(j.eta * xminus(b)) + sigma_small(data, j.e, b)
    return JetForm(j.n, u, w)


def lift_residual(data: BimoduleData, j: JetElement, b: Poly) -> JetForm:
    nJ = nabla_J(data.conn01)
    lhs = nJ(right_jet_action(data.sigmaE, j, b))
    return lhs - jetform_right(nJ(j), b) - sigma_J(data, j, b)


def sigma_J_left_residual(data, a, j, b) -> JetForm:
    return sigma_J(data, jet_left_action(a, j), b) - sigma_J(data, j, b).lmul(a)


def sigma_J_right_residual(data, j, b, c) -> JetForm:
    """sigma_J(j (x) (dbar b) c) - sigma_J(j (x) dbar b) c, using
    j (x) (dbar b)c = j (x) dbar(bc) - (j < b) (x) dbar c."""
    lhs = sigma_J(data, j, b * c) - sigma_J(data, right_jet_action(data.sigmaE, j, b), c)
    return lhs - jetform_right(sigma_J(data, j, b), c)


# --------------------------------------------------------------- extension

def extend_psi(psi: SigmaMap, data: BimoduleData):
    """Extension of psi on the kernel part to J (x) Omega^{0,1} -> Omega^{0,1} (x) J,
    built from the canonical bimodule del-connection.  Input j (x) x w-, output split."""
    can = data.conn10

    def apply(j: JetElement, x: Poly) -> JetForm:
        u = data.sigmaBar(j.e * x)
        # (id (x) nabla) sigma-bar lands in the image of (id (x) s) and vanishes in split coordinates
        w = psi((j.eta - can(j.e)) * x)
        return JetForm(j.n, u, w)
    return apply


def extend_psi_checks(psi: SigmaMap, data: BimoduleData, samples):
    """samples: (a, j, x) with a weight 0, x weight -2."""
    ext = extend_psi(psi, data)
    left, right, bal, restr = JetForm(data.n), JetForm(data.n), JetForm(data.n), JetForm(data.n)
    for a, j, x in samples:
        left = left + ext(jet_left_action(a, j), x) - ext(j, x).lmul(a)
        right = right + ext(j, x * a) - jetform_right(ext(j, x), a)
        bal = bal + ext(right_jet_action(data.sigmaE, j, a), x) - ext(j, a * x)
        kj = JetElement(j.n, Poly(), j.eta)
        restr = restr + ext(kj, x) - JetForm(j.n, Poly(), psi(j.eta * x))
    return [_chk("extension left linear", left), _chk("extension right linear", right),
            _chk("extension balanced over A", bal), _chk("extension restricts to psi", restr)]


# ------------------------------------------------------------ Psi_nabla etc.

def d10_map(conn10: DelConnection):
    """D^{1,0} = -d (x) id + (mu (x) id)(id (x) nabla^{1,0}) on Omega^{0,1} (x) E."""
    def D(P):
        return -conn10.extend(P)
    return D


def psi_nabla(conn10: DelConnection):
    """(Phi_(2) mu^-1 (x) id) D^{1,0}, value in PM."""
    n = conn10.n
    D = d10_map(conn10)

    def Psi(P):
        return D(P).scale(phi2_twist(n) / mu_factor(n))
    return Psi


def psi_nabla_leibniz_residual(conn10, sigmaE: SigmaMap, P, b) -> Poly:
    """Psi(P b) - Psi(P) b - (Phi (x) id)(id (x) sigma_E)(P (x) db)."""
    Psi = psi_nabla(conn10)
    twist = id_x_sigmaE(sigmaE, P, xplus(b)).scale(phi2_twist(conn10.n))
    return Psi(P * b) - Psi(P) * b - twist


def diagram_residual(data: BimoduleData, e, a, corrected=False) -> Poly:
    """Psi(sigma-bar(e (x) dbar a)) - (Phi (x) id) Dtilde(sigma_E(e (x) da)).

    With corrected=True the cross terms dbar a ^ nabla e and da ^ nabla-bar e
    (which survive in Theta(ea) - Theta(e)a) are added back, after the same
    Phi mu^-1."""
    n = data.n
    lhs = psi_nabla(data.conn10)(data.sigmaBar(e * xminus(a)))
    rhs = D_tilde(data.conn01, data.sigmaE(e * xplus(a))).scale(phi2_twist(n))
    r = lhs - rhs
    if corrected:
        r = r + cross_terms(data, e, a).scale(phi2_twist(n) / mu_factor(n))
    return r


def cross_terms(data: BimoduleData, e, a) -> Poly:
    """mu (id (x) sigma_E)(nabla-bar e (x) da) + wedge (id (x) sigma-bar)(nabla e (x) dbar a),
    collapsed in Omega^{1,1} (x) E."""
    n = data.n
    c1 = id_x_sigmaE(data.sigmaE, data.conn01(e), xplus(a)).scale(mu_factor(n))
    pm = data.sigmaBar(data.conn10(e) * xminus(a)).scale(qn(n).inv())
    return c1 + pm.scale(wedge_pm(n))


def curvature_right_defect_residual(data: BimoduleData, e, a) -> Poly:
    """Theta(ea) - Theta(e)a - [-D^{10}(sigma-bar(e (x) dbar a)) + D_E(sigma_E(e (x) da)) - cross]."""
    from .bundles import total_curvature
    from .jet import D_E
    th = total_curvature(data.conn10, data.conn01, e * a) - total_curvature(data.conn10, data.conn01, e) * a
    rhs = (-d10_map(data.conn10)(data.sigmaBar(e * xminus(a)))
           + D_E(data.conn01, data.sigmaE(e * xplus(a))) - cross_terms(data, e, a))
    return th - rhs


def total_connection_checks(conn10: DelConnection, conn01: DelbarConnection, sigmaE: SigmaMap,
                    sigmaBar: SigmaMap, samples):
    """nabla^{1,0} right sigma_E  <=>  nabla_tot right (sigma-bar + sigma_E), sample by sample."""
    agree, both10, bothtot = True, True, True
    for e, a in samples:
        r10 = right_leibniz_residual(conn10, sigmaE, e, a, xplus)
        rbar = right_leibniz_residual(conn01, sigmaBar, e, a, xminus)
        rtot = (r10, rbar)   # nabla_tot splits by bidegree
        z10, ztot = r10.is_zero(), all(x.is_zero() for x in rtot)
        agree &= (z10 == ztot)
        both10 &= z10
        bothtot &= ztot
    return agree, both10, bothtot


def non_bimodule_perturbation(n: int, sign=+1) -> Poly:
    """A weight +-2 element that does not commute with weight-0 functions, so that
    e -> e g spoils the right Leibniz rule."""
    from .ncalg import parse
    return parse("a* c*") if sign > 0 else parse("a c")
