"""Executable verification of the generating-function identities.

Every check returns a VerificationReport whose pass outcome means the
re-expanded difference is identically zero through the stated orders (exact
arithmetic, tolerance zero).  A mismatch always carries a concrete monomial
witness.  The resolved-convention record travels with every report so runs
are auditable: tangent orientation, Euler convention, the structure-sheaf
sign transport, the validated limit normalization, and the argument
shift/reading that reconciles the derived and closed generating functions.
"""

import json
import time

from .scalar import (Scalar, ZERO, ONE, T1, T2, Q, U, A, HBAR,
                     LimitError)
from .series import Series, rational_reconstruct, ReconstructionError
from .characters import (partitions, boxes, size, fixed_points_rank2,
                         chern_eigen, o_line_eigen, delta_11, tangent_hilb)
from .fock import (FockElement, exp_linear, pexp, tensor_exp, jj0_substitute,
                   project_second, JJ0_READINGS)
from .macdonald import MacdonaldBasis, default_basis, euler_hilb

DEFAULT_Y_ORDER = 4
DEFAULT_Z_ORDER = 6
HARD_Y_BOUND = 8
HARD_Z_BOUND = 12

# frozen by cmd_calibrate; every entry is re-derivable from the checks below
DEFAULT_CONVENTIONS = {
    "tangent_orientation": "arms_t1",
    "euler_weights": "squared_tangent_koszul",
    "mellit_descendent": "prod (1 - u t1^(2c) t2^(2r)) over boxes",
    "osum_eigenvalue": "(-1)^n, i.e. p_k -> (-1)^k p_k transport",
    "prop1_variant": "proof",
    "prop1_a_power": "n",
    # the substitution rule validates with hbar^k read as hbar^(-k); with it
    # the closed form matches the derivation under z -> +z q/hbar, not under
    # the displayed -z hbar q
    "main_reading": "printed_inverse",
    "main_shift": {"sigma": 1, "e_hbar": -1, "e_q": 1},
    "main_matches_printed_claim": False,
}


class VerificationReport:
    """Structured outcome of one identity check."""

    def __init__(self, name, orders, outcome, details=None, conventions=None,
                 seconds=0.0):
        self.name = name
        self.orders = orders
        self.outcome = outcome
        self.details = details or {}
        self.conventions = conventions or {}
        self.seconds = seconds

    @property
    def passed(self):
        return self.outcome == "exact-match"

    def to_dict(self):
        return {
            "check": self.name,
            "orders": self.orders,
            "outcome": self.outcome,
            "details": self.details,
            "conventions": self.conventions,
            "seconds": round(self.seconds, 3),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def __repr__(self):
        return f"VerificationReport({self.name}: {self.outcome})"


def _timed(name, orders, fn, conventions=None):
    t0 = time.perf_counter()
    outcome, details = fn()
    return VerificationReport(name, orders, outcome, details,
                              conventions or {}, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# exponential sides of the Fock-space identities
# ---------------------------------------------------------------------------

def _hbar2k(k):
    """hbar^(2k) as a monomial."""
    return Scalar.monomial(t1=4 * k, t2=4 * k)


def _coeff_den(k):
    return Scalar.from_int(k) * (ONE - T1 ** (2 * k)) * (ONE - T2 ** (2 * k))


def kernel_exponential(N):
    """exp( sum_k y^k hbar^(2k) p_k / (k (1-t1^(2k))(1-t2^(2k))) )."""
    return exp_linear({k: _hbar2k(k) / _coeff_den(k) for k in range(1, N + 1)},
                      N)


def mellit_exponential(N):
    c = {k: _hbar2k(k) * (ONE - U ** k) / _coeff_den(k)
         for k in range(1, N + 1)}
    return exp_linear(c, N)


def osum_exponential(N):
    c = {k: _hbar2k(k) * ((-1) ** k) / _coeff_den(k) for k in range(1, N + 1)}
    return exp_linear(c, N)


def mellit_eigenvalue(lam):
    """Dual exterior-descendent eigenvalue at the fixed point, squared weights."""
    e = ONE
    for (r, c) in boxes(lam):
        e = e * (ONE - U * Scalar.monomial(t1=4 * c, t2=4 * r))
    return e


def osum_eigenvalue(lam):
    return Scalar.from_int((-1) ** size(lam))


# ---------------------------------------------------------------------------
# localization-vs-exponential checks
# ---------------------------------------------------------------------------

def _compare_by_degree(basis, eig, rhs, N, orientation):
    for n in range(N + 1):
        lhs = basis.localization_sum(eig, n)
        for mu in partitions(n):
            a = lhs.coefficient(mu)
            b = rhs.coefficient(mu)
            if a != b:
                return "mismatch", {
                    "degree": n,
                    "p_monomial": list(mu),
                    "localization_side": a.render(),
                    "exponential_side": b.render(),
                }
    return "exact-match", {"degrees_checked": N}


def check_kernel_identity(N=5, orientation="arms_t1", basis=None):
    basis = basis or _basis_for(orientation)
    rhs = kernel_exponential(N)
    conv = {"tangent_orientation": orientation,
            "euler_weights": DEFAULT_CONVENTIONS["euler_weights"]}
    return _timed("kernel_identity", {"y": N},
                  lambda: _compare_by_degree(basis, lambda lam: ONE, rhs, N,
                                             orientation), conv)


def check_mellit(N=4, orientation="arms_t1", basis=None):
    basis = basis or _basis_for(orientation)
    rhs = mellit_exponential(N)
    conv = {"tangent_orientation": orientation,
            "mellit_descendent": DEFAULT_CONVENTIONS["mellit_descendent"]}
    return _timed("mellit_generating_function", {"y": N},
                  lambda: _compare_by_degree(basis, mellit_eigenvalue, rhs, N,
                                             orientation), conv)


def check_osum(N=5, orientation="arms_t1", basis=None):
    basis = basis or _basis_for(orientation)
    rhs = osum_exponential(N)
    conv = {
        "tangent_orientation": orientation,
        "osum_eigenvalue": DEFAULT_CONVENTIONS["osum_eigenvalue"],
        "sign_transport": "the (-1)^k exponential equals the kernel "
                          "exponential under p_k -> (-1)^k p_k (y -> -y)",
    }
    return _timed("structure_sheaf_series", {"y": N},
                  lambda: _compare_by_degree(basis, osum_eigenvalue, rhs, N,
                                             orientation), conv)


_BASES = {}


def _basis_for(orientation):
    if orientation == "arms_t1":
        return default_basis()
    b = _BASES.get(orientation)
    if b is None:
        b = MacdonaldBasis(orientation=orientation)
        _BASES[orientation] = b
    return b


# ---------------------------------------------------------------------------
# the two generating functions of the main statement
# ---------------------------------------------------------------------------

def closed_F(Ny=DEFAULT_Y_ORDER, Nz=DEFAULT_Z_ORDER):
    """The closed exponential form, built exactly as displayed:

    exp( sum_k y^k / (k(1-t1^2k)(1-t2^2k)) *
         ( (1-u^k) hbar^2k p_k
           + z^k hbar^2k q^-k (hbar^k - hbar^-k)/(1-(z hbar/q)^k) p_k ) )
    """
    c = {}
    for k in range(1, Ny + 1):
        den = _coeff_den(k)
        const = Series.const(_hbar2k(k) * (ONE - U ** k) / den, 0, Nz)
        inner = Series.term((HBAR / Q) ** k, 0, k, 0, Nz)
        zfac = Series.term(
            _hbar2k(k) * Q ** (-k) * (HBAR ** k - HBAR ** (-k)) / den,
            0, k, 0, Nz)
        c[k] = const + zfac * inner.geom()
    return exp_linear(c, Ny)


def build_F(Ny=DEFAULT_Y_ORDER, Nz=DEFAULT_Z_ORDER, reading="printed"):
    """The derivation route: tensor exponential of the descendent-by-structure
    sheaf product, the fusion-ratio substitution, then projection to the
    first factor."""
    c, d = {}, {}
    for k in range(1, Ny + 1):
        den = _coeff_den(k)
        c[k] = Series.const(_hbar2k(k) * (ONE - U ** k) / den, 0, Nz)
        d[k] = Series.const(_hbar2k(k) * ((-1) ** k) / den, 0, Nz)
    T = tensor_exp(c, d, Ny)
    T = jj0_substitute(T, reading=reading)
    return project_second(T)


def ook_argument(Nz):
    """The p_1-linear argument of the plethystic-exponential form."""
    den = _coeff_den(1)
    const = Series.const(_hbar2k(1) * (ONE - U) / den, 0, Nz)
    inner = Series.term(HBAR / Q, 0, 1, 0, Nz)
    zfac = Series.term(_hbar2k(1) * (HBAR - HBAR.inverse()) / (den * Q),
                       0, 1, 0, Nz)
    return const + zfac * inner.geom()


def _fock_mismatch(a, b):
    mu = a.first_difference(b)
    if mu is None:
        return None
    return {"p_monomial": list(mu),
            "lhs": a.coefficient(mu).render(),
            "rhs": b.coefficient(mu).render()}


def check_ook(Ny=DEFAULT_Y_ORDER, Nz=DEFAULT_Z_ORDER):
    def run():
        lhs = pexp(ook_argument(Nz), Ny)
        rhs = closed_F(Ny, Nz)
        wit = _fock_mismatch(lhs, rhs)
        if wit is None:
            return "exact-match", {}
        return "mismatch", wit
    return _timed("plethystic_form", {"y": Ny, "z": Nz}, run)


SHIFT_FAMILY = tuple((sigma, e1, e2)
                     for sigma in (1, -1)
                     for e1 in (-1, 0, 1)
                     for e2 in (-1, 0, 1))


def _shift_scalar(shift):
    sigma, e1, e2 = shift
    return Scalar.monomial(sigma, t1=2 * e1, t2=2 * e1, q=2 * e2)


def _shift_text(shift):
    sigma, e1, e2 = shift
    parts = ["-z" if sigma < 0 else "+z"]
    if e1:
        parts.append(f"hbar^{e1}")
    if e2:
        parts.append(f"q^{e2}")
    return "*".join(parts)


def _scale_fock_z(f, factor):
    return FockElement({mu: c.scale_z(factor) for mu, c in f.coeffs.items()},
                       f.N)


def check_main(Ny=DEFAULT_Y_ORDER, Nz=DEFAULT_Z_ORDER):
    """Search the documented shift family (and the documented readings of the
    substitution rule) for closed_F(sigma z hbar^e1 q^e2) == build_F(z).

    The printed claim corresponds to the shift -z hbar q with the printed
    substitution rule; the report records whether that combination, and
    which combination if any, validates.
    """
    def run():
        closed = closed_F(Ny, Nz)
        shifted = {s: _scale_fock_z(closed, _shift_scalar(s))
                   for s in SHIFT_FAMILY}
        matches = []
        printed_result = None
        for reading in JJ0_READINGS:
            built = build_F(Ny, Nz, reading=reading)
            found = [s for s in SHIFT_FAMILY if shifted[s] == built]
            matches.extend((reading, s) for s in found)
            if reading == "printed":
                printed_result = found
        details = {
            "matches": [{"reading": r, "shift": _shift_text(s)}
                        for r, s in matches],
            "printed_rule_shifts": [_shift_text(s) for s in printed_result],
            "claimed_shift": _shift_text((-1, 1, 1)),
        }
        if not matches:
            built = build_F(Ny, Nz, reading="printed")
            details["witness"] = _fock_mismatch(
                shifted[(-1, 1, 1)], built)
            return "no-shift-found", details
        if len(matches) > 1:
            return "mismatch", dict(details, reason="shift is not unique")
        reading, shift = matches[0]
        details.update({
            "winning_reading": reading,
            "winning_shift": _shift_text(shift),
            "matches_printed_claim": (shift == (-1, 1, 1)
                                      and reading == "printed"),
        })
        if printed_result == [] and reading != "printed":
            wit = _fock_mismatch(shifted[(-1, 1, 1)],
                                 build_F(Ny, Nz, reading="printed"))
            details["printed_rule_witness"] = wit
        return "exact-match", details
    conv = {k: DEFAULT_CONVENTIONS[k]
            for k in ("main_reading", "main_shift",
                      "main_matches_printed_claim")}
    return _timed("main_generating_function", {"y": Ny, "z": Nz}, run, conv)


# ---------------------------------------------------------------------------
# capped vertex tables and rationality
# ---------------------------------------------------------------------------

class CappedVertexTable:
    """Per-fixed-point rational functions in z for one Fock degree."""

    def __init__(self, n, entries, certified_order, q_free):
        self.n = n
        self.entries = entries  # lam -> (num {deg: Scalar}, den {deg: Scalar})
        self.certified_order = certified_order
        self.q_free = q_free

    def to_dict(self):
        rows = []
        for lam in partitions(self.n):
            num, den = self.entries[lam]
            rows.append({
                "partition": list(lam),
                "num": {str(d): c.render() for d, c in sorted(num.items())},
                "den": {str(d): c.render() for d, c in sorted(den.items())},
            })
        return {"n": self.n, "certified_order": self.certified_order,
                "q_free_after_shift": self.q_free, "entries": rows}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv_rows(self):
        out = [("partition", "z_degree", "part", "value")]
        for lam in partitions(self.n):
            num, den = self.entries[lam]
            for d, c in sorted(num.items()):
                out.append((",".join(map(str, lam)), d, "num", c.render()))
            for d, c in sorted(den.items()):
                out.append((",".join(map(str, lam)), d, "den", c.render()))
        return out


def candidate_denominator(n):
    """prod_{k<=n} (1 - (z hbar/q)^k) as a z-polynomial {deg: Scalar}."""
    den = {0: ONE}
    for k in range(1, n + 1):
        fac = {0: ONE, k: -((HBAR / Q) ** k)}
        new = {}
        for d1, c1 in den.items():
            for d2, c2 in fac.items():
                new[d1 + d2] = new.get(d1 + d2, ZERO) + c1 * c2
        den = {d: c for d, c in new.items() if not c.is_zero()}
    return den


def _zpoly_sub_w(poly):
    """Rewrite a z-polynomial in the shifted variable w = z hbar / q."""
    fac = Q / HBAR
    return {d: c * fac ** d for d, c in poly.items()}


def _q_free_two_points(x):
    a = x.specialize({"q": 2})
    b = x.specialize({"q": 3})
    return a == b


def capped_vertex_table(n, Nz=None, basis=None):
    """Reconstruct the degree-n fixed-point restrictions as rational functions.

    Takes the y^n slice of the closed form, decomposes it in the fixed-point
    basis, multiplies by the calibrated Euler factor, and reconstructs each
    z-series with numerator and denominator budgets B = sum_{k<=n} k.  Every
    entry is certified by re-expansion through all computed orders, and the
    q-independence of the shifted-variable form is checked by comparing two
    rational specializations of q.
    """
    if n > 4:
        raise ValueError("vertex tables are configured for n <= 4")
    B = n * (n + 1) // 2
    if Nz is None:
        Nz = 2 * B + 2
    if Nz < 2 * B + 2:
        raise ValueError(f"need z-order at least {2 * B + 2}")
    basis = basis or default_basis()
    F = closed_F(n, Nz)
    coeffs = basis.decompose(F.degree_slice(n), n)
    cand = candidate_denominator(n)
    entries = {}
    q_free = True
    for lam in partitions(n):
        series = coeffs[lam] * euler_hilb(lam, basis.orientation)
        if n == 0:
            entries[lam] = ({0: series.coefficient(0, 0)}, {0: ONE})
            continue
        try:
            num, den = rational_reconstruct(series, B, B,
                                            candidate_dens=[cand])
        except ReconstructionError as e:
            raise ReconstructionError(f"fixed point {lam}: {e}") from e
        entries[lam] = (num, den)
        for d, c in _zpoly_sub_w(num).items():
            if not _q_free_two_points(c):
                q_free = False
        for d, c in _zpoly_sub_w(den).items():
            if not _q_free_two_points(c):
                q_free = False
    return CappedVertexTable(n, entries, Nz, q_free)


def check_rationality(ns=(1, 2, 3)):
    """Rationality of the capped vertex functions for the given degrees."""
    def run():
        for n in ns:
            table = capped_vertex_table(n)
            if not table.q_free:
                return "mismatch", {"n": n,
                                    "reason": "shifted form depends on q"}
            cand = candidate_denominator(n)
            for lam in partitions(n):
                num, den = table.entries[lam]
                if not _divides_zpoly(den, cand):
                    return "mismatch", {
                        "n": n, "partition": list(lam),
                        "reason": "denominator does not divide the "
                                  "cyclotomic-type product"}
        return "exact-match", {"degrees": list(ns)}
    return _timed("rationality", {"n": max(ns)}, run)


def _divides_zpoly(den, whole):
    """Does den divide `whole` in z over the scalar field?"""
    rem = dict(whole)
    dmax = max(den)
    lead = den[dmax]
    quot_deg = max(rem, default=-1) - dmax
    if quot_deg < 0:
        return not any(not c.is_zero() for c in rem.values())
    while rem:
        top = max(rem)
        if top < dmax:
            return False
        q = rem[top] / lead
        for d, c in den.items():
            nd = top - dmax + d
            s = rem.get(nd, ZERO) - q * c
            if s.is_zero():
                rem.pop(nd, None)
            else:
                rem[nd] = s
        if not any(not c.is_zero() for c in rem.values()):
            return True
    return True


# ---------------------------------------------------------------------------
# degenerate slices
# ---------------------------------------------------------------------------

def check_degenerate_slice(N=5):
    """The u=0, z=0 slice of the closed form is the kernel exponential."""
    def run():
        F = closed_F(N, 0)
        rhs = kernel_exponential(N)
        for mu, c in F.coeffs.items():
            val = c.coefficient(0, 0).limit_at_zero("u")
            want = rhs.coefficient(mu).limit_at_zero("u")
            if val != want:
                return "mismatch", {"p_monomial": list(mu),
                                    "lhs": val.render(),
                                    "rhs": want.render()}
        return "exact-match", {"y": N}
    return _timed("degenerate_slice", {"y": N}, run)


# ---------------------------------------------------------------------------
# a -> 0 limit statements on the rank-2 fixed points
# ---------------------------------------------------------------------------

PROP1_VARIANTS = ("proof", "four_term")
PROP1_POWERS = ("n", "2n")


def check_prop1(n):
    """For each fixed point, polarization variant and a-power, compare

        lim_{a->0} delta^{-1} O(-1) a^p   with   hbar^n hbar^{n2} (O(-1)x1).

    The report lists which (variant, power) pairs validate at every fixed
    point, resolving the statement-vs-proof discrepancy in the power of a.
    """
    def run():
        pairs = {}
        witnesses = {}
        for variant in PROP1_VARIANTS:
            for pname in PROP1_POWERS:
                p = n if pname == "n" else 2 * n
                ok = True
                for (l1, l2) in fixed_points_rank2(n):
                    rhs = (HBAR ** (n + size(l2))
                           * o_line_eigen(l1, l2, "first"))
                    try:
                        d = delta_11(l1, l2, variant)
                        val = (d.inverse() * o_line_eigen(l1, l2) * A ** p)
                        lim = val.a_limit()
                    except LimitError as e:
                        ok = False
                        witnesses[(variant, pname)] = {
                            "fixed_point": [list(l1), list(l2)],
                            "outcome": "limit-nonexistent",
                            "a_valuation": str(e.valuation)}
                        break
                    if lim != rhs:
                        ok = False
                        witnesses[(variant, pname)] = {
                            "fixed_point": [list(l1), list(l2)],
                            "limit": lim.render(), "expected": rhs.render()}
                        break
                pairs[(variant, pname)] = ok
        validated = [{"variant": v, "a_power": p}
                     for (v, p), ok in pairs.items() if ok]
        details = {
            "validated": validated,
            "failures": {f"{v},{p}": w for (v, p), w in witnesses.items()},
            "a_power_resolution": ("the limit exists with a^n as in the "
                                   "proof, not a^(2n) as stated"
                                   if any(d["a_power"] == "n"
                                          for d in validated) else
                                   "no a^n validation"),
        }
        if validated:
            return "exact-match", details
        return "mismatch", details
    conv = {"prop1_variant": DEFAULT_CONVENTIONS["prop1_variant"],
            "prop1_a_power": DEFAULT_CONVENTIONS["prop1_a_power"]}
    return _timed("line_bundle_limit", {"n": n}, run, conv)


def check_prop4(n, k):
    """lim_{a->0} c_k eigenvalue on M(n,2) equals the first-component value."""
    def run():
        for (l1, l2) in fixed_points_rank2(n):
            val = chern_eigen((l1, l2), (ONE, A), k).a_limit()
            want = chern_eigen((l1,), (ONE,), k) if k <= size(l1) else ZERO
            if val != want:
                return "mismatch", {"fixed_point": [list(l1), list(l2)],
                                    "k": k, "limit": val.render(),
                                    "expected": want.render()}
        return "exact-match", {"n": n, "k": k,
                               "fixed_points": len(fixed_points_rank2(n))}
    return _timed("chern_limit", {"n": n, "k": k}, run)


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------

def calibrate(kernel_order=2, main_orders=(3, 4), prop1_max=2):
    """Re-derive every frozen convention from scratch at small orders.

    Returns (conventions, evidence).  Deterministic and idempotent: rerunning
    produces an identical record.
    """
    evidence = {}
    orientations = []
    for orientation in ("arms_t1", "arms_t2"):
        rep = check_kernel_identity(kernel_order, orientation,
                                    MacdonaldBasis(orientation=orientation))
        evidence[f"kernel_{orientation}"] = rep.to_dict()
        if rep.passed:
            orientations.append(orientation)
    if len(orientations) != 1:
        raise RuntimeError(f"calibration found {len(orientations)} "
                           "consistent orientations")
    orientation = orientations[0]

    rep = check_prop1(prop1_max)
    evidence["prop1"] = rep.to_dict()
    validated = rep.details["validated"]
    if not validated:
        raise RuntimeError("no limit normalization validates")

    repm = check_main(*main_orders)
    evidence["main"] = repm.to_dict()
    if not repm.passed:
        raise RuntimeError("no shift/reading reconciles the two forms")
    shift = repm.details["winning_shift"]

    conventions = dict(DEFAULT_CONVENTIONS)
    conventions.update({
        "tangent_orientation": orientation,
        "prop1_variant": validated[0]["variant"],
        "prop1_a_power": validated[0]["a_power"],
        "main_reading": repm.details["winning_reading"],
        "main_shift_text": shift,
        "main_matches_printed_claim": repm.details["matches_printed_claim"],
    })
    return conventions, evidence


def write_conventions(path, conventions, evidence=None):
    payload = {"conventions": conventions}
    if evidence:
        payload["evidence"] = evidence
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_conventions(path):
    with open(path) as fh:
        return json.load(fh)["conventions"]


# ---------------------------------------------------------------------------
# check registry for the command line
# ---------------------------------------------------------------------------

def run_check(name, y_order=None, z_order=None, n=None,
              orientation="arms_t1"):
    """Dispatch a single named check with the configured orders."""
    if name == "kernel":
        return check_kernel_identity(y_order if y_order is not None else 5,
                                     orientation)
    if name == "mellit":
        return check_mellit(y_order if y_order is not None else 4,
                            orientation)
    if name == "osum":
        return check_osum(y_order if y_order is not None else 5, orientation)
    if name == "ook":
        return check_ook(y_order or DEFAULT_Y_ORDER,
                         z_order or DEFAULT_Z_ORDER)
    if name == "main":
        return check_main(y_order or DEFAULT_Y_ORDER,
                          z_order or DEFAULT_Z_ORDER)
    if name == "slice":
        return check_degenerate_slice(y_order if y_order is not None else 5)
    if name == "rationality":
        return check_rationality(tuple(range(1, (n or 3) + 1)))
    if name == "prop1":
        return check_prop1(n if n is not None else 3)
    if name == "prop4":
        nn = n if n is not None else 3
        t0 = time.perf_counter()
        for kk in range(0, nn + 1):
            rep = check_prop4(nn, kk)
            if not rep.passed:
                rep.seconds = time.perf_counter() - t0
                return rep
        rep.seconds = time.perf_counter() - t0
        rep.details["k_checked"] = list(range(nn + 1))
        return rep
    raise ValueError(f"unknown check {name!r}")


CHECK_NAMES = ("kernel", "mellit", "osum", "ook", "main", "slice",
               "rationality", "prop1", "prop4")
