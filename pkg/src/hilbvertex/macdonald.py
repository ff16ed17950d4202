"""Macdonald polynomials in Haiman's normalization, as Fock-space elements.

The fixed-point basis H_lam is the modified Macdonald polynomial with the
Macdonald parameters specialized to q = t1^(-2), t = t2^(-2).  Two
independent constructions are provided:

  * the production route solves the two triangularity axioms plus the
    normalization as a linear system in the Schur basis; the system entries
    are small polynomials, which keeps the exact elimination tame at every
    degree we need;
  * the classical route: Gram-Schmidt for P_lam against the (q,t)-deformed
    power-sum inner product in a linear extension of dominance order, then
    the integral form J_lam, the plethysm X -> X/(1-t), and the t -> 1/t
    twist with the t^{n(lam)} prefactor.  Without multivariate gcd its
    intermediate fractions grow too fast beyond degree 4, so it serves as
    the independent cross-check at small degree rather than as the builder.

Also here: the calibrated fixed-point Euler factor (the tangent character
with every weight squared, fed to the Koszul product), decomposition into
the H-basis, and localization sums over fixed points of a given degree.
"""

from fractions import Fraction
from math import factorial

from .scalar import (Scalar, ZERO, ONE, KEY_ONE, pone, pzero, pconst, padd,
                     pmul, pmul_int, decode, encode, VARIABLES,
                     invert_matrix, bareiss_det)
from .characters import (partitions, conjugate, dominates, n_stat, boxes,
                         arm, leg, tangent_hilb)
from .fock import FockElement

# Macdonald parameters on the engine lattice: q = t1^(-2), t = t2^(-2)
Q_MACD = Scalar.monomial(t1=-4)
T_MACD = Scalar.monomial(t2=-4)

_T2_INDEX = VARIABLES.index("t2")


def _invert_t2(x):
    """Substitute t2 -> 1/t2 (negate every t2 exponent)."""
    def flip(poly):
        out = {}
        for k, c in poly.items():
            e = list(decode(k))
            e[_T2_INDEX] = -e[_T2_INDEX]
            out[encode(tuple(e))] = c
        return out
    return Scalar(flip(x.num), flip(x.den))


def z_mu(mu):
    z = 1
    mult = {}
    for k in mu:
        mult[k] = mult.get(k, 0) + 1
    for k, m in mult.items():
        z *= k ** m * factorial(m)
    return z


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _clear_row(entries):
    """Clear integer contents and monomial denominators of one equation.

    Entries must be Scalars with monomial denominators; returns plain
    polynomial dicts scaled by one common factor.
    """
    L = 1
    maxexp = [0] * len(VARIABLES)
    for e in entries:
        if len(e.den) != 1:
            raise ArithmeticError("entry has a non-monomial denominator")
        (kd, cd), = e.den.items()
        L = L // _gcd(L, cd) * cd
        for i, x in enumerate(decode(kd)):
            maxexp[i] = max(maxexp[i], x)
    lkey = encode(tuple(maxexp))
    out = []
    for e in entries:
        (kd, cd), = e.den.items()
        shift = lkey - kd + KEY_ONE
        out.append({k + shift - KEY_ONE: c * (L // cd)
                    for k, c in e.num.items()})
    return out


# ---------------------------------------------------------------------------
# rational symmetric-function scaffolding (Fraction coefficients, p-basis)
# ---------------------------------------------------------------------------

def _expand_p_mu(mu, nvars):
    """Expand p_mu as a polynomial in nvars variables: {exponent tuple: int}."""
    poly = {(0,) * nvars: 1}
    for k in mu:
        new = {}
        for exps, c in poly.items():
            for i in range(nvars):
                e2 = list(exps)
                e2[i] += k
                e2 = tuple(e2)
                new[e2] = new.get(e2, 0) + c
        poly = new
    return poly


def p_to_m_matrix(n):
    """Integer matrix: p_mu = sum_lam M[mu][lam] m_lam over partitions of n."""
    parts = partitions(n)
    out = {}
    for mu in parts:
        poly = _expand_p_mu(mu, max(1, n))
        row = {}
        for lam in parts:
            key = tuple(lam) + (0,) * (max(1, n) - len(lam))
            c = poly.get(key, 0)
            if c:
                row[lam] = c
        out[mu] = row
    return parts, out


def m_to_p(n):
    """m_lam in the p-basis with Fraction coefficients."""
    parts, p2m = p_to_m_matrix(n)
    idx = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    aug = [[Fraction(p2m[mu].get(lam, 0)) for lam in parts] +
           [Fraction(1 if j == idx[mu] else 0) for j in range(size)]
           for mu in parts]
    # Fraction Gaussian elimination for the inverse
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    # aug is now [I | M^{-1}]; row lam of M^{-1} gives m_lam in the p-basis
    return {lam: {mu: aug[idx[lam]][size + idx[mu]] for mu in parts
                  if aug[idx[lam]][size + idx[mu]]}
            for lam in parts}


def h_in_p(m):
    """Complete homogeneous h_m in the p-basis."""
    return {mu: Fraction(1, z_mu(mu)) for mu in partitions(m)}


def _p_mult(f, g):
    out = {}
    for mu, a in f.items():
        for nu, b in g.items():
            key = tuple(sorted(mu + nu, reverse=True))
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


def _p_add(f, g, sign=1):
    out = dict(f)
    for k, v in g.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def s_in_p(lam, _cache={}):
    """Schur s_lam in the p-basis via the Jacobi-Trudi determinant."""
    lam = tuple(lam)
    got = _cache.get(lam)
    if got is not None:
        return got
    ell = len(lam)
    if ell == 0:
        return {(): Fraction(1)}

    def entry(i, j):
        m = lam[i] - i + j
        if m < 0:
            return None
        if m == 0:
            return {(): Fraction(1)}
        return h_in_p(m)

    def det(rows, cols):
        if len(rows) == 1:
            return entry(rows[0], cols[0])
        total = {}
        for pos, col in enumerate(cols):
            e = entry(rows[0], col)
            if e is None:
                continue
            sub = det(rows[1:], cols[:pos] + cols[pos + 1:])
            if sub is None:
                continue
            total = _p_add(total, _p_mult(e, sub), 1 if pos % 2 == 0 else -1)
        return total

    result = det(list(range(ell)), list(range(ell)))
    _cache[lam] = result
    return result


def hall_pairing(f, g):
    """Hall inner product of two p-basis dicts with Fraction coefficients."""
    s = Fraction(0)
    for mu, a in f.items():
        b = g.get(mu)
        if b:
            s += a * b * z_mu(mu)
    return s


# ---------------------------------------------------------------------------
# the two construction routes
# ---------------------------------------------------------------------------

def _qt_pair_weight(mu):
    """<p_mu, p_mu> for the Macdonald inner product."""
    w = Scalar.from_int(z_mu(mu))
    for k in mu:
        w = w * (ONE - Q_MACD ** k) / (ONE - T_MACD ** k)
    return w


def _to_scalar_dict(frac_dict):
    return {mu: Scalar.fraction(v.numerator, v.denominator)
            for mu, v in frac_dict.items()}


def macd_P(n):
    """Macdonald P_lam in the p-basis (Scalar coefficients), all |lam| = n.

    Gram-Schmidt against the (q,t)-deformed power-sum pairing in ascending
    lex order (a linear extension of dominance).  Because the span of the
    already-built P_mu equals the span of the lower m_mu, orthogonality is
    imposed directly against the monomial vectors: each P_lam solves a small
    linear system whose Gram entries are cleared to polynomials, which keeps
    the exact arithmetic small.
    """
    parts = partitions(n)
    order = sorted(parts)  # ascending lex extends dominance upward
    m2p_frac = m_to_p(n)
    m2p = {lam: _to_scalar_dict(d) for lam, d in m2p_frac.items()}
    weights = {mu: _qt_pair_weight(mu) for mu in parts}
    clear = ONE
    for k in range(1, n + 1):
        clear = clear * (ONE - T_MACD ** k) ** (n // k)

    def ip(f, g):
        s = ZERO
        for mu, a in f.items():
            b = g.get(mu)
            if b is not None:
                s = s + a * b * (weights[mu] * clear).reduced()
        return s

    gram = {}
    for i, nu in enumerate(order):
        for mu in order[:i + 1]:
            gram[(nu, mu)] = gram[(mu, nu)] = ip(m2p[nu], m2p[mu])

    out = {}
    for i, lam in enumerate(order):
        lower = order[:i]
        if not lower:
            out[lam] = dict(m2p[lam])
            continue
        rows = [_clear_row([gram[(nu, mu)] for nu in lower]
                           + [gram[(lam, mu)]]) for mu in lower]
        k = len(lower)
        D = bareiss_det([r[:k] for r in rows])
        # Cramer: coefficient of m_nu is -det(column nu -> rhs) / D;
        # assemble every p-coefficient as one fraction over L*D
        dets = []
        for j in range(k):
            col = [r[:j] + [r[k]] + r[j + 1:k] for r in rows]
            dets.append(bareiss_det(col))
        L = 1
        for coeffs in [m2p_frac[lam]] + [m2p_frac[nu] for nu in lower]:
            for v in coeffs.values():
                L = L // _gcd(L, v.denominator) * v.denominator
        f = {}
        for rho, v in m2p_frac[lam].items():
            f[rho] = pmul_int(D, int(v * L))
        for j, nu in enumerate(lower):
            if not dets[j]:
                continue
            for rho, v in m2p_frac[nu].items():
                f[rho] = padd(f.get(rho, pzero()),
                              pmul_int(dets[j], -int(v * L)))
        denom = pmul_int(D, L)
        out[lam] = {rho: Scalar(num, dict(denom)) for rho, num in f.items()
                    if num}
    return out


def integral_form_factor(lam):
    """c_lam = prod over boxes (1 - q^arm t^(leg+1))."""
    c = ONE
    for (r, cc) in boxes(lam):
        c = c * (ONE - Q_MACD ** arm(lam, r, cc) * T_MACD ** (leg(lam, r, cc) + 1))
    return c


def macd_H_gram_schmidt(n):
    """Modified Macdonald H_lam for all |lam| = n, via the production route."""
    P = macd_P(n)
    out = {}
    for lam, f in P.items():
        c = integral_form_factor(lam)
        g = {}
        for mu, v in f.items():
            den = ONE
            for k in mu:
                den = den * (ONE - T_MACD ** k)
            g[mu] = (c * v / den).reduced()
        tn = T_MACD ** n_stat(lam)
        h = {mu: (_invert_t2(v) * tn).reduced() for mu, v in g.items()}
        out[lam] = {mu: v for mu, v in h.items() if not v.is_zero()}
    return out


def macd_H_axioms(n):
    """Oracle route: solve the triangularity axioms in the Schur basis.

    H_lam is determined by requiring that p_k -> (1-q^k) p_k maps it into the
    span of s_mu with mu >= lam (dominance), p_k -> (1-t^k) p_k into the span
    of s_mu with mu >= lam', and that the s_(n) coefficient is 1.
    """
    parts = partitions(n)
    s_p = {nu: _to_scalar_dict(s_in_p(nu)) for nu in parts}
    zs = {mu: Scalar.from_int(z_mu(mu)) for mu in parts}

    def _prod_factor(mu, param):
        f = ONE
        for k in mu:
            f = f * (ONE - param ** k)
        return f

    def twisted_matrix(param):
        # entry (mu, nu): s_mu coefficient of s_nu[X(1-param)]
        cols = {}
        for nu in parts:
            twisted = {rho: v * _prod_factor(rho, param)
                       for rho, v in s_p[nu].items()}
            for mu in parts:
                val = ZERO
                for rho, a in twisted.items():
                    b = s_p[mu].get(rho)
                    if b is not None:
                        val = val + a * b * zs[rho]
                cols[(mu, nu)] = val
        return cols

    Aq = twisted_matrix(Q_MACD)
    At = twisted_matrix(T_MACD)

    from .scalar import solve_poly_system
    out = {}
    for lam in parts:
        lam_c = conjugate(lam)
        rows, rhs = [], []
        for mu in parts:
            if not dominates(mu, lam):
                cleared = _clear_row([Aq[(mu, nu)] for nu in parts])
                rows.append(cleared)
                rhs.append({})
            if not dominates(mu, lam_c):
                cleared = _clear_row([At[(mu, nu)] for nu in parts])
                rows.append(cleared)
                rhs.append({})
        norm_key = (n,) if n else ()
        rows.append([pone() if nu == norm_key else pzero() for nu in parts])
        rhs.append(pone())
        # the Schur coefficients are polynomial, so exact division clears
        # the determinant denominators from the Cramer solve
        sol = [x.reduced() for x in solve_poly_system(rows, rhs)]
        f = {}
        for nu, x in zip(parts, sol):
            if x.is_zero():
                continue
            for mu, v in s_p[nu].items():
                f[mu] = f.get(mu, ZERO) + x * v
        out[lam] = {mu: v for mu, v in f.items() if not v.is_zero()}
    return out


# ---------------------------------------------------------------------------
# calibrated Euler factor of the fixed points
# ---------------------------------------------------------------------------

def euler_hilb_factors(lam, orientation="arms_t1"):
    """Koszul factors of the fixed-point Euler class, weights squared."""
    num, den = tangent_hilb(lam, orientation).adams(2).lambda_factors()
    return num, den


def euler_hilb(lam, orientation="arms_t1"):
    num_f, den_f = euler_hilb_factors(lam, orientation)
    num = pone()
    for f in num_f:
        num = pmul(num, f)
    den = pone()
    for f in den_f:
        den = pmul(den, f)
    return Scalar(num, den)


# ---------------------------------------------------------------------------
# the cached basis and fixed-point calculus
# ---------------------------------------------------------------------------

class MacdonaldBasis:
    """Per-degree cache of H_lam with decomposition and localization sums."""

    def __init__(self, orientation="arms_t1", max_degree=8):
        self.orientation = orientation
        self.max_degree = max_degree
        self._H = {}
        self._inverse = {}

    def build_degree(self, n):
        if n > self.max_degree:
            raise ValueError(f"degree {n} beyond configured bound "
                             f"{self.max_degree}")
        if n in self._H:
            return
        self._H[n] = macd_H_axioms(n)

    def H(self, lam):
        """H_lam as a FockElement with Scalar coefficients."""
        n = sum(lam)
        self.build_degree(n)
        return FockElement(self._H[n][tuple(lam)], n)

    def change_matrix(self, n):
        """Rows indexed by lam, columns by mu: coefficient of p_mu in H_lam."""
        self.build_degree(n)
        parts = partitions(n)
        return [[self._H[n][lam].get(mu, ZERO) for mu in parts]
                for lam in parts]

    def inverse_matrix(self, n):
        got = self._inverse.get(n)
        if got is None:
            got = invert_matrix(self.change_matrix(n))
            self._inverse[n] = got
        return got

    def decompose(self, f, n):
        """Coefficients c_lam with (degree-n slice of f) = sum c_lam H_lam."""
        parts = partitions(n)
        inv = self.inverse_matrix(n)
        # f = sum_mu f_mu p_mu ; c = f-vector times inverse of (H rows)
        fvec = [f.coefficient((mu)) if hasattr(f, "coefficient") else
                f.get(mu, ZERO) for mu in parts]
        out = {}
        for i, lam in enumerate(parts):
            val = None
            for j, mu in enumerate(parts):
                term = fvec[j] * inv[j][i]
                val = term if val is None else val + term
            out[lam] = val
        return out

    def localization_sum(self, eig, n):
        """sum over |lam| = n of eig(lam) H_lam / Euler(lam), exactly.

        Accumulates over a shared expanded denominator, multiplying in the
        two-term Koszul factors one at a time; this is what makes the
        degree-5 identity checks run in seconds.
        """
        self.build_degree(n)
        parts = partitions(n)
        mus = partitions(n)
        nums = {mu: pzero() for mu in mus}
        D = pone()
        for lam in parts:
            Hrow = self._H[n][lam]
            e = eig(lam)
            num_f, den_f = euler_hilb_factors(lam, self.orientation)
            # term_mu = (e.num * H_num_mu * prod(den_f)) /
            #           (e.den * H_den_mu * prod(num_f))
            # write every H coefficient over one shared integer denominator
            int_dens = {}
            for mu, v in Hrow.items():
                if len(v.den) != 1 or next(iter(v.den)) != KEY_ONE:
                    int_dens = None
                    break
                int_dens[mu] = v.den[KEY_ONE]
            lam_factors = list(num_f) + [dict(e.den)]
            if int_dens is None:
                # rare fallback: polynomial denominators folded individually
                lam_factors += [dict(v.den) for v in Hrow.values()]
                scaled = {}
                for mu, v in Hrow.items():
                    acc = dict(v.num)
                    for nu, w in Hrow.items():
                        if nu != mu:
                            acc = pmul(acc, w.den)
                    scaled[mu] = acc
            else:
                L = 1
                for d in int_dens.values():
                    g = _gcd(L, d)
                    L = L // g * d
                lam_factors += [pconst(L)]
                scaled = {mu: pmul_int(v.num, L // int_dens[mu])
                          for mu, v in Hrow.items()}
            new_terms = {mu: pmul(pmul(e.num, poly), D)
                         for mu, poly in scaled.items()}
            for f in den_f:
                for mu in new_terms:
                    new_terms[mu] = pmul(new_terms[mu], f)
            for f in lam_factors:
                for mu in mus:
                    if nums[mu]:
                        nums[mu] = pmul(nums[mu], f)
                D = pmul(D, f)
            for mu, poly in new_terms.items():
                nums[mu] = padd(nums[mu], poly)
        return FockElement({mu: Scalar(nums[mu], dict(D)) for mu in mus
                            if nums[mu]}, n)


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


_DEFAULT_BASIS = None


def default_basis():
    global _DEFAULT_BASIS
    if _DEFAULT_BASIS is None:
        _DEFAULT_BASIS = MacdonaldBasis()
    return _DEFAULT_BASIS


def macd_H(lam):
    """H_lam in the frozen convention, from the shared cache."""
    return default_basis().H(lam)


def fixed_point_decompose(f, n):
    return default_basis().decompose(f, n)


def localization_sum(eig, n):
    return default_basis().localization_sum(eig, n)
