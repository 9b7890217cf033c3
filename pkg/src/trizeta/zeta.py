"""L-polynomials of trinomial curves from Frobenius orbits of character pairs.

The congruence system ``A xi = 0 (mod 1)`` is solved through the Smith normal
form ``U A V = diag(d, |A|/d)``: every solution is ``xi = V eta`` with
``d eta_1`` and ``(|A|/d) eta_2`` integral.  Pairs with a zero coordinate or
zero sum are dropped, the rest are grouped under ``xi -> q xi`` and each orbit
contributes one factor ``1 + C U^mu``.

Counting oracles live here as well: a vectorised brute-force point counter
and an independent torus/toric count.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
import numpy as np

from . import charsum
from ._arith import frac_mod1, gcd_all, mult_order, p_part
from .curve import CaseForm, Trinomial, case_matrix, det2, genus
from .errors import CapExceeded, DomainError, RoundingError
from .gf import Field, make_extension

#: Largest number of (x, y) evaluations a brute-force count may perform.
COUNT_CAP = 1 << 24

ROUND_TOL = 1e-3

#: Working precision (decimal digits) for expanding non-exact factors.
MP_DPS = 60


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    U: tuple[tuple[int, int], tuple[int, int]]
    V: tuple[tuple[int, int], tuple[int, int]]
    D: tuple[int, int]


def _mat_mul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def snf_2x2(A) -> SnfResult:
    """Unimodular U, V with U A V = diag(d, |det A| / d), d = gcd of entries."""
    M = [list(map(int, row)) for row in A]
    if det2(M) == 0:
        raise DomainError("matrix is singular")
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def swap_rows():
        M[0], M[1] = M[1], M[0]
        U[0], U[1] = U[1], U[0]

    def swap_cols():
        for R in (M, V):
            for row in R:
                row[0], row[1] = row[1], row[0]

    while True:
        # pivot: smallest nonzero entry by absolute value, first in row-major order
        _, i, j = min((abs(M[i][j]), i, j) for i in range(2) for j in range(2) if M[i][j])
        if i:
            swap_rows()
        if j:
            swap_cols()
        piv = M[0][0]
        f = M[1][0] // piv
        if f:
            M[1] = [M[1][k] - f * M[0][k] for k in range(2)]
            U[1] = [U[1][k] - f * U[0][k] for k in range(2)]
        f = M[0][1] // piv
        if f:
            for R in (M, V):
                for row in R:
                    row[1] -= f * row[0]
        if M[1][0] or M[0][1]:
            continue
        if M[1][1] % piv:
            M[0] = [M[0][k] + M[1][k] for k in range(2)]
            U[0] = [U[0][k] + U[1][k] for k in range(2)]
            continue
        break
    for r in range(2):
        if M[r][r] < 0:
            M[r] = [-x for x in M[r]]
            U[r] = [-x for x in U[r]]
    return SnfResult(tuple(map(tuple, U)), tuple(map(tuple, V)), (M[0][0], M[1][1]))


# -- solutions and orbits ----------------------------------------------------

Pair = tuple[Fraction, Fraction]


def m_of(xi: Pair) -> int:
    return math.lcm(*(Fraction(x).denominator for x in xi))


def mu(xi: Pair, q: int) -> int:
    """Smallest v with (q^v - 1) xi = 0 (mod 1)."""
    m = m_of(xi)
    if math.gcd(m, q) != 1:
        raise DomainError(f"denominator {m} is not prime to q={q}")
    return mult_order(q, m)


def solutions(A, p: int) -> list[Pair]:
    """All xi mod 1 with A xi = 0 and denominators prime to p, sorted."""
    snf = snf_2x2(A)
    d1, d2 = (p_part(x, p) for x in snf.D)
    V = snf.V
    out = set()
    for a in range(d1):
        e1 = Fraction(a, d1)
        for b in range(d2):
            e2 = Fraction(b, d2)
            out.add((frac_mod1(V[0][0] * e1 + V[0][1] * e2), frac_mod1(V[1][0] * e1 + V[1][1] * e2)))
    return sorted(out)


def is_generic(xi: Pair) -> bool:
    return xi[0] != 0 and xi[1] != 0 and frac_mod1(xi[0] + xi[1]) != 0


@dataclass(frozen=True)
class CharacterOrbit:
    rep: Pair
    m: int
    mu: int
    members: tuple[Pair, ...]
    nu: int | None = None

    def to_dict(self) -> dict:
        d = {"rep": [str(self.rep[0]), str(self.rep[1])], "m": self.m, "mu": self.mu}
        if self.nu is not None:
            d["nu"] = self.nu
        return d


def minimal_negative_exponent(m: int, q: int) -> int | None:
    """Smallest l with m | q^l + 1, or None when no such l exists."""
    if math.gcd(m, q) != 1:
        raise DomainError(f"gcd({q}, {m}) != 1")
    if m <= 2:
        return 1
    k = mult_order(q, m)
    if k % 2 == 0 and pow(q, k // 2, m) == m - 1:
        return k // 2
    return None


def orbit_of(xi: Pair, q: int) -> tuple[Pair, ...]:
    members = [xi]
    cur = xi
    while True:
        cur = (frac_mod1(cur[0] * q), frac_mod1(cur[1] * q))
        if cur == xi:
            break
        members.append(cur)
    return tuple(members)


def _group_orbits(pairs, q: int) -> list[CharacterOrbit]:
    seen = set()
    orbits = []
    for xi in sorted(pairs):
        if xi in seen:
            continue
        members = orbit_of(xi, q)
        seen.update(members)
        rep = min(members)
        m = m_of(rep)
        k = len(members)
        nu = k // 2 if minimal_negative_exponent(m, q) is not None and k % 2 == 0 else None
        orbits.append(CharacterOrbit(rep, m, k, tuple(sorted(members)), nu))
    return sorted(orbits, key=lambda o: o.rep)


def enumerate_orbits(cf: CaseForm) -> list[CharacterOrbit]:
    A, _, _ = case_matrix(cf)
    d = gcd_all(*A[0], *A[1])
    if d % cf.p == 0:
        raise DomainError(f"p={cf.p} divides d={d}")
    return _group_orbits([xi for xi in solutions(A, cf.p) if is_generic(xi)], cf.q)


# -- orbit factors -----------------------------------------------------------

@dataclass(frozen=True)
class OrbitFactor:
    """One factor ``1 + C U^mu``.

    ``cyclo`` holds integers c_k with C = sum c_k exp(2 pi i k / m) when C was
    obtained from a Jacobi-sum count; it is exact, unlike the float ``C``.
    """

    orbit: CharacterOrbit
    C: complex
    exact: int | None
    method: str
    cyclo: tuple[int, ...] | None = None

    @property
    def mu(self) -> int:
        return self.orbit.mu

    def to_dict(self) -> dict:
        d = self.orbit.to_dict()
        d["method"] = self.method
        if self.exact is not None:
            d["C"] = self.exact
        elif self.cyclo is not None:
            d["C_cyclotomic"] = {"m": self.orbit.m, "coeffs": list(self.cyclo)}
        return d


def _orbit_field(orbit: CharacterOrbit, cf: CaseForm, generator_rank: int) -> Field:
    E = make_extension(cf.field, orbit.mu, generator_rank)
    if E.order > E.table_cap:
        raise CapExceeded(f"orbit needs {E} (order {E.order}) above the table cap {E.table_cap}")
    return E


def _gauss_C(orbit: CharacterOrbit, cf: CaseForm, generator_rank: int = 0) -> complex:
    """chi1(t1) chi2(t2) g(chi1) g(chi2) g(chi3) / Q in floating point."""
    E = _orbit_field(orbit, cf, generator_rank)
    _, (t1, t2), _ = case_matrix(cf)
    x1, x2 = orbit.rep
    chi1 = charsum.MultiplicativeCharacter(E, x1)
    chi2 = charsum.MultiplicativeCharacter(E, x2)
    chi3 = charsum.MultiplicativeCharacter(E, -x1 - x2)
    g = charsum.gauss_sum_fast
    value = chi1(t1) * chi2(t2) * g(E, chi1) * g(E, chi2) * g(E, chi3)
    return value / E.order


def _jacobi_cyclo(orbit: CharacterOrbit, cf: CaseForm, generator_rank: int = 0) -> tuple[int, ...]:
    """The same C as an exact element of Z[zeta_m].

    With chi3 = conj(chi1 chi2) the triple product of Gauss sums equals
    (chi1 chi2)(-1) Q J(chi1, chi2), so C = chi1(t1) chi2(t2) (chi1 chi2)(-1) J
    and J counts x != 0, 1 by the residue of a1 log x + a2 log(1 - x) mod m.
    """
    E = _orbit_field(orbit, cf, generator_rank)
    _, log, _ = E.tables()
    _, (t1, t2), _ = case_matrix(cf)
    m = orbit.m
    a1, a2 = (int(x * m) for x in orbit.rep)
    xs = np.arange(2, E.order, dtype=np.int64)
    ys = E.add_arrays(np.ones_like(xs), E.neg_arrays(xs))
    k = (a1 * log[xs].astype(np.int64) + a2 * log[ys].astype(np.int64)) % m
    counts = np.bincount(k, minlength=m)
    shift = (a1 * int(log[t1]) + a2 * int(log[t2]) + (a1 + a2) * int(log[E.neg(1)])) % m
    return tuple(int(c) for c in np.roll(counts, shift))


def _cyclo_value(cyclo, m: int):
    return mpmath.fsum(c * mpmath.expjpi(mpmath.mpf(2 * k) / m) for k, c in enumerate(cyclo) if c)


def orbit_factor(orbit: CharacterOrbit, cf: CaseForm, method: str = "auto",
                 generator_rank: int = 0) -> OrbitFactor:
    """Coefficient C of the factor 1 + C U^mu.

    ``method``: ``auto`` (exact when a negative power of q kills m, else the
    Jacobi-sum count), ``exact``, ``jacobi``, ``gauss`` (floating Gauss sums,
    kept as an independent check) or ``both`` (exact and Jacobi, compared).
    """
    if not is_generic(orbit.rep):
        raise DomainError(f"{orbit.rep} is not a valid orbit representative")
    if method not in ("auto", "exact", "jacobi", "gauss", "both"):
        raise ValueError(f"unknown method {method!r}")
    q = cf.q
    exact_ok = orbit.nu is not None
    if method == "exact" or (method == "auto" and exact_ok):
        if not exact_ok:
            raise DomainError(f"no l with {orbit.m} | q^l + 1; exact factor unavailable")
        return OrbitFactor(orbit, complex(q ** orbit.nu), q ** orbit.nu, "exact")
    if method == "gauss":
        return OrbitFactor(orbit, _gauss_C(orbit, cf, generator_rank), None, "gauss")
    cyclo = _jacobi_cyclo(orbit, cf, generator_rank)
    with mpmath.workdps(MP_DPS):
        C = complex(_cyclo_value(cyclo, orbit.m))
    if method == "both" and exact_ok:
        target = q ** orbit.nu
        if abs(C - target) > 1e-9 * target:
            raise RoundingError(f"exact and Jacobi-sum factors disagree: {C} vs {target}")
        return OrbitFactor(orbit, C, target, "both", cyclo)
    return OrbitFactor(orbit, C, None, "jacobi", cyclo)


# -- L-polynomial ------------------------------------------------------------

@dataclass
class LPolynomial:
    q: int
    coeffs: list[int]
    factors: list[OrbitFactor] = dc_field(default_factory=list)
    max_rounding_error: float = 0.0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def genus(self) -> int:
        return self.degree // 2

    def power_sums(self, vmax: int) -> list[int]:
        """s_v = sum of alpha_j^v for v = 1..vmax (Newton's identities)."""
        a = self.coeffs
        s = []
        for k in range(1, vmax + 1):
            ak = a[k] if k < len(a) else 0
            total = -k * ak - sum((a[i] if i < len(a) else 0) * s[k - i - 1] for i in range(1, k))
            s.append(total)
        return s

    def model_count(self, v: int) -> int:
        """Points of the smooth model over F_{q^v}: q^v + 1 - sum alpha^v."""
        return self.q ** v + 1 - self.power_sums(v)[-1]

    def reciprocal_roots(self) -> np.ndarray:
        if self.degree == 0:
            return np.array([])
        if self.factors:
            # 1 + C U^mu vanishes at U = 1/alpha with alpha^mu = -C; this avoids
            # np.roots on the highly repeated roots of maximal curves
            out = []
            for f in self.factors:
                c = complex(f.exact) if f.exact is not None else f.C
                r = abs(c) ** (1.0 / f.mu)
                base = cmath.phase(-c) / f.mu
                out.extend(r * cmath.exp(1j * (base + 2 * math.pi * k / f.mu)) for k in range(f.mu))
            return np.array(out)
        # roots of U^deg L(1/U) are the alpha_j
        return np.roots(self.coeffs)

    def functional_equation_holds(self) -> bool:
        g = self.genus
        a = self.coeffs
        return all(a[2 * g - i] == self.q ** (g - i) * a[i] for i in range(g + 1))

    def factored(self) -> list[dict]:
        return [f.to_dict() for f in self.factors]


def _round_all(poly) -> tuple[list[int], float]:
    ints = [int(mpmath.nint(mpmath.re(c))) for c in poly]
    errs = [float(abs(c - r)) for c, r in zip(poly, ints)]
    for i, e in enumerate(errs):
        if e >= ROUND_TOL:
            raise RoundingError(f"coefficient a_{i} = {complex(poly[i])} is not within {ROUND_TOL} of an integer")
    return ints, max(errs, default=0.0)


def _expand(factors, q: int):
    """Multiply out prod (1 + C U^mu); exact if every factor is."""
    if all(f.exact is not None for f in factors):
        poly = [1]
        for f in factors:
            new = poly + [0] * f.mu
            for i, c in enumerate(poly):
                new[i + f.mu] += f.exact * c
            poly = new
        return poly, 0.0
    if all(f.exact is not None or f.cyclo is not None for f in factors):
        with mpmath.workdps(MP_DPS):
            poly = [mpmath.mpc(1)]
            for f in factors:
                C = mpmath.mpc(f.exact) if f.exact is not None else _cyclo_value(f.cyclo, f.orbit.m)
                new = poly + [mpmath.mpc(0)] * f.mu
                for i, c in enumerate(poly):
                    new[i + f.mu] += C * c
                poly = new
            return _round_all(poly)
    poly = np.array([1.0 + 0j])
    for f in factors:
        term = np.zeros(f.mu + 1, dtype=complex)
        term[0] = 1
        term[f.mu] = f.exact if f.exact is not None else f.C
        poly = np.convolve(poly, term)
    return _round_all([mpmath.mpc(c) for c in poly])


def l_polynomial(cf: CaseForm, method: str = "auto", generator_rank: int = 0) -> LPolynomial:
    """Numerator of the zeta function of the smooth model of the curve."""
    rep = genus(cf)
    q = cf.q
    if rep.genus == 0:
        return LPolynomial(q, [1])
    factors = [orbit_factor(o, cf, method, generator_rank) for o in enumerate_orbits(cf)]
    coeffs, err = _expand(factors, q)
    if len(coeffs) - 1 != 2 * rep.genus:
        raise DomainError(f"orbit degrees sum to {len(coeffs) - 1}, expected 2g = {2 * rep.genus}")
    return LPolynomial(q, coeffs, factors, err)


def m_of_curve(cf: CaseForm) -> int:
    if genus(cf).genus == 0:
        raise DomainError("m_C is undefined for genus 0")
    return max(o.m for o in enumerate_orbits(cf))


def m_formula(cf: CaseForm) -> int:
    """(|det A| / d) with p removed."""
    A, _, _ = case_matrix(cf)
    d = gcd_all(*A[0], *A[1])
    return p_part(abs(det2(A)) // d, cf.p)


# -- predicted counts --------------------------------------------------------

def _roots_count(E: Field, g: int, c: int) -> complex:
    """#{x : x^g = c} for c != 0 as the character sum over g-torsion characters of E."""
    n = E.order - 1
    h = math.gcd(g, n)
    j = E.log(c)
    return sum(charsum.char_at_log(Fraction(k, h), j) for k in range(h))


def predicted_torus_count(cf: CaseForm, v: int = 1) -> complex:
    """Points with xy != 0 over F_{q^v}, from Gauss sums of F_{q^v}."""
    E = make_extension(cf.field, v)
    if E.order > E.table_cap:
        raise CapExceeded(f"{E} above the table cap")
    A, (t1, t2), _ = case_matrix(cf)
    Q = E.order
    n = Q - 1
    gt = charsum.gauss_table(E)
    log1, log2 = E.log(t1), E.log(t2)
    neg1 = E.log(E.neg(1))
    total = 0j
    for th1, th2 in solutions(A, cf.p):
        if (th1 * n).denominator != 1 or (th2 * n).denominator != 1:
            continue
        z1, z2 = th1 == 0, th2 == 0
        if z1 and z2:
            total += Q - 2
        elif z2:
            total -= charsum.char_at_log(th1, log1 + neg1)
        elif z1:
            total -= charsum.char_at_log(th2, log2 + neg1)
        elif frac_mod1(th1 + th2) == 0:
            total -= charsum.char_at_log(th1, log1 - log2 + neg1)
        else:
            k1, k2 = int(th1 * n), int(th2 * n)
            k3 = (-k1 - k2) % n
            total += (charsum.char_at_log(th1, log1) * charsum.char_at_log(th2, log2)
                      * gt[k1] * gt[k2] * gt[k3]) / Q
    return total


def _axis_count(cf: CaseForm, E: Field) -> complex:
    """Points of the normal form on the coordinate axes over E."""
    c, P = cf.case_id, cf.params
    k1, k2 = cf.k1, cf.k2
    neg = E.neg
    if c == 1:
        m, n = P
        return _roots_count(E, n, neg(E.inv(k2))) + _roots_count(E, m, neg(E.inv(k1)))
    if c == 2:
        m, n1, n = P
        return 1 + _roots_count(E, n - n1, neg(k2))
    if c == 3:
        n = P[2]
        return _roots_count(E, n, neg(E.inv(k2)))
    if c == 4:
        return 0
    return 1


def predicted_affine_count(cf: CaseForm, v: int = 1) -> int:
    """Affine points of the normal form over F_{q^v} from the character-sum formula."""
    E = make_extension(cf.field, v)
    total = predicted_torus_count(cf, v) + _axis_count(cf, E)
    return charsum.round_to_int(total, ROUND_TOL, "predicted affine count")


# -- brute force -------------------------------------------------------------

def _check_cap(evals: int, cap: int | None):
    cap = COUNT_CAP if cap is None else cap
    if evals > cap:
        raise CapExceeded(f"{evals} point evaluations exceed the count cap {cap}")


def _eval_terms(E: Field, terms, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Codes of sum c x^a y^b for broadcastable code arrays X, Y."""
    exp, log, _ = E.tables()
    n = E.order - 1
    lx, ly = log[X], log[Y]
    total = None
    for a, b, c in terms:
        e = np.full(np.broadcast(X, Y).shape, E.log(c), dtype=np.int64)
        zero = np.zeros(e.shape, dtype=bool)
        if a:
            e = e + a * lx
            zero |= np.broadcast_to(X == 0, e.shape)
        if b:
            e = e + b * ly
            zero |= np.broadcast_to(Y == 0, e.shape)
        val = np.where(zero, 0, exp[e % n])
        total = val if total is None else E.add_arrays(total, val)
    return total


def brute_count(t: Trinomial, v: int = 1, mode: str = "affine", cap: int | None = None) -> int:
    """Exhaustive count over F_{q^v}; ``mode`` is ``affine`` or ``projective``."""
    if mode not in ("affine", "projective"):
        raise DomainError(f"unknown mode {mode!r}")
    E = make_extension(t.field, v)
    Q = E.order
    _check_cap(Q * Q, cap)
    terms = t.monomials
    ys = np.arange(Q, dtype=np.int64)[None, :]
    chunk = max(1, (1 << 20) // Q)
    count = 0
    for start in range(0, Q, chunk):
        xs = np.arange(start, min(Q, start + chunk), dtype=np.int64)[:, None]
        count += int((_eval_terms(E, terms, xs, ys) == 0).sum())
    if mode == "projective":
        count += count_at_infinity(t, v)
    return count


def count_at_infinity(t: Trinomial, v: int = 1) -> int:
    """Points [x:y:0] of the projective closure over F_{q^v}."""
    E = make_extension(t.field, v)
    D = t.degree
    top = [(a, b, c) for a, b, c in t.monomials if a + b == D]
    ys = np.arange(E.order, dtype=np.int64)
    # [1:y:0]
    count = int((_eval_terms(E, top, np.ones(1, dtype=np.int64), ys) == 0).sum())
    # [0:1:0]
    count += int(_eval_terms(E, top, np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64))[0] == 0)
    return count


def brute_torus_count(t: Trinomial, v: int = 1, cap: int | None = None) -> int:
    E = make_extension(t.field, v)
    Q = E.order
    _check_cap(Q * Q, cap)
    ys = np.arange(1, Q, dtype=np.int64)[None, :]
    chunk = max(1, (1 << 20) // Q)
    count = 0
    for start in range(1, Q, chunk):
        xs = np.arange(start, min(Q, start + chunk), dtype=np.int64)[:, None]
        count += int((_eval_terms(E, t.monomials, xs, ys) == 0).sum())
    return count


# -- toric model oracle ------------------------------------------------------

def edge_data(t: Trinomial):
    """For each pair of monomials: (i, j, lattice length of the edge)."""
    mons = t.monomials
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            g = math.gcd(mons[i][0] - mons[j][0], mons[i][1] - mons[j][1])
            out.append((i, j, g))
    return out


def is_nondegenerate(t: Trinomial) -> bool:
    """True when the Newton-triangle compactification is a smooth model."""
    (a1, b1, _), (a2, b2, _), (a3, b3, _) = t.monomials
    twice_area = abs((a2 - a1) * (b3 - b1) - (a3 - a1) * (b2 - b1))
    if twice_area == 0 or twice_area % t.p == 0:
        return False
    return all(g % t.p for _, _, g in edge_data(t))


def toric_count(t: Trinomial, v: int = 1, cap: int | None = None) -> int:
    """Points of the toric compactification: torus points plus edge points.

    On the edge joining monomials i and j the curve meets the boundary divisor
    where c_i + c_j s^g = 0, s ranging over the one-dimensional torus.
    """
    E = make_extension(t.field, v)
    total = brute_torus_count(t, v, cap)
    for i, j, g in edge_data(t):
        ci, cj = t.monomials[i][2], t.monomials[j][2]
        total += charsum.n_roots(E, g, E.neg(E.div(ci, cj)))
    return total
