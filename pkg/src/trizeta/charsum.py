"""Multiplicative/additive characters, Gauss and Jacobi sums, power systems.

A multiplicative character is indexed by a rational ``alpha`` in [0, 1) with
``(q-1) * alpha`` integral; it sends the canonical generator omega to
``exp(2 pi i alpha)``.  Characters are never evaluated at 0: every formula
that would need a value there is handled by case analysis.

The additive character is ``psi(x) = exp(2 pi i Tr(x) / p)``.

Most quantities come in two flavours, a direct summation (the definition)
and a closed form, so the tests can play one against the other.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._arith import frac_mod1, xgcd
from .errors import CapExceeded, DomainError, RoundingError
from .gf import Field

TWO_PI_I = 2j * math.pi

#: Brute-force Jacobi sums enumerate q**(k-1) tuples; refuse beyond this.
JACOBI_BRUTE_MAX_Q = 64


@dataclass(frozen=True)
class MultiplicativeCharacter:
    field: Field
    alpha: Fraction

    def __post_init__(self):
        a = frac_mod1(self.alpha)
        object.__setattr__(self, "alpha", a)
        if ((self.field.order - 1) * a).denominator != 1:
            raise DomainError(f"alpha={a} is not a character of {self.field}")

    @property
    def index(self) -> int:
        """k with chi(omega) = exp(2 pi i k / (q-1))."""
        return int(self.alpha * (self.field.order - 1))

    @property
    def is_trivial(self) -> bool:
        return self.alpha == 0

    def __mul__(self, other: MultiplicativeCharacter) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, self.alpha + other.alpha)

    def conj(self) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, -self.alpha)

    def __pow__(self, e: int) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, self.alpha * e)

    def __call__(self, x) -> complex:
        return char_eval(self, x)


def character(F: Field, alpha) -> MultiplicativeCharacter:
    return MultiplicativeCharacter(F, Fraction(alpha))


def all_characters(F: Field) -> list[MultiplicativeCharacter]:
    n = F.order - 1
    return [MultiplicativeCharacter(F, Fraction(k, n)) for k in range(n)]


def _unit(x: Fraction) -> complex:
    return cmath.exp(TWO_PI_I * float(frac_mod1(x)))


def char_eval(chi: MultiplicativeCharacter, x) -> complex:
    F = chi.field
    code = F.code(x)
    if code == 0:
        raise DomainError("multiplicative characters are not evaluated at 0")
    if chi.is_trivial:
        return 1.0 + 0j
    return _unit(chi.alpha * F.log(code))


def char_at_log(alpha: Fraction, j: int) -> complex:
    """chi_alpha(omega**j) without touching any table."""
    return _unit(Fraction(alpha) * j)


def psi_eval(F: Field, x) -> complex:
    t = F.abs_trace(F.code(x))
    return cmath.exp(TWO_PI_I * t / F.p)


# -- Gauss sums --------------------------------------------------------------

def _psi_powers(F: Field) -> np.ndarray:
    """psi(omega**j) for j = 0 .. q-2."""
    _, _, tr = F.tables()
    return np.exp(TWO_PI_I * tr / F.p)


def gauss_sum(F: Field, chi: MultiplicativeCharacter, a=1) -> complex:
    """g_a(psi, chi) = sum over u != 0 of psi(a u) chi(u), summed directly."""
    n = F.order - 1
    a = F.code(a)
    if a == 0:
        return complex(n) if chi.is_trivial else 0j
    _, log, tr = F.tables()
    j = np.arange(n)
    shifted = tr[(j + int(log[a])) % n]
    terms = np.exp(TWO_PI_I * (shifted / F.p + float(chi.alpha) * j))
    return complex(terms.sum())


@functools.lru_cache(maxsize=8)
def gauss_table(F: Field) -> np.ndarray:
    """g(psi, chi_{k/(q-1)}) for every k, all at once by an FFT.

    g(chi_{k/n}) = sum_j psi(omega^j) e^{2 pi i k j / n} = n * ifft(psi)[k].
    """
    psi = _psi_powers(F)
    return (F.order - 1) * np.fft.ifft(psi)


def gauss_sum_fast(F: Field, chi: MultiplicativeCharacter, a=1) -> complex:
    """Same value as :func:`gauss_sum`, read from the FFT table."""
    a = F.code(a)
    n = F.order - 1
    if a == 0:
        return complex(n) if chi.is_trivial else 0j
    g = complex(gauss_table(F)[chi.index])
    if chi.is_trivial:
        return g
    return char_eval(chi, F.inv(a)) * g


# -- Jacobi sums -------------------------------------------------------------

def _char_values(F: Field, alpha: Fraction) -> np.ndarray:
    """chi_alpha indexed by code, with a 0 placeholder at code 0 (never read)."""
    _, log, _ = F.tables()
    vals = np.exp(TWO_PI_I * float(alpha) * np.maximum(log, 0))
    vals[0] = 0
    return vals


def _jacobi_brute(F: Field, chis, target: int) -> complex:
    k = len(chis)
    if k == 0:
        raise DomainError("need at least one character")
    if k > 3 or F.order > JACOBI_BRUTE_MAX_Q:
        raise CapExceeded(f"brute-force Jacobi sum limited to k <= 3, q <= {JACOBI_BRUTE_MAX_Q}")
    nonzero = np.arange(1, F.order)
    vals = [_char_values(F, c.alpha) for c in chis]
    if k == 1:
        return complex(vals[0][target]) if target else 0j
    grids = np.meshgrid(*([nonzero] * (k - 1)), indexing="ij")
    partial = np.zeros_like(grids[0])
    weight = np.ones(grids[0].shape, dtype=complex)
    for g, v in zip(grids, vals):
        partial = F.add_arrays(partial, g)
        weight = weight * v[g]
    last = F.add_arrays(target, F.neg_arrays(partial))
    keep = last != 0
    return complex((weight * vals[-1][last])[keep].sum())


def _split_trivial(chis):
    nontriv = [c for c in chis if not c.is_trivial]
    return len(chis) - len(nontriv), nontriv


def _jacobi_closed(F: Field, chis) -> complex:
    q, k = F.order, len(chis)
    s, rest = _split_trivial(chis)
    if s == k:
        return complex(((q - 1) ** k + (-1) ** (k - 1)) / q)
    if s:
        return (-1) ** s * _jacobi_closed(F, rest)
    prod = sum((c.alpha for c in chis), Fraction(0))
    gs = [gauss_sum_fast(F, c) for c in chis]
    num = math.prod(gs)
    if frac_mod1(prod) == 0:
        return -num / q
    return num / gauss_sum_fast(F, MultiplicativeCharacter(F, prod))


def _jacobi0_closed(F: Field, chis) -> complex:
    q, k = F.order, len(chis)
    s, rest = _split_trivial(chis)
    if s == k:
        return complex(((q - 1) ** k + (-1) ** k * (q - 1)) / q)
    if s:
        return (-1) ** s * _jacobi0_closed(F, rest)
    prod = sum((c.alpha for c in chis), Fraction(0))
    if frac_mod1(prod) != 0:
        return 0j
    return -(q - 1) * _jacobi_closed(F, chis)


def jacobi(F: Field, chis, method: str = "auto") -> complex:
    """Sum of prod chi_i(t_i) over tuples of nonzero t_i with sum 1."""
    chis = list(chis)
    if method == "brute" or (method == "auto" and len(chis) <= 3 and F.order <= JACOBI_BRUTE_MAX_Q):
        return _jacobi_brute(F, chis, 1)
    return _jacobi_closed(F, chis)


def jacobi0(F: Field, chis, method: str = "auto") -> complex:
    """Sum of prod chi_i(t_i) over tuples of nonzero t_i with sum 0."""
    chis = list(chis)
    if method == "brute" or (method == "auto" and len(chis) <= 3 and F.order <= JACOBI_BRUTE_MAX_Q):
        return _jacobi_brute(F, chis, 0)
    return _jacobi0_closed(F, chis)


# -- fractional powers and the twisted power sum ----------------------------

def bezout_for_root(m: int, n: int) -> tuple[int, int, int]:
    """``(d, s, t)`` with m s + n t = d = gcd(m, n) and 0 <= s < n/d."""
    d, s, _ = xgcd(m, n)
    s %= n // d
    t = (d - m * s) // n
    return d, s, t


def frac_power_char(chi: MultiplicativeCharacter, m: int) -> MultiplicativeCharacter:
    """A character whose m-th power is chi (the s/d recipe)."""
    if m < 1:
        raise DomainError("m must be positive")
    n = chi.field.order - 1
    d, s, _ = bezout_for_root(m, n)
    if chi.index % d:
        raise DomainError(f"gcd(m, q-1) = {d} does not divide k = {chi.index}")
    return MultiplicativeCharacter(chi.field, chi.alpha * Fraction(s, d))


def twisted_power_sum(F: Field, chi: MultiplicativeCharacter, a, m: int) -> complex:
    """sum over u != 0 of chi(u) psi(a u^m), summed directly."""
    n = F.order - 1
    a = F.code(a)
    if a == 0:
        return complex(n) if chi.is_trivial else 0j
    _, log, tr = F.tables()
    j = np.arange(n)
    shifted = tr[(m * j + int(log[a])) % n]
    return complex(np.exp(TWO_PI_I * (shifted / F.p + float(chi.alpha) * j)).sum())


def twisted_power_sum_predicted(F: Field, chi: MultiplicativeCharacter, a, m: int) -> complex:
    """The Gauss-sum expansion of :func:`twisted_power_sum`."""
    n = F.order - 1
    d = math.gcd(m, n)
    if chi.index % d:
        return 0j
    root = frac_power_char(chi, m)
    return sum((gauss_sum_fast(F, root * MultiplicativeCharacter(F, Fraction(b, d)), a)
                for b in range(d)), 0j)


# -- power systems -----------------------------------------------------------

def n_roots(F: Field, d: int, c: int) -> int:
    """Number of x in F with x^d = c."""
    if c == 0:
        return 1
    n = F.order - 1
    g = math.gcd(d, n)
    return g if F.pow(c, n // g) == 1 else 0


def _bezout_many(ms):
    """Coefficients s_i with sum m_i s_i = gcd(m_i)."""
    d, coeffs = ms[0], [1]
    for m in ms[1:]:
        g, u, v = xgcd(d, m)
        coeffs = [c * u for c in coeffs] + [v]
        d = g
    return d, coeffs


def count_power_system(F: Field, eqs, method: str = "formula") -> int:
    """#{x in F : x^{m_i} = a_i for all i}."""
    eqs = [(int(m), F.code(a)) for m, a in eqs]
    if not eqs:
        return F.order
    if any(m < 1 for m, _ in eqs):
        raise DomainError("exponents must be positive")
    if method == "brute":
        return count_power_system_brute(F, eqs)
    zeros = [a == 0 for _, a in eqs]
    if all(zeros):
        return 1
    if any(zeros):
        return 0
    ms = [m for m, _ in eqs]
    d, ss = _bezout_many(ms)
    primes = [m // d for m in ms]
    rhs = 1
    for (_, a), s in zip(eqs, ss):
        rhs = F.mul(rhs, F.pow(a, s))
    count = n_roots(F, d, rhs)
    if count == 0:
        return 0
    r = len(eqs)
    for i in range(r):
        lhs_exp = sum(primes[j] * ss[j] for j in range(r) if j != i)
        lhs = F.pow(eqs[i][1], lhs_exp)
        other = 1
        for j in range(r):
            if j != i:
                other = F.mul(other, F.pow(eqs[j][1], primes[i] * ss[j]))
        if not delta(F, lhs, other):
            return 0
    return count


def count_power_system_brute(F: Field, eqs) -> int:
    eqs = [(int(m), F.code(a)) for m, a in eqs]
    return sum(all(F.pow(x, m) == a for m, a in eqs) for x in range(F.order))


def delta(F: Field, x: int, y: int) -> int:
    return int(F.code(x) == F.code(y))


def delta_via_characters(F: Field, x, y) -> complex:
    """(1/q) * sum over all alpha in F of psi(alpha (x - y))."""
    diff = F.sub(F.code(x), F.code(y))
    prods = np.array([F.mul(alpha, diff) for alpha in range(F.order)], dtype=np.int64)
    return complex(np.exp(TWO_PI_I * F.trace_array(prods) / F.p).sum() / F.order)


def round_to_int(z: complex, tol: float = 1e-3, what: str = "value") -> int:
    r = round(z.real)
    err = abs(z - r)
    if err >= tol:
        raise RoundingError(f"{what} = {z} is {err:.3g} away from the nearest integer {r}")
    return int(r)


__all__ = [
    "MultiplicativeCharacter", "character", "all_characters", "char_eval", "char_at_log",
    "psi_eval", "gauss_sum", "gauss_sum_fast", "gauss_table", "jacobi", "jacobi0",
    "frac_power_char", "bezout_for_root", "twisted_power_sum", "twisted_power_sum_predicted",
    "n_roots", "count_power_system", "count_power_system_brute", "delta",
    "delta_via_characters", "round_to_int",
]
