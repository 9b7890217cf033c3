"""Maximality certificates over F_{q^2} and higher even-degree extensions."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ._arith import prime_power
from .curve import CaseForm, Trinomial, classify, genus
from .errors import CapExceeded, DomainError, ParseError, TrizetaError
from .gf import make_field
from . import zeta
from .zeta import LPolynomial, minimal_negative_exponent

__all__ = [
    "MaximalityVerdict", "minimal_negative_exponent", "maximal_over_square",
    "maximal_extension_degrees", "covering_degree", "homogeneous_matrix", "scan",
    "scan_family", "family_items",
]

GENUS_ZERO = "genus-zero"
MAXIMAL = "maximal-sufficient"
NOT_MAXIMAL = "not-maximal-necessary-failed"
INCONCLUSIVE = "inconclusive"


@dataclass
class MaximalityVerdict:
    status: str
    genus: int
    m_C: int | None
    witness: dict
    counts: dict | None = None

    def to_dict(self) -> dict:
        d = {"verdict": self.status, "genus": self.genus, "m_C": self.m_C, "witness": self.witness}
        if self.counts is not None:
            d["counts"] = self.counts
        return d


def maximal_over_square(cf: CaseForm, confirm: bool = True, count_cap: int | None = None,
                        ) -> MaximalityVerdict:
    """Divisibility verdict for maximality over F_{q^2}, with optional point counts."""
    g = genus(cf).genus
    q = cf.q
    if g == 0:
        return MaximalityVerdict(GENUS_ZERO, 0, None, {"q_plus_1": q + 1})
    m = zeta.m_of_curve(cf)
    witness = {
        "m_C": m,
        "q_plus_1": q + 1,
        "q2_minus_1": q * q - 1,
        "m_C_divides_q_plus_1": (q + 1) % m == 0,
        "m_C_divides_q2_minus_1": (q * q - 1) % m == 0,
    }
    if witness["m_C_divides_q_plus_1"]:
        status = MAXIMAL
    elif not witness["m_C_divides_q2_minus_1"]:
        status = NOT_MAXIMAL
    else:
        status = INCONCLUSIVE
    counts = None
    if confirm:
        counts = square_counts(cf, g, count_cap)
    return MaximalityVerdict(status, g, m, witness, counts)


def square_counts(cf: CaseForm, g: int, count_cap: int | None = None) -> dict | None:
    """Hasse-Weil target and whatever point counts over F_{q^2} fit the caps."""
    q = cf.q
    out = {"hasse_weil": q * q + 1 + 2 * g * q}
    plane = cf.normalized()
    try:
        out["plane_projective"] = zeta.brute_count(plane, 2, "projective", cap=count_cap)
        if zeta.is_nondegenerate(plane):
            out["toric_model"] = zeta.toric_count(plane, 2, cap=count_cap)
    except CapExceeded:
        pass
    try:
        out["model_from_L"] = zeta.l_polynomial(cf).model_count(2)
    except (CapExceeded, DomainError):
        pass
    return out


def maximal_extension_degrees(L: LPolynomial, bound: int) -> list[int]:
    """All n <= bound for which every factor satisfies mu = 2 gcd(n, mu)."""
    if bound < 1:
        return []
    if not L.factors:
        if L.degree:
            raise DomainError("L-polynomial carries no factor data")
        return list(range(1, bound + 1))
    for f in L.factors:
        if f.exact is None or f.mu % 2 or f.exact != L.q ** (f.mu // 2):
            raise DomainError(f"factor for orbit {f.orbit.rep} is not of the form 1 + q^nu U^(2 nu)")
    mus = sorted({f.mu for f in L.factors})
    return [n for n in range(1, bound + 1) if all(mu == 2 * math.gcd(n, mu) for mu in mus)]


def _inverse_3x3(A) -> list[list[Fraction]]:
    (a, b, c), (d, e, f), (g, h, i) = A
    cof = [
        [e * i - f * h, -(d * i - f * g), d * h - e * g],
        [-(b * i - c * h), a * i - c * g, -(a * h - b * g)],
        [b * f - c * e, -(a * f - c * d), a * e - b * d],
    ]
    det = a * cof[0][0] + b * cof[0][1] + c * cof[0][2]
    if det == 0:
        raise DomainError("matrix is singular")
    # inverse = adjugate / det, adjugate = transpose of the cofactor matrix
    return [[Fraction(cof[j][r], det) for j in range(3)] for r in range(3)]


def covering_degree(A) -> int:
    """Least n making two columns of n A^{-1} integral."""
    inv = _inverse_3x3([[int(x) for x in row] for row in A])
    col_den = [math.lcm(*(inv[r][c].denominator for r in range(3))) for c in range(3)]
    return min(math.lcm(col_den[i], col_den[j]) for i, j in itertools.combinations(range(3), 2))


def homogeneous_matrix(cf: CaseForm) -> list[list[int]]:
    """Rows: homogeneous exponents of the k1-term, the k2-term and the reference term."""
    terms = cf.terms()
    D = max(a + b for a, b, _ in terms)
    return [[a, b, D - a - b] for a, b, _ in terms]


# -- scanning ----------------------------------------------------------------

def _prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if prime_power(q) is not None]


def _qs(spec) -> list[int]:
    if isinstance(spec, list):
        return [int(q) for q in spec]
    if isinstance(spec, dict):
        return _prime_powers(int(spec["min"]), int(spec["max"]))
    if isinstance(spec, int):
        return [spec]
    raise ParseError(f"cannot read q range {spec!r}")


def family_items(family: dict):
    """Yield (case_id, params, coeffs, q) in a fixed order."""
    from .curve import CASE_PARAM_NAMES

    try:
        case_id = int(family["case"])
        names = CASE_PARAM_NAMES[case_id]
        params = family["params"]
        ranges = []
        for name in names:
            spec = params[name]
            if isinstance(spec, list):
                lo, hi = spec
                ranges.append(range(int(lo), int(hi) + 1))
            else:
                ranges.append([int(spec)])
        coeffs = tuple(family.get("coeffs", [1, 1]))
        qs = _qs(family["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad family description: {exc!r}") from exc
    for combo in itertools.product(*ranges):
        for q in qs:
            yield case_id, combo, coeffs, q


def _template(case_id: int, params, k1, k2):
    return CaseForm.terms(CaseForm(None, case_id, tuple(params), k1, k2))


def scan_item(item, extension_bound: int = 12, confirm: bool = False,
              count_cap: int | None = None) -> dict:
    case_id, params, coeffs, q = item
    rec: dict = {"curve": None, "case": None, "q": q, "genus": None, "m_C": None,
                 "verdict": None, "min_maximal_extension": None}
    try:
        pk = prime_power(q)
        if pk is None:
            raise DomainError(f"{q} is not a prime power")
        F = make_field(*pk)
        terms = [(a, b, F.code(_coeff(F, c))) for a, b, c in _template(case_id, params, *coeffs)]
        t = Trinomial.build(F, terms)
        rec["curve"] = str(t)
        cf = classify(t)
        rec["case"] = cf.case_id
        verdict = maximal_over_square(cf, confirm=confirm, count_cap=count_cap)
        rec["genus"] = verdict.genus
        rec["m_C"] = verdict.m_C
        rec["verdict"] = verdict.status
        if verdict.counts is not None:
            rec["counts"] = verdict.counts
        if verdict.genus > 0 and minimal_negative_exponent(verdict.m_C, q) is not None:
            L = zeta.l_polynomial(cf)
            degs = maximal_extension_degrees(L, extension_bound)
            rec["min_maximal_extension"] = degs[0] if degs else None
    except (TrizetaError, ValueError) as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def _coeff(F, c):
    if isinstance(c, str):
        from .curve import _coeff_from_record

        return _coeff_from_record(F, c)
    return F(int(c))


def scan(family: dict, extension_bound: int = 12, confirm: bool = False,
         count_cap: int | None = None, jobs: int = 1):
    """Stream one record per (parameters, q) of the family, in a fixed order."""
    items = list(family_items(family))
    if jobs <= 1 or len(items) < 2:
        for item in items:
            yield scan_item(item, extension_bound, confirm, count_cap)
        return
    args = [(it, extension_bound, confirm, count_cap) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_scan_star, args, chunksize=max(1, len(args) // (4 * jobs)))


def _scan_star(args):
    return scan_item(*args)


def scan_family(family: dict, **kw) -> list[dict]:
    return list(scan(family, **kw))
