"""Trinomial plane curves: parsing, irreducibility, the five normal forms, genus."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field

from . import polygon
from ._arith import gcd_all, p_part, prime_power
from .errors import DomainError, ParseError
from .gf import Field, make_field

__all__ = [
    "Trinomial", "CaseForm", "Transform", "GenusReport", "parse_trinomial", "parse_field",
    "is_abs_irreducible", "classify", "case_matrix", "genus", "p_part", "CASE_PARAM_NAMES",
]

CASE_PARAM_NAMES = {
    1: ("m", "n"),
    2: ("m", "n1", "n"),
    3: ("m1", "n1", "n"),
    4: ("m1", "n1", "m", "n"),
    5: ("m1", "n1", "m", "n"),
}


# -- representation ----------------------------------------------------------

@dataclass(frozen=True)
class Trinomial:
    """Three nonzero monomials ``coeff * x^ex * y^ey`` over ``field``.

    ``removed`` is the common monomial x^a y^b divided out on construction.
    """

    field: Field
    monomials: tuple[tuple[int, int, int], ...]  # (ex, ey, coefficient code)
    removed: tuple[int, int] = (0, 0)
    notes: tuple[str, ...] = ()

    @classmethod
    def build(cls, F: Field, terms, notes=()) -> Trinomial:
        """Combine like terms, drop common monomials and validate."""
        acc: dict[tuple[int, int], int] = {}
        for ex, ey, c in terms:
            if ex < 0 or ey < 0:
                raise ParseError("exponents must be nonnegative")
            key = (int(ex), int(ey))
            acc[key] = F.add(acc.get(key, 0), F.code(c))
        live = [(ex, ey, c) for (ex, ey), c in acc.items() if c != 0]
        if len(live) != 3:
            raise ParseError(f"need exactly three distinct monomials with nonzero "
                             f"coefficients, got {len(live)}")
        a = min(m[0] for m in live)
        b = min(m[1] for m in live)
        mons = tuple(sorted(((ex - a, ey - b, c) for ex, ey, c in live),
                            key=lambda m: (-(m[0] + m[1]), -m[0], -m[1])))
        return cls(F, mons, (a, b), tuple(notes))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def exponents(self) -> list[tuple[int, int]]:
        return [(ex, ey) for ex, ey, _ in self.monomials]

    @property
    def degree(self) -> int:
        return max(ex + ey for ex, ey, _ in self.monomials)

    def homogenized(self) -> list[tuple[int, int, int, int]]:
        D = self.degree
        return [(ex, ey, D - ex - ey, c) for ex, ey, c in self.monomials]

    def newton_polygon(self) -> polygon.LatticePolygon:
        return polygon.newton_polygon(self.exponents)

    def __str__(self):
        parts = [_render_term(self.field, c, ex, ey) for ex, ey, c in self.monomials]
        return " + ".join(parts) + f" over {field_name(self.field)}"

    def to_record(self) -> dict:
        return {
            "p": self.field.p,
            "k": self.field.degree,
            "monomials": [{"ex": ex, "ey": ey, "coeff": coeff_text(self.field, c)}
                          for ex, ey, c in self.monomials],
        }


def field_name(F: Field) -> str:
    return f"GF({F.p})" if F.degree == 1 else f"GF({F.p}^{F.degree})"


def coeff_text(F: Field, c: int) -> str | int:
    """Integers for the prime subfield, ``g^j`` otherwise."""
    if c < F.p:
        return c
    return f"g^{F.log(c)}"


def _render_term(F: Field, c: int, ex: int, ey: int) -> str:
    vars_ = []
    if ex:
        vars_.append("x" if ex == 1 else f"x^{ex}")
    if ey:
        vars_.append("y" if ey == 1 else f"y^{ey}")
    ct = coeff_text(F, c)
    if ct == 1 and vars_:
        return "*".join(vars_)
    return "*".join([str(ct)] + vars_)


# -- parsing -----------------------------------------------------------------

_FIELD_RE = re.compile(r"^\s*GF\s*\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$", re.IGNORECASE)
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xyzg])|(\^)|(\*)|(\+)|(-))")


def parse_field(text: str) -> Field:
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"cannot read field {text!r}; expected GF(q) or GF(p^k)")
    a, k = int(m.group(1)), m.group(2)
    if k is not None:
        p, k = a, int(k)
        try:
            return make_field(p, k)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc
    pk = prime_power(a)
    if pk is None:
        raise ParseError(f"{a} is not a prime power")
    return make_field(*pk)


def _tokenize(expr: str):
    pos, out = 0, []
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN_RE.match(expr, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {expr[pos:pos + 1]!r} at position {pos}")
        num, var, caret, star, plus, minus = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("var", var))
        elif caret:
            out.append(("^", None))
        elif star:
            out.append(("*", None))
        elif plus:
            out.append(("+", None))
        else:
            out.append(("-", None))
        pos = m.end()
    return out


def _parse_expr(F: Field, expr: str):
    toks = _tokenize(expr)
    if not toks:
        raise ParseError("empty expression")
    i = 0
    terms = []

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def exponent():
        nonlocal i
        if peek()[0] != "^":
            return 1
        i += 1
        sign = 1
        if peek()[0] == "-":
            sign = -1
            i += 1
        kind, val = peek()
        if kind != "num":
            raise ParseError("expected an integer after '^'")
        i += 1
        return sign * val

    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if peek()[0] == "-" else 1
        i += 1
    while True:
        coeff = F(sign).code
        ex = ey = ez = 0
        seen = False
        while True:
            kind, val = peek()
            if kind == "num":
                i += 1
                coeff = F.mul(coeff, F(val).code)
            elif kind == "var":
                i += 1
                e = exponent()
                if val == "g":
                    coeff = F.mul(coeff, F.pow(F.generator, e))
                elif e < 0:
                    raise ParseError(f"negative exponent on {val}")
                elif val == "x":
                    ex += e
                elif val == "y":
                    ey += e
                else:
                    ez += e
            else:
                raise ParseError(f"expected a coefficient or variable near token {i}")
            seen = True
            if peek()[0] == "*":
                i += 1
                continue
            if peek()[0] in ("num", "var"):
                continue
            break
        if not seen:
            raise ParseError("empty term")
        terms.append((ex, ey, ez, coeff))
        kind, _ = peek()
        if kind is None:
            break
        if kind not in ("+", "-"):
            raise ParseError(f"expected '+' or '-' near token {i}")
        sign = -1 if kind == "-" else 1
        i += 1
    return terms


def _dehomogenize(terms, notes: list):
    if not any(ez for _, _, ez, _ in terms):
        return [(ex, ey, c) for ex, ey, _, c in terms]
    degrees = {ex + ey + ez for ex, ey, ez, _ in terms}
    if len(degrees) != 1:
        raise ParseError("input mentions z but is not homogeneous")
    notes.append("dehomogenized at z=1")
    return [(ex, ey, c) for ex, ey, _, c in terms]


def parse_trinomial(source) -> Trinomial:
    """Read a curve from text (``... over GF(q)``) or a structured record."""
    if isinstance(source, Trinomial):
        return source
    if isinstance(source, dict):
        return _parse_record(source)
    if not isinstance(source, str):
        raise ParseError(f"cannot parse {type(source).__name__}")
    parts = re.split(r"\bover\b", source, flags=re.IGNORECASE)
    if len(parts) != 2:
        raise ParseError("expected '<polynomial> over GF(q)'")
    expr, ftext = parts
    F = parse_field(ftext)
    expr = re.sub(r"=\s*0\s*$", "", expr.strip())
    notes: list[str] = []
    terms = _dehomogenize(_parse_expr(F, expr), notes)
    return Trinomial.build(F, terms, notes)


def _parse_record(rec: dict) -> Trinomial:
    try:
        p, k = int(rec["p"]), int(rec.get("k", 1))
        mons = rec["monomials"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"record needs p, k and monomials: {exc}") from exc
    try:
        F = make_field(p, k)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    terms = []
    for mrec in mons:
        try:
            ex, ey, ez = int(mrec["ex"]), int(mrec["ey"]), int(mrec.get("ez", 0))
            raw = mrec.get("coeff", 1)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad monomial entry {mrec!r}") from exc
        c = _coeff_from_record(F, raw)
        if c == 0:
            raise ParseError(f"zero coefficient in {mrec!r}")
        terms.append((ex, ey, ez, c))
    notes: list[str] = []
    return Trinomial.build(F, _dehomogenize(terms, notes), notes)


def _coeff_from_record(F: Field, raw) -> int:
    if isinstance(raw, bool):
        raise ParseError("boolean coefficient")
    if isinstance(raw, int):
        return F(raw).code
    if isinstance(raw, list):
        if len(raw) != F.degree:
            raise ParseError(f"coefficient vector needs {F.degree} entries")
        return F.from_digits([int(c) % F.p for c in raw])
    if isinstance(raw, str):
        terms = _parse_expr(F, raw)
        if len(terms) != 1 or terms[0][:3] != (0, 0, 0):
            raise ParseError(f"coefficient {raw!r} must be a constant")
        return terms[0][3]
    raise ParseError(f"cannot read coefficient {raw!r}")


# -- irreducibility ----------------------------------------------------------

def _reduce(points):
    a = min(pt[0] for pt in points)
    b = min(pt[1] for pt in points)
    return [(x - a, y - b) for x, y in points]


def _homogeneous_exponents(t: Trinomial):
    D = t.degree
    return [(ex, ey, D - ex - ey) for ex, ey in t.exponents]


def _charts(t: Trinomial):
    """Every affine chart obtained by permuting (x, y, z) and setting the third to 1."""
    H = _homogeneous_exponents(t)
    for perm in itertools.permutations(range(3)):
        aff = _reduce([(h[perm[0]], h[perm[1]]) for h in H])
        yield perm, aff


def is_abs_irreducible(t: Trinomial) -> tuple[bool, str]:
    """Criterion for alpha x^a + beta x^b y^c + gamma y^d, found in some chart."""
    p = t.p
    for _, aff in _charts(t):
        for i, j, k in itertools.permutations(range(3)):
            (a, ya), (b, c), (xd, d) = aff[i], aff[j], aff[k]
            if ya != 0 or xd != 0:
                continue
            if len({(a, 0), (b, c), (0, d)}) != 3:
                continue
            if a * c + b * d == a * d:
                return False, "reducible: ac+bd = ad"
            if gcd_all(a, b, c, d) % p == 0:
                return False, f"reducible: p={p} divides gcd(a,b,c,d)"
            return True, "ac+bd != ad and p does not divide gcd(a,b,c,d)"
    raise DomainError("support does not match the three-point template in any chart")


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Transform:
    """How the normal form was reached from the input curve.

    ``permutation[i]`` is the input coordinate (0=x, 1=y, 2=z) that plays the
    role of the i-th normal-form coordinate; ``roles`` lists which input
    monomial (by index in ``Trinomial.monomials``) became the k1-term, the
    k2-term and the reference term; ``scale`` is the coefficient divided out.
    """

    permutation: tuple[int, int, int]
    roles: tuple[int, int, int]
    scale: int
    removed_input: tuple[int, int]

    def describe(self) -> dict:
        names = "xyz"
        return {
            "variables": {names[i]: names[self.permutation[i]] for i in range(3)},
            "roles": {"k1": self.roles[0], "k2": self.roles[1], "reference": self.roles[2]},
            "scale_code": self.scale,
            "removed_monomial": list(self.removed_input),
        }


@dataclass(frozen=True)
class CaseForm:
    field: Field
    case_id: int
    params: tuple[int, ...]
    k1: int
    k2: int
    transform: Transform | None = dc_field(default=None, compare=False)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def param_names(self) -> tuple[str, ...]:
        return CASE_PARAM_NAMES[self.case_id]

    def named_params(self) -> dict[str, int]:
        return dict(zip(self.param_names, self.params))

    def terms(self) -> list[tuple[int, int, int]]:
        """Normal-form monomials as (ex, ey, coefficient code): k1-term, k2-term, reference."""
        c, P = self.case_id, self.params
        k1, k2 = self.k1, self.k2
        if c == 1:
            m, n = P
            return [(m, 0, k1), (0, n, k2), (0, 0, 1)]
        if c == 2:
            m, n1, n = P
            return [(m, 0, k1), (0, n1, k2), (0, n, 1)]
        if c == 3:
            m1, n1, n = P
            return [(m1, n1, k1), (0, n, k2), (0, 0, 1)]
        if c == 4:
            m1, n1, m, n = P
            return [(m1, n1, k1), (m, n, k2), (0, 0, 1)]
        m1, n1, m, n = P
        return [(m, 0, k1), (0, n, k2), (m1, n1, 1)]

    def normalized(self) -> Trinomial:
        return Trinomial.build(self.field, self.terms(), ("normal form",))

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return case_matrix(self)[0]

    @property
    def twist(self) -> tuple[int, int]:
        return case_matrix(self)[1]

    @property
    def exclusion_moduli(self) -> tuple[int, int, int]:
        return case_matrix(self)[2]

    @property
    def twist_labels(self) -> tuple[str, str]:
        return ("k2^-1", "k1^-1") if self.case_id in (4, 5) else ("k1^-1", "k2^-1")

    infinity_rule = "scan of the line z=0 of the homogenized normal form"

    def __str__(self):
        return str(self.normalized())


def _match(case_id, e1, e2, e3):
    """Parameters if (k1-term, k2-term, reference) exponents fit the case, else None."""
    (a1, b1), (a2, b2), (a3, b3) = e1, e2, e3
    if case_id == 1:
        if (b1, a2, a3, b3) == (0, 0, 0, 0) and 0 < a1 <= b2:
            return (a1, b2)
    elif case_id == 2:
        m, n1, n = a1, b2, b3
        if (b1, a2, a3) == (0, 0, 0) and min(m, n1, n) > 0 and n > m and n > n1:
            return (m, n1, n)
    elif case_id == 3:
        m1, n1, n = a1, b1, b2
        if (a2, a3, b3) == (0, 0, 0) and min(m1, n1, n) > 0 and n > m1 + n1:
            return (m1, n1, n)
    elif case_id == 4:
        m1, n1, m, n = a1, b1, a2, b2
        if (a3, b3) == (0, 0) and min(m1, n1, m, n) > 0 and (m1, n1) != (m, n) \
                and m1 + n1 >= m + n and n1 * m >= n * m1:
            return (m1, n1, m, n)
    elif case_id == 5:
        m, n, m1, n1 = a1, b2, a3, b3
        if (b1, a2) == (0, 0) and min(m1, n1, m, n) > 0 and m1 + n1 > m and m1 + n1 > n \
                and n1 >= m1 and (m1 != n1 or n >= m):
            return (m1, n1, m, n)
    return None


def classify(t: Trinomial) -> CaseForm:
    """Normal form with the lowest case id, then smallest exponents, then coefficients."""
    ok, reason = is_abs_irreducible(t)
    if not ok:
        raise DomainError(reason)
    F = t.field
    coeffs = [c for _, _, c in t.monomials]
    best = None
    for perm, aff in _charts(t):
        for roles in itertools.permutations(range(3)):
            e1, e2, e3 = (aff[r] for r in roles)
            for case_id in range(1, 6):
                params = _match(case_id, e1, e2, e3)
                if params is None:
                    continue
                scale = coeffs[roles[2]]
                k1 = F.div(coeffs[roles[0]], scale)
                k2 = F.div(coeffs[roles[1]], scale)
                key = (case_id, params, k1, k2)
                if best is None or key < best[0]:
                    best = (key, Transform(perm, roles, scale, t.removed))
                break
    if best is None:
        raise DomainError("no normal form found")
    (case_id, params, k1, k2), tr = best
    cf = CaseForm(F, case_id, params, k1, k2, tr)
    d = gcd_all(*params)
    if d % F.p == 0:
        raise DomainError(f"p={F.p} divides the gcd of all exponents")
    return cf


def case_matrix(cf: CaseForm):
    """``(A, twist, exclusion_moduli)`` for the character congruence system.

    ``twist`` holds the field codes (t1, t2) multiplying chi_{xi_1} and
    chi_{xi_2}.  The exclusion moduli are the lattice lengths of the Newton
    triangle's edges: gcd of column 1, of column 2 and of their difference.
    """
    c, P = cf.case_id, cf.params
    F = cf.field
    if c == 1:
        m, n = P
        A = ((m, 0), (0, n))
    elif c == 2:
        m, n1, n = P
        A = ((m, 0), (n, n - n1))
    elif c == 3:
        m1, n1, n = P
        A = ((m1, 0), (n1, n))
    elif c == 4:
        m1, n1, m, n = P
        A = ((m, m1), (n, n1))
    else:
        m1, n1, m, n = P
        A = ((m1, m1 - m), (n1 - n, n1))
    inv1, inv2 = F.inv(cf.k1), F.inv(cf.k2)
    twist = (inv2, inv1) if c in (4, 5) else (inv1, inv2)
    (a11, a12), (a21, a22) = A
    moduli = (math.gcd(a11, a21), math.gcd(a12, a22), math.gcd(a11 - a12, a21 - a22))
    return A, twist, moduli


def det2(A) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


# -- genus -------------------------------------------------------------------

@dataclass(frozen=True)
class GenusReport:
    genus: int
    i_C: int
    det: int
    d: int
    d1: int
    d2: int
    d3: int
    p_parts: dict

    def to_dict(self) -> dict:
        return {
            "genus": self.genus, "i_C": self.i_C, "det": self.det,
            "d": self.d, "d1": self.d1, "d2": self.d2, "d3": self.d3,
            "p_parts": dict(self.p_parts),
        }


def genus(cf: CaseForm) -> GenusReport:
    A, _, (d1, d2, d3) = case_matrix(cf)
    p = cf.p
    d = gcd_all(*A[0], *A[1])
    if d % p == 0:
        raise DomainError(f"p={p} divides d={d}")
    det = abs(det2(A))
    parts = {"det": p_part(det, p), "d1": p_part(d1, p), "d2": p_part(d2, p), "d3": p_part(d3, p)}
    i_c = polygon.i_of_curve(cf)
    if i_c == 0:
        g = 0
    else:
        twice = parts["det"] - parts["d1"] - parts["d2"] - parts["d3"] + 2
        if twice < 0 or twice % 2:
            raise DomainError(f"genus formula gave {twice}/2 for {cf}")
        g = twice // 2
    return GenusReport(g, i_c, det, d, d1, d2, d3, parts)
