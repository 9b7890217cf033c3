"""Finite fields F_{p^k} and extension towers F_{q^mu} over a base field.

Elements are plain integer *codes*.  For a field of order ``p**n`` the base-p
digits of a code are the element's coordinates over F_p.  A tower ``E`` of
degree ``mu`` over ``F`` groups those digits base ``|F|``::

    code_E(b_0 + b_1 t + ... + b_{mu-1} t^{mu-1}) = sum(code_F(b_i) * |F|**i)

so the elements of ``F`` sit inside ``E`` as exactly the codes ``< |F|``.
That identity embedding is what makes "evaluate a character of E at a curve
coefficient from F" unambiguous.

Discrete logarithms and traces are served from tables that are built once per
field, guarded by :data:`TABLE_CAP`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from ._arith import is_prime, prime_factors
from .errors import CapExceeded, DomainError

#: Largest field order for which log/exp/trace tables may be built.
TABLE_CAP = 1 << 22

_BLOCK = 4096


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]  # over the immediate base field, low-to-high, monic


class Field:
    """A finite field, either prime or a simple extension of ``base``."""

    def __init__(self, p: int, base: Field | None = None, modulus=None,
                 generator_rank: int = 0, table_cap: int | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.rel_degree = 1
            self.modulus = (0, 1)
            self.degree = 1
        else:
            self.modulus = tuple(modulus)
            self.rel_degree = len(self.modulus) - 1
            self.degree = base.degree * self.rel_degree
        self.order = p ** self.degree
        self._table_cap = table_cap
        self._tables = None
        self._trace_vec = None
        self.generator_rank = generator_rank
        self.generator = self._find_generator(generator_rank)

    # -- description -------------------------------------------------------

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.p, self.degree, self.modulus)

    @property
    def table_cap(self) -> int:
        return TABLE_CAP if self._table_cap is None else self._table_cap

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree})"

    def tower(self) -> list[Field]:
        """This field followed by its chain of base fields down to F_p."""
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.base
        return out

    def contains(self, sub: Field) -> bool:
        """True when ``sub`` is one of the fields this one was built over."""
        return any(f is sub for f in self.tower())

    # -- element plumbing --------------------------------------------------

    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            return self.embed(x)
        return FieldElement(self, int(x) % self.p)

    def from_code(self, code: int) -> FieldElement:
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self}")
        return FieldElement(self, code)

    def element(self, coeffs) -> FieldElement:
        """Element from its coefficient vector over the base (low-to-high)."""
        return FieldElement(self, self.from_coeffs([int(c) for c in coeffs]))

    def embed(self, x: FieldElement) -> FieldElement:
        if x.field is self:
            return x
        if not self.contains(x.field):
            raise DomainError(f"{x.field} is not a subfield of {self} in this tower")
        return FieldElement(self, x.code)

    def code(self, x) -> int:
        if isinstance(x, FieldElement):
            return self.embed(x).code
        return int(x)

    def digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            x, d = divmod(x, p)
            out.append(d)
        return out

    def from_digits(self, ds) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + int(d)
        return x

    def coeffs(self, x: int) -> list[int]:
        if self.base is None:
            return [x]
        bq = self.base.order
        out = []
        for _ in range(self.rel_degree):
            x, c = divmod(x, bq)
            out.append(c)
        return out

    def from_coeffs(self, cs) -> int:
        if self.base is None:
            return cs[0] % self.p
        bq = self.base.order
        x = 0
        for c in reversed(cs):
            x = x * bq + c
        return x

    # -- scalar arithmetic on codes ---------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.degree == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, w = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.degree == 1:
            return (-a) % p
        if p == 2:
            return a
        out, w = 0, 1
        while a:
            a, da = divmod(a, p)
            out += ((-da) % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return a * b % self.p
        if self._tables is not None:
            exp, log, _ = self._tables
            return int(exp[(log[a] + log[b]) % (self.order - 1)])
        return self._poly_mul(a, b)

    def _poly_mul(self, a: int, b: int) -> int:
        K = self.base
        mu = self.rel_degree
        A, B = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * mu - 1)
        for i, ai in enumerate(A):
            if ai:
                for j, bj in enumerate(B):
                    if bj:
                        prod[i + j] = K.add(prod[i + j], K.mul(ai, bj))
        f = self.modulus
        for deg in range(2 * mu - 2, mu - 1, -1):
            c = prod[deg]
            if c:
                for i in range(mu):
                    if f[i]:
                        prod[deg - mu + i] = K.sub(prod[deg - mu + i], K.mul(c, f[i]))
                prod[deg] = 0
        return self.from_coeffs(prod[:mu])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.degree == 1:
            return pow(a, e, self.p)
        if self._tables is not None and self.degree > 1:
            exp, log, _ = self._tables
            return int(exp[(int(log[a]) * e) % (self.order - 1)])
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def abs_trace(self, a: int) -> int:
        """x + x^p + ... + x^(p^(n-1)), computed by repeated Frobenius."""
        acc, y = 0, a
        for _ in range(self.degree):
            acc = self.add(acc, y)
            y = self.frobenius(y)
        if acc >= self.p:
            raise AssertionError("trace left the prime field")
        return acc

    # -- generator ---------------------------------------------------------

    def is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.order - 1
        return all(self.pow(a, n // r) != 1 for r in prime_factors(n))

    def _find_generator(self, rank: int) -> int:
        seen = 0
        for c in range(1, self.order):
            if self.is_primitive(c):
                if seen == rank:
                    return c
                seen += 1
        raise DomainError(f"{self} has fewer than {rank + 1} primitive elements")

    # -- tables ------------------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self._tables is not None

    def tables(self):
        """``(exp, log, trace_of_power)`` arrays, built on first use.

        ``exp[j]`` is the code of omega**j, ``log[code]`` its exponent (``-1``
        at 0) and ``trace_of_power[j]`` the absolute trace of omega**j.
        """
        if self._tables is None:
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        Q, n, p = self.order, self.degree, self.p
        if Q > self.table_cap:
            raise CapExceeded(f"{self} has {Q} elements, above the table cap {self.table_cap}")
        tvec = np.array([self.abs_trace(p ** r) for r in range(n)], dtype=np.int64)
        M = np.array([self.digits(self.mul(self.generator, p ** r)) for r in range(n)],
                     dtype=np.int64).T
        B = min(Q - 1, _BLOCK)
        V = np.empty((n, B), dtype=np.int64)
        v = np.array(self.digits(1), dtype=np.int64)
        for j in range(B):
            V[:, j] = v
            v = M @ v % p
        MB = _matpow_mod(M, B, p)
        weights = np.array([p ** r for r in range(n)], dtype=np.int64)
        exp = np.empty(Q - 1, dtype=np.int64)
        tr = np.empty(Q - 1, dtype=np.int64)
        pos = 0
        while pos < Q - 1:
            take = min(B, Q - 1 - pos)
            exp[pos:pos + take] = (weights @ V)[:take]
            tr[pos:pos + take] = (tvec @ V % p)[:take]
            pos += take
            V = MB @ V % p
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(Q - 1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError(f"generator of {self} is not primitive")
        return exp, log, tr

    def log(self, a: int) -> int:
        if a == 0:
            raise DomainError("discrete log of 0 is undefined")
        if self.degree == 1 and self.order > self.table_cap:
            raise CapExceeded(f"{self} above the table cap {self.table_cap}")
        return int(self.tables()[1][a])

    def exp(self, j: int) -> int:
        return int(self.tables()[0][j % (self.order - 1)])

    # -- vectorised helpers ------------------------------------------------

    def trace_vector(self) -> np.ndarray:
        """Traces of the F_p basis elements p**r; Tr is linear in the digits."""
        if self._trace_vec is None:
            self._trace_vec = np.array([self.abs_trace(self.p ** r) for r in range(self.degree)],
                                       dtype=np.int64)
        return self._trace_vec

    def trace_array(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        p = self.p
        out = np.zeros_like(codes)
        rest = codes.copy()
        for t in self.trace_vector():
            rest, d = np.divmod(rest, p)
            out += t * d
        return out % p

    def neg_arrays(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        if self.degree == 1:
            return (-a) % p
        if p == 2:
            return a.copy()
        out = np.zeros_like(a)
        w = 1
        for _ in range(self.degree):
            a, da = np.divmod(a, p)
            out += ((-da) % p) * w
            w *= p
        return out

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if self.degree == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.degree):
            a, da = np.divmod(a, p)
            b, db = np.divmod(b, p)
            out += ((da + db) % p) * w
            w *= p
        return out


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Convenience wrapper around a code; the engine itself works on codes."""

    field: Field
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            return self.field.code(other)
        return self.field(other).code

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, (FieldElement, int)):
            try:
                return self.code == self._other(other)
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.code)

    def __repr__(self):
        F = self.field
        if F.base is None:
            return f"{self.code}"
        return f"{F!r}{self.coeffs()}"


def _matpow_mod(M: np.ndarray, e: int, p: int) -> np.ndarray:
    R = np.eye(M.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            R = R @ M % p
        M = M @ M % p
        e >>= 1
    return R


# -- polynomials over a base field (lists of codes, low-to-high) ------------

def _ptrim(f):
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _pmod(K: Field, a, f):
    a = list(a)
    df = len(f) - 1
    lead_inv = K.inv(f[-1])
    for deg in range(len(a) - 1, df - 1, -1):
        c = a[deg]
        if c:
            c = K.mul(c, lead_inv)
            for i in range(df + 1):
                a[deg - df + i] = K.sub(a[deg - df + i], K.mul(c, f[i]))
    return _ptrim(a[:df] if df > 0 else [0])


def _pmulmod(K: Field, a, b, f):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = K.add(prod[i + j], K.mul(ai, bj))
    return _pmod(K, prod, f)


def _ppowmod(K: Field, a, e: int, f):
    result = [1]
    while e:
        if e & 1:
            result = _pmulmod(K, result, a, f)
        a = _pmulmod(K, a, a, f)
        e >>= 1
    return result


def _pgcd(K: Field, a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b != [0]:
        a, b = b, _pmod(K, a, b)
    return a


def is_irreducible(K: Field, f) -> bool:
    """Rabin's test for a monic polynomial ``f`` (codes of K, low-to-high)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    q = K.order
    x = [0, 1]
    # frob[i] = x^(q^i) mod f
    frob = [x]
    for _ in range(n):
        frob.append(_ppowmod(K, frob[-1], q, f))
    if _ptrim(list(frob[n])) != _pmod(K, x, f):
        return False
    for r in prime_factors(n):
        h = frob[n // r]
        diff = [K.sub(h[i] if i < len(h) else 0, x[i] if i < 2 else 0)
                for i in range(max(len(h), 2))]
        if len(_pgcd(K, f, _ptrim(diff))) != 1:
            return False
    return True


def smallest_irreducible(K: Field, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree over K.

    Candidates are ordered by their coefficient list ``(c_0, ..., c_{k-1})``
    compared left to right, i.e. the constant term is the most significant.
    """
    for cs in itertools.product(range(K.order), repeat=degree):
        f = list(cs) + [1]
        if is_irreducible(K, f):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@functools.lru_cache(maxsize=None)
def _prime_field(p: int, generator_rank: int = 0) -> Field:
    return Field(p, generator_rank=generator_rank)


def make_field(p: int, k: int = 1, generator_rank: int = 0) -> Field:
    """F_{p^k} with the deterministic modulus and generator."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return _prime_field(p, generator_rank)
    return make_extension(_prime_field(p), k, generator_rank)


@functools.lru_cache(maxsize=None)
def make_extension(F: Field, mu: int, generator_rank: int = 0) -> Field:
    """Degree-``mu`` tower over ``F``; elements of F keep their codes."""
    if mu < 1:
        raise DomainError(f"extension degree must be >= 1, got {mu}")
    if mu == 1:
        if generator_rank == F.generator_rank:
            return F
        return Field(F.p, F.base, F.modulus if F.base else None, generator_rank=generator_rank)
    if F.order > 1 and F.order <= F.table_cap and F.degree > 1:
        F.tables()  # base arithmetic through logs
    return Field(F.p, F, smallest_irreducible(F, mu), generator_rank=generator_rank)


def field_of_order(q: int, generator_rank: int = 0) -> Field:
    from ._arith import prime_power

    pk = prime_power(q)
    if pk is None:
        raise DomainError(f"{q} is not a prime power")
    return make_field(*pk, generator_rank=generator_rank)


def generator(F: Field) -> FieldElement:
    return FieldElement(F, F.generator)


def discrete_log(F: Field, x) -> int:
    code = F.code(x)
    if code == 0:
        raise DomainError("discrete log of 0 is undefined")
    return F.log(code)


def abs_trace(F: Field, x) -> FieldElement:
    """Absolute trace to the prime field, returned as an element of F_p."""
    return FieldElement(_prime_field(F.p), F.abs_trace(F.code(x)))
