"""Finite-field towers F_p < F_q < F_{q^s} with exact table-driven arithmetic.

Every field stores its elements as dense integer indices 0 .. order-1.  A
prime field indexes an element by its least nonnegative residue.  An
extension of degree d over a base of order B indexes the coefficient vector
(c_0, ..., c_{d-1}) (lowest degree first) as sum(idx(c_i) * B**i), so index 0
is always zero and index 1 is always one, in every field of the tower.

Multiplication, inversion and powering run through discrete log/exp tables
for the canonical generator; addition uses a digitwise table built once at
construction.  All tables are immutable after ``__init__``, so field handles
are safe to share across threads.

Two element orders coexist:

* the dense coefficient-vector order above, used for deterministic scans
  (irreducible-modulus search, generator search);
* the canonical display order omega_0 = 0, omega_i = g**(i-1) for the
  canonical generator g, used wherever a "fixed listing of the field"
  is part of a contract (symbol indexing, element streams).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import MixedFieldError, ParameterError

__all__ = [
    "FiniteField",
    "PrimeField",
    "ExtField",
    "Elem",
    "FieldTower",
    "build_tower",
    "prime_field",
    "extension_field",
    "smallest_irreducible",
    "rel_trace",
    "quad_char",
    "primitive_element",
    "enumerate_field",
    "elem_to_data",
    "elem_from_data",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _min_dtype(order: int):
    return np.int16 if order < 2**15 else np.int32


class FiniteField:
    """Common interface of :class:`PrimeField` and :class:`ExtField`.

    Index-level operations (``add``, ``mul``, ...) take and return dense
    indices; :class:`Elem` wraps them with operator syntax.
    """

    # populated by subclasses
    p: int
    order: int
    degree: int
    base: "FiniteField | None"
    modulus: tuple[int, ...] | None

    # -- scalar index arithmetic ---------------------------------------

    def add(self, i: int, j: int) -> int:
        raise NotImplementedError

    def neg(self, i: int) -> int:
        raise NotImplementedError

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def mul(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        n1 = self.order - 1
        return self._exp[(self._log[i] + self._log[j]) % n1]

    def inv(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError(f"inversion of zero in {self}")
        n1 = self.order - 1
        return self._exp[(-self._log[i]) % n1]

    def div(self, i: int, j: int) -> int:
        return self.mul(i, self.inv(j))

    def pow(self, i: int, e: int) -> int:
        """i**e with arbitrary-precision e; 0**0 == 1, 0**(e<0) is an error."""
        if i == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError(f"0**{e} in {self}")
            return 0
        return self._exp[(self._log[i] * e) % (self.order - 1)]

    # -- structure -------------------------------------------------------

    @property
    def gen(self) -> int:
        """Canonical generator of the multiplicative group (dense index)."""
        return self._gen

    def log(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError(f"discrete log of zero in {self}")
        return self._log[i]

    def coeffs(self, i: int) -> tuple[int, ...]:
        """Coefficient vector over the immediate base, lowest degree first."""
        raise NotImplementedError

    def from_coeffs(self, digits) -> int:
        raise NotImplementedError

    def from_int(self, k: int) -> int:
        """Image of the rational integer k (a prime-subfield constant)."""
        raise NotImplementedError

    def eta(self, i: int) -> int:
        """Quadratic character: 0 at zero, +1 on squares, -1 otherwise."""
        if i == 0:
            return 0
        return 1 if self._log[i] % 2 == 0 else -1

    # canonical omega ordering -------------------------------------------

    @property
    def omega(self) -> tuple[int, ...]:
        """Indices listed as omega_0 = 0, omega_i = g**(i-1)."""
        return self._omega

    def omega_pos(self, i: int) -> int:
        return self._omega_pos[i]

    def elements(self):
        """Stream every element once, in canonical omega order."""
        for i in self._omega:
            yield Elem(self, i)

    def elem(self, i: int) -> "Elem":
        return Elem(self, i)

    @property
    def zero(self) -> "Elem":
        return Elem(self, 0)

    @property
    def one(self) -> "Elem":
        return Elem(self, 1)

    # -- tower helpers -----------------------------------------------------

    def subfield_chain(self) -> list["FiniteField"]:
        """self, base, base of base, ... down to the prime field."""
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.base
        return out

    def contains_field(self, other: "FiniteField") -> bool:
        return any(f is other for f in self.subfield_chain())

    def embed_from(self, sub: "FiniteField", i: int) -> int:
        """Index of the element of ``sub`` with index i, viewed in self."""
        if sub is self:
            return i
        if self.base is None or not self.base.contains_field(sub):
            raise MixedFieldError(f"{sub} is not below {self}")
        return self.base.embed_from(sub, i)  # low digit only

    def demote_to(self, i: int, sub: "FiniteField") -> int:
        """Inverse of embed_from; raises if the element is not in ``sub``."""
        if sub is self:
            return i
        if self.base is None:
            raise MixedFieldError(f"{sub} is not below {self}")
        digits = self.coeffs(i)
        if any(d != 0 for d in digits[1:]):
            raise MixedFieldError(
                f"element {i} of {self} does not lie in {sub}"
            )
        return self.base.demote_to(digits[0], sub)

    def trace_table(self, target: "FiniteField") -> np.ndarray:
        """Tr_{self/target} of every element, as indices of ``target``."""
        key = id(target)
        tab = self._trace_tables.get(key)
        if tab is None:
            if not self.contains_field(target):
                raise MixedFieldError(f"{target} is not a subfield of {self}")
            # degree of self over target
            s, sz = 0, 1
            while sz < self.order:
                sz *= target.order
                s += 1
            if sz != self.order:
                raise MixedFieldError(f"{target} is not a subfield of {self}")
            tord = target.order
            out = np.zeros(self.order, dtype=_min_dtype(target.order))
            for i in range(self.order):
                acc = 0
                for j in range(s):
                    acc = self.add(acc, self.pow(i, tord**j))
                out[i] = self.demote_to(acc, target)
            out.setflags(write=False)
            tab = out
            self._trace_tables[key] = tab
        return tab

    # numpy views used by enumeration kernels --------------------------------

    @property
    def add_np(self) -> np.ndarray:
        return self._add_np

    @property
    def mul_np(self) -> np.ndarray:
        tab = getattr(self, "_mul_np", None)
        if tab is None:
            n = self.order
            tab = np.zeros((n, n), dtype=_min_dtype(n))
            for i in range(1, n):
                for j in range(1, n):
                    tab[i, j] = self.mul(i, j)
            tab.setflags(write=False)
            self._mul_np = tab
        return tab

    @property
    def eta_np(self) -> np.ndarray:
        tab = getattr(self, "_eta_np", None)
        if tab is None:
            tab = np.array([self.eta(i) for i in range(self.order)], dtype=np.int8)
            tab.setflags(write=False)
            self._eta_np = tab
        return tab

    # -- shared construction pieces ----------------------------------------

    def _finish_init(self):
        """Generator search, log/exp tables, omega ordering."""
        n = self.order
        factors = _prime_factors(n - 1) if n > 2 else []
        gen = None
        for c in range(1, n):
            if n == 2:
                gen = 1
                break
            if all(self._pow_raw(c, (n - 1) // ell) != 1 for ell in factors):
                gen = c
                break
        assert gen is not None
        self._gen = gen
        exp = [1] * (n - 1)
        log = [0] * n
        v = 1
        for k in range(n - 1):
            exp[k] = v
            log[v] = k
            v = self._mul_raw(v, gen)
        assert v == 1
        self._exp = exp
        self._log = log
        self._omega = (0, *exp)
        pos = [0] * n
        for j, i in enumerate(self._omega):
            pos[i] = j
        self._omega_pos = tuple(pos)
        self._trace_tables: dict[int, np.ndarray] = {}

    def _mul_raw(self, i: int, j: int) -> int:
        raise NotImplementedError

    def _pow_raw(self, i: int, e: int) -> int:
        r, b = 1, i
        while e:
            if e & 1:
                r = self._mul_raw(r, b)
            b = self._mul_raw(b, b)
            e >>= 1
        return r


class PrimeField(FiniteField):
    """F_p for an odd prime p; indices are residues 0..p-1."""

    def __init__(self, p: int):
        if not _is_prime(p) or p % 2 == 0:
            raise ParameterError(f"p = {p} must be an odd prime")
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        self.modulus = None
        self._finish_init()
        r = np.arange(p)
        add = (r[:, None] + r[None, :]) % p
        self._add_np = add.astype(_min_dtype(p))
        self._add_np.setflags(write=False)

    def add(self, i, j):
        return (i + j) % self.p

    def neg(self, i):
        return (-i) % self.p

    def _mul_raw(self, i, j):
        return (i * j) % self.p

    def coeffs(self, i):
        return (i,)

    def from_coeffs(self, digits):
        (d,) = digits
        return d % self.p

    def from_int(self, k):
        return k % self.p

    def __repr__(self):
        return f"GF({self.p})"


class ExtField(FiniteField):
    """Degree-d extension of ``base`` modulo a pinned irreducible polynomial.

    The modulus is the first monic irreducible found by scanning coefficient
    vectors (c_{d-1}, ..., c_0) lexicographically in dense index order, so
    construction is reproducible without external polynomial tables.
    """

    def __init__(self, base: FiniteField, degree: int, var: str = "t",
                 modulus: tuple[int, ...] | None = None):
        if degree < 2:
            raise ParameterError("extension degree must be >= 2")
        self.p = base.p
        self.base = base
        self.degree = degree
        self.order = base.order**degree
        self.var = var
        if modulus is None:
            modulus = smallest_irreducible(base, degree)
        self.modulus = modulus
        B = base.order
        # digit table: element index -> coefficient vector over base
        idx = np.arange(self.order)
        digits = np.empty((self.order, degree), dtype=_min_dtype(B))
        for k in range(degree):
            digits[:, k] = idx % B
            idx //= B
        self._digits = digits
        self._digits.setflags(write=False)
        self._powers = tuple(B**k for k in range(degree))
        # reduction vectors: t^(degree+k) mod modulus, k = 0..degree-2
        self._red = self._reduction_rows()
        self._finish_init()
        # digitwise addition table via the base table
        badd = base.add_np
        add = np.zeros((self.order, self.order), dtype=np.int64)
        for k in range(degree):
            dk = digits[:, k].astype(np.int64)
            add += badd[dk[:, None], dk[None, :]].astype(np.int64) * self._powers[k]
        self._add_np = add.astype(_min_dtype(self.order))
        self._add_np.setflags(write=False)

    # polynomial plumbing ---------------------------------------------------

    def _reduction_rows(self):
        base, d = self.base, self.degree
        f = self.modulus  # length d+1, monic
        # t^d = -(f_0 + f_1 t + ... + f_{d-1} t^{d-1})
        rows = []
        cur = [base.neg(f[k]) for k in range(d)]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top != 0:
                nxt = [base.add(nxt[k], base.mul(top, rows[0][k])) for k in range(d)]
            cur = nxt
            rows.append(tuple(cur))
        return rows

    def add(self, i, j):
        return int(self._add_np[i, j])

    def neg(self, i):
        base = self.base
        digs = self._digits[i]
        return sum(base.neg(int(digs[k])) * self._powers[k] for k in range(self.degree))

    def _mul_raw(self, i, j):
        base, d = self.base, self.degree
        a = self._digits[i]
        b = self._digits[j]
        conv = [0] * (2 * d - 1)
        for x in range(d):
            ax = int(a[x])
            if ax == 0:
                continue
            for y in range(d):
                by = int(b[y])
                if by:
                    conv[x + y] = base.add(conv[x + y], base.mul(ax, by))
        out = conv[:d]
        for k in range(d - 1):
            c = conv[d + k]
            if c:
                row = self._red[k]
                for t in range(d):
                    if row[t]:
                        out[t] = base.add(out[t], base.mul(c, row[t]))
        return sum(out[k] * self._powers[k] for k in range(d))

    def coeffs(self, i):
        return tuple(int(v) for v in self._digits[i])

    def from_coeffs(self, digits):
        digits = tuple(digits)
        if len(digits) != self.degree:
            raise MixedFieldError(
                f"{self} expects {self.degree} coefficients, got {len(digits)}"
            )
        return sum((d % self.base.order) * self._powers[k] for k, d in enumerate(digits))

    def from_int(self, k):
        return self.base.from_int(k)  # low digit; index is unchanged

    def embed_from(self, sub, i):
        if sub is self:
            return i
        return self.base.embed_from(sub, i)  # embeds into digit 0

    @property
    def t(self) -> int:
        """Index of the extension generator (the class of the variable)."""
        return self._powers[1]

    def __repr__(self):
        return f"GF({self.order})"


# ---------------------------------------------------------------------------
# irreducible modulus search
# ---------------------------------------------------------------------------


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(base, a, b, f):
    d = len(f) - 1
    conv = [0] * (len(a) + len(b) - 1) if a and b else []
    for x, ax in enumerate(a):
        if ax == 0:
            continue
        for y, by in enumerate(b):
            if by:
                conv[x + y] = base.add(conv[x + y], base.mul(ax, by))
    # reduce mod monic f
    for k in range(len(conv) - 1, d - 1, -1):
        c = conv[k]
        if c:
            conv[k] = 0
            for t in range(d):
                if f[t]:
                    conv[k - d + t] = base.sub(conv[k - d + t], base.mul(c, f[t]))
    return _poly_trim(conv[:d] if len(conv) > d else conv)


def _poly_powmod(base, a, e, f):
    r = [1]
    b = list(a)
    while e:
        if e & 1:
            r = _poly_mulmod(base, r, b, f)
        b = _poly_mulmod(base, b, b, f)
        e >>= 1
    return r


def _poly_gcd(base, a, b):
    a, b = list(a), list(b)
    while b:
        # a mod b
        inv_lead = base.inv(b[-1])
        while len(a) >= len(b) and a:
            c = base.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            for t in range(len(b)):
                a[shift + t] = base.sub(a[shift + t], base.mul(c, b[t]))
            _poly_trim(a)
        a, b = b, a
    return a


def _is_irreducible(base: FiniteField, poly: tuple[int, ...]) -> bool:
    """Monic poly irreducible over base, certified by Frobenius divisibility.

    poly divides x^(B^n) - x, and gcd(x^(B^d) - x, poly) = 1 for every
    proper divisor d of n (it suffices to check d = n/ell for prime ell).
    """
    n = len(poly) - 1
    if n == 1:
        return True
    B = base.order
    if poly[0] == 0:  # divisible by x
        return False
    x = [0, 1]
    xq = _poly_powmod(base, x, B**n, poly)
    # x^(B^n) == x mod poly
    diff = list(xq) + [0] * max(0, 2 - len(xq))
    diff[1] = base.sub(diff[1], 1)
    if _poly_trim(diff):
        return False
    for ell in _prime_factors(n):
        d = n // ell
        xqd = _poly_powmod(base, x, B**d, poly)
        g = list(xqd) + [0] * max(0, 2 - len(xqd))
        g[1] = base.sub(g[1], 1)
        _poly_trim(g)
        if not g:
            return False
        if len(_poly_gcd(base, poly, g)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible_cached(field_key, degree):
    base = _FIELD_REGISTRY[field_key]
    if degree == 1:
        return (0, 1)  # the polynomial x
    B = base.order
    for high in itertools.product(range(B), repeat=degree):
        # high = (c_{d-1}, ..., c_0): minimize high-degree coefficients first
        coeffs = tuple(reversed(high)) + (1,)
        if _is_irreducible(base, coeffs):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # unreachable


_FIELD_REGISTRY: dict[int, FiniteField] = {}


def _register(field: FiniteField) -> int:
    key = id(field)
    _FIELD_REGISTRY[key] = field
    return key


def smallest_irreducible(base: FiniteField, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree in the deterministic scan.

    Returned as a coefficient vector (c_0, ..., c_{degree-1}, 1), lowest
    degree first.  Degree 1 yields the polynomial x.
    """
    if degree < 1:
        raise ParameterError("degree must be >= 1")
    return _smallest_irreducible_cached(_register(base), degree)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class Elem:
    """A field element: a handle plus a dense index, with operator sugar.

    Integers mix in as prime-subfield constants, so ``x + 1`` and ``2 * x``
    mean what they say in any field of the tower.
    """

    __slots__ = ("field", "idx")

    def __init__(self, field: FiniteField, idx: int):
        self.field = field
        self.idx = idx

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            if other.field is not self.field:
                raise MixedFieldError(
                    f"mixed operands from {self.field} and {other.field}"
                )
            return other
        if isinstance(other, int):
            return Elem(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.add(self.idx, o.idx))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.sub(self.idx, o.idx))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.sub(o.idx, self.idx))

    def __neg__(self):
        return Elem(self.field, self.field.neg(self.idx))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.mul(self.idx, o.idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.div(self.idx, o.idx))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elem(self.field, self.field.div(o.idx, self.idx))

    def __pow__(self, e: int):
        return Elem(self.field, self.field.pow(self.idx, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.idx == self.field.from_int(other)
        return (
            isinstance(other, Elem)
            and other.field is self.field
            and other.idx == self.idx
        )

    def __hash__(self):
        return hash((id(self.field), self.idx))

    def __bool__(self):
        return self.idx != 0

    @property
    def coeffs(self) -> tuple["Elem", ...]:
        base = self.field.base or self.field
        return tuple(Elem(base, d) for d in self.field.coeffs(self.idx))

    def __repr__(self):
        return f"{_elem_str(self.field, self.idx)} in {self.field}"


def _elem_str(field: FiniteField, idx: int) -> str:
    if field.base is None:
        return str(idx)
    var = getattr(field, "var", "t")
    parts = []
    for k, d in enumerate(field.coeffs(idx)):
        if d == 0:
            continue
        c = _elem_str(field.base, d)
        is_one = c == "1"
        if field.base.base is not None and not is_one and k > 0:
            c = f"({c})"
        if k == 0:
            parts.append(c)
        else:
            head = "" if is_one else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{k}" if k > 1 else ""))
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# tower construction and free functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldTower:
    """The chain F_p <= F_q <= F_{q^m1}, F_q <= F_{q^m2}."""

    p: int
    m: int
    m1: int
    m2: int
    Fp: FiniteField
    Fq: FiniteField
    Fq1: FiniteField
    Fq2: FiniteField

    @property
    def q(self) -> int:
        return self.Fq.order

    @property
    def M(self) -> int:
        return self.m1 + self.m2

    def describe(self) -> dict:
        """Serializable record pinning the exact representation."""

        def mod_of(field):
            if field.modulus is None:
                return None
            return [coeff_to_data(field.base, c) for c in field.modulus]

        def coeff_to_data(base, c):
            if base.base is None:
                return c
            return [coeff_to_data(base.base, d) for d in base.coeffs(c)]

        return {
            "p": self.p,
            "m": self.m,
            "m1": self.m1,
            "m2": self.m2,
            "modulus_Fq": mod_of(self.Fq),
            "modulus_Fq1": mod_of(self.Fq1),
            "modulus_Fq2": mod_of(self.Fq2),
        }


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def _ext_field_cached(base_key: int, degree: int, var: str) -> ExtField:
    return ExtField(_FIELD_REGISTRY[base_key], degree, var=var)


def extension_field(base: FiniteField, degree: int, var: str = "t") -> FiniteField:
    """Degree-d extension with the pinned modulus; degree 1 returns ``base``.

    Cached on (base, degree), so repeated construction hands back the same
    immutable field object.
    """
    if degree < 1:
        raise ParameterError("degree must be >= 1")
    if degree == 1:
        return base
    return _ext_field_cached(_register(base), degree, var)


@lru_cache(maxsize=None)
def build_tower(p: int, m: int, m1: int, m2: int) -> FieldTower:
    """Deterministically construct the tower; same inputs, same moduli.

    Degree-1 steps reuse the field below them, so e.g. m = 1 makes F_q
    literally F_p.
    """
    if m < 1 or m1 < 1 or m2 < 1:
        raise ParameterError("m, m1, m2 must all be >= 1")
    Fp = prime_field(p)
    Fq = extension_field(Fp, m, var="w")
    Fq1 = extension_field(Fq, m1, var="t")
    Fq2 = extension_field(Fq, m2, var="u")
    return FieldTower(p=p, m=m, m1=m1, m2=m2, Fp=Fp, Fq=Fq, Fq1=Fq1, Fq2=Fq2)


def rel_trace(x: Elem, target: FiniteField) -> Elem:
    """Tr_{F/target}(x) = sum of x**(|target|**j); lands in ``target``."""
    field = x.field
    if not field.contains_field(target):
        raise MixedFieldError(f"{target} is not a subfield of {field}")
    s, sz = 0, 1
    while sz < field.order:
        sz *= target.order
        s += 1
    if sz != field.order:
        raise MixedFieldError(f"{target} is not a subfield of {field}")
    acc = 0
    for j in range(s):
        acc = field.add(acc, field.pow(x.idx, target.order**j))
    return Elem(target, field.demote_to(acc, target))


def quad_char(x: Elem) -> int:
    return x.field.eta(x.idx)


def primitive_element(field: FiniteField) -> Elem:
    """First element of the deterministic scan with full multiplicative order."""
    return Elem(field, field.gen)


def enumerate_field(field: FiniteField):
    """Stream of all elements in canonical omega order (zero first)."""
    return field.elements()


# serialization of elements as nested coefficient lists (ints at the F_p level)


def elem_to_data(x: Elem):
    field = x.field
    if field.base is None:
        return x.idx
    return [elem_to_data(Elem(field.base, d)) for d in field.coeffs(x.idx)]


def elem_from_data(field: FiniteField, data) -> Elem:
    """Parse an element token: int constant, nested coefficient list,
    or a power of the canonical generator written as "g" / "g^k"."""
    if isinstance(data, bool):
        raise MixedFieldError("boolean is not a field element")
    if isinstance(data, int):
        return Elem(field, field.from_int(data))
    if isinstance(data, str):
        s = data.strip()
        if s == "g":
            return Elem(field, field.gen)
        if s.startswith("g^"):
            return Elem(field, field.pow(field.gen, int(s[2:])))
        raise MixedFieldError(f"unrecognized element token {data!r}")
    if isinstance(data, (list, tuple)):
        if field.base is None:
            raise MixedFieldError("prime-field elements are plain integers")
        if len(data) != field.degree:
            raise MixedFieldError(
                f"{field} expects {field.degree} coefficients, got {len(data)}"
            )
        digits = [elem_from_data(field.base, d).idx for d in data]
        return Elem(field, field.from_coeffs(digits))
    raise MixedFieldError(f"cannot parse element from {type(data).__name__}")
