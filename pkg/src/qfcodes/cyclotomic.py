"""Exact arithmetic in Z[zeta_p] and the character-sum identities.

A cyclotomic integer is stored on the basis 1, zeta, ..., zeta**(p-2) with
arbitrary-precision integer coordinates; zeta**(p-1) is rewritten through the
minimal polynomial as -(1 + zeta + ... + zeta**(p-2)), which makes equality a
coordinate comparison.

Half-integer powers of p* = (-1)**((p-1)/2) * p are expressed through the
prime-field quadratic Gauss sum g_p = sum(zeta**(x*x)), whose square is p*.
Every closed form used here then clears its p-power denominator exactly, so
no floating point appears anywhere; solution counts additionally pass through
``fractions.Fraction`` and assert denominator 1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BudgetError, DEFAULT_BUDGET, MixedFieldError
from .fields import Elem, FiniteField, rel_trace
from .quadform import QuadFormAnalysis, QuadraticForm

__all__ = [
    "CycInt",
    "pstar",
    "gauss_sum",
    "upsilon",
    "cyc_from_trace_counts",
    "additive_char_sum",
    "eta_twisted_sum_brute",
    "eta_twisted_sum_closed",
    "qf_exp_sum_brute",
    "qf_exp_sum_closed",
    "count_solutions",
    "count_solutions_brute",
]


class CycInt:
    """Element of Z[zeta_p] in canonical reduced coordinates."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords):
        coords = tuple(coords)
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates for p = {p}")
        self.p = p
        self.coords = coords

    # construction helpers

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        k %= p
        if k == p - 1:
            return cls(p, (-1,) * (p - 1))
        c = [0] * (p - 1)
        c[k] = 1
        return cls(p, c)

    # ring operations

    def _chk(self, other: "CycInt"):
        if not isinstance(other, CycInt):
            raise TypeError(f"expected CycInt, got {type(other).__name__}")
        if other.p != self.p:
            raise MixedFieldError(f"mixed cyclotomic orders {self.p} and {other.p}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        self._chk(other)
        return CycInt(self.p, (a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, (-a for a in self.coords))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        self._chk(other)
        return CycInt(self.p, (a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, (a * other for a in self.coords))
        self._chk(other)
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    acc[(i + j) % p] += a * b
        top = acc[p - 1]
        return CycInt(p, (acc[k] - top for k in range(p - 1)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        return (
            isinstance(other, CycInt)
            and other.p == self.p
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.p, self.coords))

    def __bool__(self):
        return any(self.coords)

    def divide_exact(self, n: int) -> "CycInt":
        """Divide by a rational integer, asserting exactness."""
        if any(c % n for c in self.coords):
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return CycInt(self.p, (c // n for c in self.coords))

    def as_int(self) -> int:
        if any(self.coords[1:]):
            raise ArithmeticError(f"{self} is not a rational integer")
        return self.coords[0]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = "z" if k == 1 else f"z^{k}"
                terms.append(f"{c}*{z}" if c != 1 else z)
        return "CycInt(" + (" + ".join(terms) if terms else "0") + f"; p={self.p})"


def pstar(p: int) -> int:
    """(-1)**((p-1)/2) * p."""
    return p if (p - 1) // 2 % 2 == 0 else -p


def gauss_sum(p: int) -> CycInt:
    """Prime-field quadratic Gauss sum; its square is p*."""
    acc = [0] * p
    for x in range(p):
        acc[x * x % p] += 1
    top = acc[p - 1]
    return CycInt(p, (acc[k] - top for k in range(p - 1)))


def upsilon(q: int, idx: int) -> int:
    """q - 1 at zero, -1 elsewhere."""
    return q - 1 if idx == 0 else -1


def _q_pow_pstar_neg_half(p: int, top_exp: int, j: int) -> CycInt:
    """p**top_exp * (p*)**(-j/2) as an exact cyclotomic integer.

    Needs 2*top_exp >= j + (j odd), which holds for every use here.
    """
    if j % 2 == 0:
        half = j // 2
        sign = -1 if (pstar(p) < 0 and half % 2) else 1
        val = sign * p ** (top_exp - half)
        if top_exp < half:
            raise ArithmeticError("negative p-power after clearing denominators")
        return CycInt.from_int(p, val)
    # (p*)**(-j/2) = g_p * (p*)**(-(j+1)/2)
    half = (j + 1) // 2
    if top_exp < half:
        raise ArithmeticError("negative p-power after clearing denominators")
    sign = -1 if (pstar(p) < 0 and half % 2) else 1
    return gauss_sum(p) * (sign * p ** (top_exp - half))


# ---------------------------------------------------------------------------
# brute-force character sums
# ---------------------------------------------------------------------------


def cyc_from_trace_counts(p: int, counts) -> CycInt:
    """sum(counts[t] * zeta**t) for F_p indices t."""
    acc = [0] * p
    for t, c in enumerate(counts):
        acc[t % p] += c
    top = acc[p - 1]
    return CycInt(p, (acc[k] - top for k in range(p - 1)))


def additive_char_sum(field: FiniteField, func) -> CycInt:
    """sum over x in ``field`` of zeta_p**(Tr(func(x))), exactly.

    ``func`` maps an :class:`Elem` of ``field`` to an element of any field
    with a trace path down to F_p.
    """
    p = field.p
    counts = [0] * p
    prime = field.subfield_chain()[-1]
    for x in field.elements():
        v = func(x)
        t = rel_trace(v, prime).idx if v.field is not prime else v.idx
        counts[t] += 1
    return cyc_from_trace_counts(p, counts)


def eta_twisted_sum_brute(Fq: FiniteField, k: int, b: Elem) -> CycInt:
    """sum over z in F_q* of eta(z)**k * zeta**(Tr(z*b)) by enumeration."""
    if b.field is not Fq:
        raise MixedFieldError("b must lie in F_q")
    p = Fq.p
    prime = Fq.subfield_chain()[-1]
    tr = Fq.trace_table(prime)
    pos = [0] * p
    neg = [0] * p
    for z in range(1, Fq.order):
        t = int(tr[Fq.mul(z, b.idx)])
        if Fq.eta(z) == 1:
            pos[t] += 1
        else:
            neg[t] += 1
    if k % 2 == 0:
        return cyc_from_trace_counts(p, [a + c for a, c in zip(pos, neg)])
    return cyc_from_trace_counts(p, [a - c for a, c in zip(pos, neg)])


def eta_twisted_sum_closed(Fq: FiniteField, k: int, b: Elem) -> CycInt:
    """Closed form: upsilon(b) for even k; the Gauss-sum expression for odd."""
    if b.field is not Fq:
        raise MixedFieldError("b must lie in F_q")
    p = Fq.p
    m, sz = 0, 1
    while sz < Fq.order:
        sz *= p
        m += 1
    if k % 2 == 0:
        return CycInt.from_int(p, upsilon(Fq.order, b.idx))
    eta_nb = Fq.eta(Fq.neg(b.idx))
    if eta_nb == 0:
        return CycInt.from_int(p, 0)
    sign = (-1) ** (m - 1) * eta_nb
    return _q_pow_pstar_neg_half(p, m, m) * sign


def qf_exp_sum_brute(form: QuadraticForm, z: Elem) -> CycInt:
    """sum over x in F_{q^m1} of zeta**(Tr_{q/p}(z*Q(x))), by enumeration."""
    tower = form.tower
    Fq = tower.Fq
    if z.field is not Fq:
        raise MixedFieldError("z must lie in F_q")
    tr = Fq.trace_table(tower.Fp)
    p = tower.p
    counts = [0] * p
    hist = form.value_histogram
    for v in range(Fq.order):
        c = int(hist[v])
        if c:
            counts[int(tr[Fq.mul(z.idx, v)])] += c
    return cyc_from_trace_counts(p, counts)


def qf_exp_sum_closed(analysis: QuadFormAnalysis, z: Elem) -> CycInt:
    """The two-case closed form of the quadratic exponential sum."""
    tower = analysis.tower
    Fq = tower.Fq
    if z.field is not Fq or z.idx == 0:
        raise MixedFieldError("z must lie in F_q*")
    p, m, m1 = tower.p, tower.m, tower.m1
    if analysis.r_q % 2 == 0:
        return CycInt.from_int(
            p, analysis.eps * Fq.order ** (m1 - analysis.r_q // 2)
        )
    sign = (-1) ** (m - 1) * Fq.eta(Fq.neg(z.idx)) * analysis.eps_q
    return _q_pow_pstar_neg_half(p, m * m1, m * analysis.r_q) * sign


# ---------------------------------------------------------------------------
# solution counts N(a, b; beta) and N(a, b, c; beta)
# ---------------------------------------------------------------------------


def count_solutions(
    analysis: QuadFormAnalysis,
    a: Elem,
    b: Elem,
    beta: Elem,
    c: Elem | None = None,
) -> int:
    """Closed-form number of (x, y) with a*Q(x) + Tr(b*y) (+ c) = beta."""
    tower = analysis.tower
    Fq = tower.Fq
    q, M = Fq.order, tower.M
    beta_idx = beta.idx if c is None else Fq.sub(beta.idx, c.idx)
    if a.idx == 0 and b.idx == 0:
        return q**M if beta_idx == 0 else 0
    if b.idx != 0:
        return q ** (M - 1)
    r_q, eps = analysis.r_q, analysis.eps
    if r_q % 2 == 0:
        val = Fraction(q) ** (M - 1) * (
            1 + eps * Fraction(1, q ** (r_q // 2)) * upsilon(q, beta_idx)
        )
    else:
        eta_term = Fq.eta(Fq.mul(Fq.neg(a.idx), beta_idx))
        val = Fraction(q) ** (M - 1) * (
            1 + eps * eta_term * Fraction(q) ** ((1 - r_q) // 2)
        )
    assert val.denominator == 1 and val >= 0, val
    return int(val)


def count_solutions_brute(
    form: QuadraticForm,
    a: Elem,
    b: Elem,
    beta: Elem,
    c: Elem | None = None,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Exhaustive count over all q**M pairs (x, y), via exact histograms.

    The x side enters only through Q(x) and the y side only through
    Tr(b*y), so the double enumeration is organized as a convolution of the
    two value histograms; every pair is still counted exactly once.
    """
    tower = form.tower
    Fq, Fq2 = tower.Fq, tower.Fq2
    total = tower.Fq1.order * Fq2.order
    if total > budget:
        raise BudgetError(total, budget, "solution count enumeration")
    q = Fq.order
    # histogram of a*Q(x) over x
    hist_q = [0] * q
    for v, cnt in enumerate(form.value_histogram):
        if cnt:
            hist_q[Fq.mul(a.idx, v)] += int(cnt)
    # histogram of Tr(b*y) over y
    tr = Fq2.trace_table(Fq) if Fq2 is not Fq else None
    hist_t = [0] * q
    for y in range(Fq2.order):
        by = Fq2.mul(b.idx, y)
        hist_t[int(tr[by]) if tr is not None else by] += 1
    target = beta.idx if c is None else Fq.sub(beta.idx, c.idx)
    return sum(
        hist_q[v] * hist_t[Fq.sub(target, v)] for v in range(q) if hist_q[v]
    )
