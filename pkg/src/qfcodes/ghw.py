"""Weight hierarchies: exhaustive subspace search and closed forms.

Subspaces of the message space are enumerated as reduced row-echelon bases
(pivot columns ascending, unit pivots, zeros above and below), one canonical
matrix per subspace, ordered lexicographically by pivot-column set and then
by the free entries.  The support defect N(H) of a subspace counts the
evaluation points annihilated by every basis functional; the r-th
generalized Hamming weight is the code length minus the maximum defect.

Three routes coexist and are cross-checked:
* a histogram/vectorized point count (``support_defect``),
* the per-subspace closed form from the character-sum analysis
  (``support_defect_closed``),
* a cyclotomic-sum recomputation (``support_defect_char``), used in audits.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .codes import CodeSpec, Variant
from .cyclotomic import cyc_from_trace_counts
from .errors import BudgetError, DEFAULT_BUDGET, ParameterError
from .fields import FiniteField
from .quadform import _nullspace

__all__ = [
    "gaussian_binomial",
    "subspace_bases",
    "support_defect",
    "support_defect_closed",
    "support_defect_char",
    "ghw_brute",
    "ghw_closed",
    "hierarchy",
    "GhwRow",
    "GhwReport",
]


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-space over F_q."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (r - i) - 1
    assert num % den == 0
    return num // den


def subspace_bases(n: int, r: int, field: FiniteField):
    """Yield every canonical RREF basis (tuple of row tuples), no duplicates.

    Free entries range over the dense element order, so the stream is
    deterministic and restartable.
    """
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
    if r == 0:
        yield ()
        return
    order = field.order
    for pivots in itertools.combinations(range(n), r):
        free_cells = [
            (i, c)
            for i in range(r)
            for c in range(pivots[i] + 1, n)
            if c not in pivots
        ]
        for values in itertools.product(range(order), repeat=len(free_cells)):
            rows = [[0] * n for _ in range(r)]
            for i in range(r):
                rows[i][pivots[i]] = 1
            for (i, c), v in zip(free_cells, values):
                rows[i][c] = v
            yield tuple(tuple(row) for row in rows)


def _in_rowspace(Fq: FiniteField, rows, target) -> bool:
    """Membership test against an RREF basis."""
    v = list(target)
    for row in rows:
        # rows are RREF: the pivot is the first nonzero entry and equals 1
        piv = next(i for i, x in enumerate(row) if x != 0)
        c = v[piv]
        if c:
            for k in range(len(v)):
                v[k] = Fq.sub(v[k], Fq.mul(c, row[k]))
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# evaluation engine
# ---------------------------------------------------------------------------


class _GhwEngine:
    """Cached tables for counting annihilated points of message subspaces."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        tower = spec.tower
        Fq, Fq2 = tower.Fq, tower.Fq2
        self.Fq, self.Fq2 = Fq, Fq2
        self.q = Fq.order
        self.hq = np.asarray(spec.analysis.form.value_histogram, dtype=np.int64)
        self.addq = np.asarray(Fq.add_np, dtype=np.int64)
        self.mulq = np.asarray(Fq.mul_np, dtype=np.int64)
        if Fq2 is Fq:
            trmat = self.mulq
        else:
            tr = np.asarray(Fq2.trace_table(Fq), dtype=np.int64)
            mul2 = np.asarray(Fq2.mul_np, dtype=np.int64)
            trmat = tr[mul2]
        self.trmat = trmat  # trmat[b, y] = Tr(b*y) as an F_q index

    def split_row(self, row) -> tuple[int, int, int]:
        """RREF row -> message (a_idx, b_idx, c_idx)."""
        tower = self.spec.tower
        m2 = tower.m2
        a = row[0]
        bcoords = row[1 : 1 + m2]
        b = bcoords[0] if self.Fq2 is self.Fq else self.Fq2.from_coeffs(bcoords)
        c = row[1 + m2] if self.spec.variant is Variant.AFFINE else 0
        return a, b, c

    def defect(self, rows) -> int:
        """Number of points where every basis functional vanishes."""
        mask = None
        for row in rows:
            a, b, c = self.split_row(row)
            av = self.mulq[a]
            bv = self.addq[self.trmat[b], c]
            grid = self.addq[av[:, None], bv[None, :]]
            m = grid == 0
            mask = m if mask is None else (mask & m)
        if mask is None:  # r = 0: every point vanishes trivially
            total = int(self.hq.sum()) * self.trmat.shape[0]
        else:
            total = int((self.hq[:, None] * mask).sum())
        if self.spec.variant is Variant.HOMOGENEOUS:
            total -= 1
        return total

    def b_part_zero_span(self, rows):
        """Elements (a, c) of the subspace whose b-part vanishes."""
        Fq = self.Fq
        m2 = self.spec.tower.m2
        bcols = [[row[1 + k] for row in rows] for k in range(m2)]  # m2 x r
        lam_basis = _nullspace(Fq, bcols) if rows else []
        r = len(rows)
        if not rows:
            return [(0, 0)]
        out = []
        for coeffs in itertools.product(range(Fq.order), repeat=len(lam_basis)):
            lam = [0] * r
            for c, vec in zip(coeffs, lam_basis):
                if c:
                    for i in range(r):
                        lam[i] = Fq.add(lam[i], Fq.mul(c, vec[i]))
            a = 0
            cc = 0
            for li, row in zip(lam, rows):
                if li:
                    a = Fq.add(a, Fq.mul(li, row[0]))
                    if self.spec.variant is Variant.AFFINE:
                        cc = Fq.add(cc, Fq.mul(li, row[-1]))
            out.append((a, cc))
        return out


@lru_cache(maxsize=None)
def _engine_cache(spec: CodeSpec) -> _GhwEngine:
    return _GhwEngine(spec)


def support_defect(spec: CodeSpec, rows) -> int:
    """N(H): evaluation points annihilated by every functional of the basis."""
    return _engine_cache(spec).defect(rows)


def support_defect_char(spec: CodeSpec, rows) -> int:
    """Audit route: recompute N(H) from the additive-character identity
    q**r * (N + [homogeneous]) = sum over H and all points of zeta**Tr(...)."""
    eng = _engine_cache(spec)
    Fq, Fq2 = eng.Fq, eng.Fq2
    tower = spec.tower
    p = tower.p
    prime = Fq.subfield_chain()[-1]
    trp = Fq.trace_table(prime)
    r = len(rows)
    counts = [0] * p
    for coeffs in itertools.product(range(Fq.order), repeat=r):
        a = b = c = 0
        for li, row in zip(coeffs, rows):
            if li:
                ai, bi, ci = eng.split_row(row)
                a = Fq.add(a, Fq.mul(li, ai))
                b = Fq2.add(b, Fq2.mul(Fq2.embed_from(Fq, li), bi))
                c = Fq.add(c, Fq.mul(li, ci))
        av = eng.mulq[a]
        bv = eng.addq[eng.trmat[b], c]
        grid = eng.addq[av[:, None], bv[None, :]]
        vals = np.asarray(trp, dtype=np.int64)[grid]
        for t in range(p):
            counts[t] += int((eng.hq[:, None] * (vals == t)).sum())
    total = cyc_from_trace_counts(p, counts)
    n = total.as_int()
    assert n % Fq.order**r == 0
    n //= Fq.order**r
    return n - 1 if spec.variant is Variant.HOMOGENEOUS else n


def support_defect_closed(spec: CodeSpec, rows) -> int:
    """Per-subspace closed form.

    Homogeneous: q**(M-r) * (eps*t*q**(-r_Q/2) + 1) - 1 for even rank with
    t = (q-1) exactly when (1, 0) lies in the subspace, else t = 0; constant
    q**(M-r) - 1 for odd rank.

    Affine: the stratified sum over the b-part-zero elements, with
    t1 = #(a,0,0), t2 = #(a,0,c): ac != 0, t3 = #(0,0,c): c != 0, and the
    character-weighted sum over the t2 stratum for odd rank.
    """
    eng = _engine_cache(spec)
    tower = spec.tower
    Fq = eng.Fq
    q, M = tower.q, tower.M
    an = spec.analysis
    r_q, eps = an.r_q, an.eps
    r = len(rows)
    qMr = Fraction(q) ** (M - r)
    if spec.variant is Variant.HOMOGENEOUS:
        if r_q % 2 != 0:
            return int(qMr) - 1
        one_zero = (1,) + (0,) * (tower.m2)
        t = (q - 1) if _in_rowspace(Fq, rows, one_zero) else 0
        val = qMr * (1 + Fraction(eps * t, q ** (r_q // 2)))
        assert val.denominator == 1
        return int(val) - 1
    # affine: enumerate the b-part-zero elements
    W = eng.b_part_zero_span(rows)
    t1 = sum(1 for a, c in W if a != 0 and c == 0)
    t2 = sum(1 for a, c in W if a != 0 and c != 0)
    t3 = sum(1 for a, c in W if a == 0 and c != 0)
    if r_q % 2 == 0:
        val = qMr * (1 - Fraction(t3, q - 1)) + eps * qMr * Fraction(
            1, q ** (r_q // 2)
        ) * (t1 - Fraction(t2, q - 1))
    else:
        s = sum(Fq.eta(Fq.mul(a, c)) for a, c in W if a != 0 and c != 0)
        val = qMr * (1 - Fraction(t3, q - 1)) + eps * qMr * Fraction(q) ** (
            (1 - r_q) // 2
        ) * Fraction(s, q - 1)
    assert val.denominator == 1 and val >= 0, val
    return int(val)


# ---------------------------------------------------------------------------
# hierarchy computation
# ---------------------------------------------------------------------------


def ghw_brute(
    spec: CodeSpec,
    r: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> tuple[int, tuple]:
    """(d_r, witness): exhaustive maximum of N(H) over canonical subspaces."""
    k = spec.dimension
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= {k}")
    q = spec.tower.q
    count = gaussian_binomial(k, r, q)
    if count > budget:
        raise BudgetError(count, budget, f"subspace enumeration [{k} choose {r}]_{q}")
    eng = _engine_cache(spec)
    if threads <= 1:
        best = -1
        witness = None
        for rows in subspace_bases(k, r, spec.tower.Fq):
            n = eng.defect(rows)
            if n > best:
                best, witness = n, rows
        return spec.length - best, witness

    bases = list(subspace_bases(k, r, spec.tower.Fq))
    chunks = [bases[i::threads] for i in range(threads)]

    def scan(chunk):
        best, wit, pos = -1, None, -1
        for j, rows in enumerate(chunk):
            n = eng.defect(rows)
            if n > best:
                best, wit, pos = n, rows, j
        return best, wit, pos

    results = []
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for i, res in enumerate(ex.map(scan, chunks)):
            best, wit, pos = res
            # global index of the witness inside the interleaved split
            results.append((best, pos * threads + i if pos >= 0 else -1, wit))
    best = max(r[0] for r in results)
    _, _, witness = min((r for r in results if r[0] == best), key=lambda r: r[1])
    return spec.length - best, witness


def ghw_closed(spec: CodeSpec, r: int) -> int:
    """Closed-form case evaluation of d_r; asserts integrality."""
    tower = spec.tower
    q, M = tower.q, tower.M
    an = spec.analysis
    r_q, eps = an.r_q, an.eps
    k = spec.dimension
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= {k}")
    qMr = Fraction(q) ** (M - r)
    if spec.variant is Variant.HOMOGENEOUS:
        if r_q % 2 == 0 and eps == 1:
            val = qMr * (q**r - 1 - Fraction(q - 1, q ** (r_q // 2)))
        elif r_q % 2 == 0:
            if r < k:
                val = qMr * (q**r - 1)
            else:
                val = qMr * (q**r - 1 + Fraction(q - 1, q ** (r_q // 2)))
        else:
            val = qMr * (q**r - 1)
    else:
        if r == k:
            val = Fraction(q**M)
        elif r_q % 2 == 0 and eps == 1:
            val = qMr * (q**r - 1 - Fraction(q - 1, q ** (r_q // 2)))
        elif r_q % 2 == 0:
            val = qMr * (q**r - 1 - Fraction(1, q ** (r_q // 2)))
        else:
            val = qMr * (q**r - 1 - Fraction(q) ** ((1 - r_q) // 2))
    assert val.denominator == 1 and val > 0, val
    return int(val)


@dataclass(frozen=True)
class GhwRow:
    r: int
    d_closed: int
    d_brute: int | None
    reference: int | None
    witness: tuple | None
    note: str = ""

    @property
    def agree(self) -> bool:
        vals = {self.d_closed}
        if self.d_brute is not None:
            vals.add(self.d_brute)
        if self.reference is not None:
            vals.add(self.reference)
        return len(vals) == 1

    @property
    def resolved(self) -> int:
        """Brute force arbitrates when present."""
        return self.d_brute if self.d_brute is not None else self.d_closed


@dataclass(frozen=True)
class GhwReport:
    spec: CodeSpec
    rows: tuple[GhwRow, ...] = field(default_factory=tuple)

    @property
    def all_agree(self) -> bool:
        return all(row.agree for row in self.rows)

    @property
    def disagreements(self) -> list[GhwRow]:
        return [row for row in self.rows if not row.agree]

    def resolved_hierarchy(self) -> list[int]:
        return [row.resolved for row in self.rows]

    def strictly_increasing(self) -> bool:
        vals = self.resolved_hierarchy()
        return all(a < b for a, b in zip(vals, vals[1:]))


def hierarchy(
    spec: CodeSpec,
    r_max: int | None = None,
    budget: int = DEFAULT_BUDGET,
    reference_values: dict[int, int] | None = None,
    threads: int = 1,
) -> GhwReport:
    """Full table r = 1..k of closed vs brute values; never reconciles."""
    k = spec.dimension
    r_max = k if r_max is None else min(r_max, k)
    reference_values = reference_values or {}
    rows = []
    for r in range(1, r_max + 1):
        d_closed = ghw_closed(spec, r)
        note = ""
        try:
            d_brute, witness = ghw_brute(spec, r, budget=budget, threads=threads)
        except BudgetError as e:
            d_brute, witness = None, None
            note = str(e)
        rows.append(
            GhwRow(
                r=r,
                d_closed=d_closed,
                d_brute=d_brute,
                reference=reference_values.get(r),
                witness=witness,
                note=note,
            )
        )
    return GhwReport(spec=spec, rows=tuple(rows))
