"""The two code families and their weight data.

A homogeneous code evaluates a*Q(x) + Tr(b*y) over all points (x, y) except
the origin; the affine variant appends a constant c and keeps the origin.
Weight distributions and complete weight enumerators are computed two ways:

* ``brute``: exact enumeration.  Per message, the composition vector comes
  from histogram counts of a*Q(x) and Tr(b*y) (every point is counted
  exactly once; no codeword vector is materialized).  ``audit=True`` visits
  every message; the default visits one representative per stratum
  (origin / b nonzero / a nonzero split by the character of a, and by c),
  scales by the stratum size, and spot-checks constancy and injectivity on
  random members.
* ``predicted``: direct instantiation of the closed-form tables, exact
  rational arithmetic with an integrality assertion.

Disagreement between the two routes is surfaced, never reconciled.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, DEFAULT_BUDGET, ParameterError
from .fields import Elem
from .quadform import QuadFormAnalysis

__all__ = [
    "Variant",
    "CodeSpec",
    "WeightDistribution",
    "CWE",
    "codeword",
    "weight_distribution_brute",
    "weight_distribution_predicted",
    "cwe_brute",
    "cwe_predicted",
    "griesmer_check",
    "GriesmerResult",
    "ab_minimality",
    "ABResult",
    "apply_symbol_permutation",
    "eta_matching_permutation",
]


class Variant(enum.Enum):
    HOMOGENEOUS = "homogeneous"
    AFFINE = "affine"


@dataclass(frozen=True)
class CodeSpec:
    """A code family instance: tower + analyzed form + variant."""

    analysis: QuadFormAnalysis
    variant: Variant

    @property
    def tower(self):
        return self.analysis.tower

    @property
    def length(self) -> int:
        n = self.tower.q ** self.tower.M
        return n if self.variant is Variant.AFFINE else n - 1

    @property
    def dimension(self) -> int:
        k = self.tower.m2 + 1
        return k + 1 if self.variant is Variant.AFFINE else k

    @property
    def num_messages(self) -> int:
        return self.tower.q**self.dimension

    def params(self) -> tuple[int, int, int]:
        """(n, k, q); the distance comes from a weight distribution."""
        return (self.length, self.dimension, self.tower.q)


# ---------------------------------------------------------------------------
# weight data containers
# ---------------------------------------------------------------------------


class WeightDistribution:
    """Map weight -> frequency with arbitrary-precision frequencies."""

    def __init__(self, counts: dict[int, int]):
        self._counts = {w: f for w, f in counts.items() if f}

    def __getitem__(self, w: int) -> int:
        return self._counts.get(w, 0)

    def items(self):
        return sorted(self._counts.items())

    def as_dict(self) -> dict[int, int]:
        return dict(self._counts)

    def total(self) -> int:
        return sum(self._counts.values())

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self._counts if w > 0)

    def min_nonzero(self) -> int:
        return min(w for w in self._counts if w > 0)

    def max_nonzero(self) -> int:
        return max(w for w in self._counts if w > 0)

    def __eq__(self, other):
        return isinstance(other, WeightDistribution) and self._counts == other._counts

    def __repr__(self):
        inner = ", ".join(f"{w}: {f}" for w, f in self.items())
        return f"WeightDistribution({{{inner}}})"


class CWE:
    """Multiset of per-codeword composition vectors (counts of each symbol)."""

    def __init__(self, counts: dict[tuple[int, ...], int]):
        self._counts = {c: m for c, m in counts.items() if m}

    def __getitem__(self, comp: tuple[int, ...]) -> int:
        return self._counts.get(tuple(comp), 0)

    def items(self):
        return sorted(self._counts.items())

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self._counts)

    def total(self) -> int:
        return sum(self._counts.values())

    def weight_marginal(self) -> WeightDistribution:
        out: dict[int, int] = {}
        for comp, mult in self._counts.items():
            w = sum(comp[1:])
            out[w] = out.get(w, 0) + mult
        return WeightDistribution(out)

    def __eq__(self, other):
        return isinstance(other, CWE) and self._counts == other._counts

    def __repr__(self):
        return f"CWE({len(self._counts)} distinct compositions, total {self.total()})"


def apply_symbol_permutation(cwe: CWE, perm: dict[int, int]) -> CWE:
    """Relabel nonzero symbol positions; perm maps source pos -> target pos."""
    out: dict[tuple[int, ...], int] = {}
    for comp, mult in cwe.items():
        new = [0] * len(comp)
        new[0] = comp[0]
        for rho in range(1, len(comp)):
            new[perm.get(rho, rho)] = comp[rho]
        key = tuple(new)
        out[key] = out.get(key, 0) + mult
    return CWE(out)


def eta_matching_permutation(our_pattern, target_pattern) -> dict[int, int]:
    """Bijection of nonzero symbol positions sending our eta pattern onto the
    target's, preserving relative order inside each sign class."""
    if sorted(our_pattern) != sorted(target_pattern):
        raise ParameterError("eta patterns are not rearrangements of each other")
    perm: dict[int, int] = {}
    by_sign: dict[int, list[int]] = {}
    for pos, s in enumerate(target_pattern, start=1):
        by_sign.setdefault(s, []).append(pos)
    for pos, s in enumerate(our_pattern, start=1):
        perm[pos] = by_sign[s].pop(0)
    return perm


# ---------------------------------------------------------------------------
# codeword construction
# ---------------------------------------------------------------------------


def codeword(spec: CodeSpec, a: Elem, b: Elem, c: Elem | None = None) -> list[int]:
    """The evaluation vector, as F_q indices in canonical (x, y) order."""
    tower = spec.tower
    Fq, Fq1, Fq2 = tower.Fq, tower.Fq1, tower.Fq2
    if a.field is not Fq or b.field is not Fq2:
        raise ParameterError("message must lie in F_q x F_{q^m2}")
    if (c is not None) != (spec.variant is Variant.AFFINE):
        raise ParameterError(
            f"variant {spec.variant.value} expects "
            f"{'a constant c' if spec.variant is Variant.AFFINE else 'no constant'}"
        )
    if c is not None and c.field is not Fq:
        raise ParameterError("c must lie in F_q")
    qtab = spec.analysis.form.value_table
    tr = Fq2.trace_table(Fq) if Fq2 is not Fq else None
    c_idx = c.idx if c is not None else 0
    out = []
    skip_origin = spec.variant is Variant.HOMOGENEOUS
    for x in Fq1.omega:
        aq = Fq.add(Fq.mul(a.idx, int(qtab[x])), c_idx)
        for y in Fq2.omega:
            if skip_origin and x == 0 and y == 0:
                continue
            by = Fq2.mul(b.idx, y)
            w = int(tr[by]) if tr is not None else by
            out.append(Fq.add(aq, w))
    return out


# ---------------------------------------------------------------------------
# brute-force enumeration engine
# ---------------------------------------------------------------------------


class _Enumerator:
    """Shared histogram machinery for per-message compositions."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        tower = spec.tower
        self.Fq, self.Fq1, self.Fq2 = tower.Fq, tower.Fq1, tower.Fq2
        self.q = tower.q
        self.hist_q = [int(v) for v in spec.analysis.form.value_histogram]
        tr = self.Fq2.trace_table(self.Fq) if self.Fq2 is not self.Fq else None
        self._tr = tr
        # per-b histograms of Tr(b*y), built lazily
        self._hist_t: dict[int, list[int]] = {}

    def hist_trace(self, b_idx: int) -> list[int]:
        h = self._hist_t.get(b_idx)
        if h is None:
            Fq2, q = self.Fq2, self.q
            h = [0] * q
            if self._tr is None:
                for y in range(Fq2.order):
                    h[Fq2.mul(b_idx, y)] += 1
            else:
                tr = self._tr
                for y in range(Fq2.order):
                    h[int(tr[Fq2.mul(b_idx, y)])] += 1
            self._hist_t[b_idx] = h
        return h

    def value_profile(self, a_idx: int, b_idx: int) -> list[int]:
        """Count of points where a*Q(x) + Tr(b*y) takes each F_q value."""
        Fq, q = self.Fq, self.q
        ha = [0] * q
        for v, cnt in enumerate(self.hist_q):
            if cnt:
                ha[Fq.mul(a_idx, v)] += cnt
        hb = self.hist_trace(b_idx)
        by_value = [0] * q
        for v in range(q):
            av = ha[v]
            if av:
                for w in range(q):
                    bw = hb[w]
                    if bw:
                        by_value[Fq.add(v, w)] += av * bw
        return by_value

    def comp_from_profile(self, by_value, c_idx: int) -> tuple[int, ...]:
        """Adding the constant c permutes symbol counts; reindex by omega."""
        Fq, q = self.Fq, self.q
        comp = [by_value[Fq.sub(Fq.omega[j], c_idx)] for j in range(q)]
        if self.spec.variant is Variant.HOMOGENEOUS:
            comp[0] -= 1  # the excluded origin always evaluates to zero
        return tuple(comp)

    def composition(self, a_idx: int, b_idx: int, c_idx: int = 0) -> tuple[int, ...]:
        """Counts of each symbol (in omega order) over the evaluation points."""
        return self.comp_from_profile(self.value_profile(a_idx, b_idx), c_idx)

    # message streams ------------------------------------------------------

    def all_compositions(self):
        """(message, composition) over the whole space; one profile per (a, b)."""
        q2 = self.Fq2.order
        affine = self.spec.variant is Variant.AFFINE
        for a in range(self.q):
            for b in range(q2):
                prof = self.value_profile(a, b)
                for c in range(self.q) if affine else (0,):
                    yield (a, b, c), self.comp_from_profile(prof, c)

    def strata(self):
        """(representative message, exact stratum size) covering the space."""
        q, q2 = self.q, self.Fq2.order
        Fq = self.Fq
        a_sq = 1
        a_ns = Fq.gen  # the generator is never a square (q odd)
        half = (q - 1) // 2
        first_b = next(b for b in range(1, q2))
        if self.spec.variant is Variant.HOMOGENEOUS:
            yield (0, 0, 0), 1
            yield (0, first_b, 0), q * (q2 - 1)
            yield (a_sq, 0, 0), half
            yield (a_ns, 0, 0), half
        else:
            for c in range(q):
                yield (0, 0, c), 1
            yield (0, first_b, 0), q * q * (q2 - 1)
            for c in range(q):
                yield (a_sq, 0, c), half
                yield (a_ns, 0, c), half

    def stratum_members(self, rep, rng, k=2):
        """Random messages from the same stratum as ``rep`` (for spot checks)."""
        a, b, c = rep
        q, q2 = self.q, self.Fq2.order
        Fq = self.Fq
        out = []
        for _ in range(k):
            if b != 0:
                out.append(
                    (rng.randrange(q), rng.randrange(1, q2),
                     c if self.spec.variant is Variant.HOMOGENEOUS else rng.randrange(q))
                )
            elif a != 0:
                sign = Fq.eta(a)
                while True:
                    a2 = rng.randrange(1, q)
                    if Fq.eta(a2) == sign:
                        break
                out.append((a2, 0, c))
            else:
                out.append(rep)
        return out


def _check_budget(spec: CodeSpec, audit: bool, budget: int):
    q, q2 = spec.tower.q, spec.tower.Fq2.order
    if audit:
        cost = q * q2 * (q + q2) + spec.num_messages * q
    else:
        cost = 12 * q * (q + q2)
    if cost > budget:
        raise BudgetError(cost, budget, "message-space enumeration")


def _accumulate(spec: CodeSpec, audit: bool, budget: int, seed: int = 1701):
    _check_budget(spec, audit, budget)
    eng = _Enumerator(spec)
    counts: dict[tuple[int, ...], int] = {}
    if audit:
        zero_weight_msgs = 0
        for msg, comp in eng.all_compositions():
            counts[comp] = counts.get(comp, 0) + 1
            if msg != (0, 0, 0) and sum(comp[1:]) == 0:
                zero_weight_msgs += 1
        if zero_weight_msgs:
            raise ArithmeticError(
                f"{zero_weight_msgs} nonzero messages map to the zero codeword"
            )
        return counts
    rng = random.Random(seed)
    for rep, size in eng.strata():
        comp = eng.composition(*rep)
        if rep != (0, 0, 0) and sum(comp[1:]) == 0:
            raise ArithmeticError("nonzero stratum representative has weight 0")
        for member in eng.stratum_members(rep, rng):
            if eng.composition(*member) != comp:
                raise ArithmeticError(
                    f"stratum of {rep} is not composition-constant at {member}"
                )
        counts[comp] = counts.get(comp, 0) + size
    return counts


def cwe_brute(spec: CodeSpec, audit: bool = False, budget: int = DEFAULT_BUDGET) -> CWE:
    return CWE(_accumulate(spec, audit, budget))


def weight_distribution_brute(
    spec: CodeSpec, audit: bool = False, budget: int = DEFAULT_BUDGET
) -> WeightDistribution:
    return cwe_brute(spec, audit, budget).weight_marginal()


# ---------------------------------------------------------------------------
# closed-form predictions
# ---------------------------------------------------------------------------


def _as_int(x: Fraction) -> int:
    assert x.denominator == 1 and x >= 0, x
    return int(x)


def weight_distribution_predicted(spec: CodeSpec) -> WeightDistribution:
    """Instantiate the four weight tables; duplicate rows merge."""
    tower = spec.tower
    q, M = tower.q, tower.M
    an = spec.analysis
    r, eps = an.r_q, an.eps
    qM1 = Fraction(q) ** (M - 1)
    rows: list[tuple[Fraction, int]] = [(Fraction(0), 1)]
    if spec.variant is Variant.HOMOGENEOUS:
        if r % 2 == 0:
            rows.append((qM1 * (q - 1), q * (q**tower.m2 - 1)))
            rows.append((qM1 * (q - 1) * (1 - Fraction(eps, q ** (r // 2))), q - 1))
        else:
            rows.append((qM1 * (q - 1), q ** (tower.m2 + 1) - 1))
    else:
        half_pow = (
            Fraction(eps, q ** (r // 2))
            if r % 2 == 0
            else eps * Fraction(q) ** ((1 - r) // 2)
        )
        rows.append((Fraction(q**M), q - 1))
        if r % 2 == 0:
            rows.append((qM1 * (q - 1), q * q * (q**tower.m2 - 1)))
            rows.append((qM1 * (q - 1) * (1 - half_pow), q - 1))
            rows.append((qM1 * (q - 1 + half_pow), (q - 1) ** 2))
        else:
            rows.append((qM1 * (q - 1), q * q * (q**tower.m2 - 1) + q - 1))
            rows.append((qM1 * (q - 1 - half_pow), (q - 1) ** 2 // 2))
            rows.append((qM1 * (q - 1 + half_pow), (q - 1) ** 2 // 2))
    out: dict[int, int] = {}
    for w, f in rows:
        wi = _as_int(w)
        out[wi] = out.get(wi, 0) + f
    return WeightDistribution(out)


def cwe_predicted(spec: CodeSpec) -> CWE:
    """Instantiate the closed-form composition formulas under the canonical
    symbol ordering (character values evaluated, not assumed)."""
    tower = spec.tower
    Fq = tower.Fq
    q, M = tower.q, tower.M
    an = spec.analysis
    r, eps = an.r_q, an.eps
    n = spec.length
    qM1 = Fraction(q) ** (M - 1)
    omega = Fq.omega
    counts: dict[tuple[int, ...], int] = {}

    def put(comp, mult):
        comp = tuple(_as_int(k) for k in comp)
        counts[comp] = counts.get(comp, 0) + mult

    if spec.variant is Variant.HOMOGENEOUS:
        put([Fraction(n)] + [Fraction(0)] * (q - 1), 1)
        put([qM1 - 1] + [qM1] * (q - 1), q * (q**tower.m2 - 1))
        if r % 2 == 0:
            t = Fraction(eps, q ** (r // 2))
            put(
                [qM1 * (1 + t * (q - 1)) - 1] + [qM1 * (1 - t)] * (q - 1),
                q - 1,
            )
        else:
            t = eps * Fraction(q) ** ((1 - r) // 2)
            for sign in (1, -1):
                comp = [qM1 - 1]
                for rho in range(1, q):
                    e = Fq.eta(Fq.neg(omega[rho]))
                    comp.append(qM1 * (1 + sign * t * e))
                put(comp, (q - 1) // 2)
    else:
        for i in range(q):
            comp = [Fraction(0)] * q
            comp[i] = Fraction(q**M)
            put(comp, 1)
        put([qM1] * q, q * q * (q**tower.m2 - 1))
        if r % 2 == 0:
            t = Fraction(eps, q ** (r // 2))
            t1 = qM1 * (1 + t * (q - 1))
            t2 = qM1 * (1 - t)
            for i in range(q):
                comp = [t2] * q
                comp[i] = t1
                put(comp, q - 1)
        else:
            t = eps * Fraction(q) ** ((1 - r) // 2)
            for i in range(q):
                for sign in (1, -1):
                    comp = []
                    for rho in range(q):
                        if rho == i:
                            comp.append(qM1)
                        else:
                            e = Fq.eta(Fq.sub(omega[i], omega[rho]))
                            comp.append(qM1 * (1 + sign * t * e))
                    put(comp, (q - 1) // 2)
    return CWE(counts)


# ---------------------------------------------------------------------------
# bound checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GriesmerResult:
    bound_sum: int
    length: int

    @property
    def meets(self) -> bool:
        return self.bound_sum == self.length

    @property
    def exceeds_by(self) -> int:
        return self.length - self.bound_sum

    @property
    def verdict(self) -> str:
        return "meets" if self.meets else f"exceeds-by {self.exceeds_by}"


def griesmer_check(n: int, k: int, d: int, q: int) -> GriesmerResult:
    """Compare n against sum of ceil(d / q**i) for i < k."""
    if k < 1 or d < 1:
        raise ParameterError("need k >= 1 and d >= 1")
    s = sum(-(-d // q**i) for i in range(k))
    return GriesmerResult(bound_sum=s, length=n)


@dataclass(frozen=True)
class ABResult:
    w_min: int
    w_max: int
    q: int

    @property
    def minimal(self) -> bool:
        return self.w_min * self.q > self.w_max * (self.q - 1)

    @property
    def verdict(self) -> str:
        return "minimal-by-AB" if self.minimal else "inconclusive"


def ab_minimality(wd: WeightDistribution, q: int) -> ABResult:
    """Sufficient minimality condition w_min/w_max > (q-1)/q, exact integers."""
    return ABResult(w_min=wd.min_nonzero(), w_max=wd.max_nonzero(), q=q)
