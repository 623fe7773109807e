import pytest

from qfcodes import (
    BudgetError,
    ParameterError,
    Variant,
    gaussian_binomial,
    get_preset,
    ghw_brute,
    ghw_closed,
    hierarchy,
    prime_field,
    subspace_bases,
    support_defect,
    support_defect_char,
    support_defect_closed,
    weight_distribution_brute,
)

from conftest import spec_for, EXAMPLE_NAMES


def test_subspace_counts():
    F3 = prime_field(3)
    assert gaussian_binomial(4, 2, 3) == 130
    assert len(list(subspace_bases(4, 2, F3))) == 130
    assert len(list(subspace_bases(2, 1, F3))) == 4
    assert len(list(subspace_bases(3, 3, F3))) == 1
    # no duplicates, rows in reduced echelon form
    seen = set(subspace_bases(4, 2, F3))
    assert len(seen) == 130
    for rows in seen:
        pivots = [next(i for i, x in enumerate(row) if x) for row in rows]
        assert pivots == sorted(pivots)
        for i, row in enumerate(rows):
            assert row[pivots[i]] == 1
            for j, other in enumerate(rows):
                if i != j:
                    assert other[pivots[i]] == 0


def test_subspace_counts_larger_field():
    F5 = prime_field(5)
    assert len(list(subspace_bases(3, 1, F5))) == gaussian_binomial(3, 1, 5) == 31
    with pytest.raises(ParameterError):
        list(subspace_bases(2, 3, F5))


def test_support_defect_examples(ex31):
    tw = ex31.tower
    h_one_zero = ((1, 0, 0, 0),)
    assert support_defect(ex31, h_one_zero) == 566
    assert support_defect_closed(ex31, h_one_zero) == 566
    assert support_defect_char(ex31, h_one_zero) == 566
    h_zero_b = ((0, 1, 0, 0),)
    assert support_defect(ex31, h_zero_b) == 3**6 - 1


def test_support_defect_full_space_affine(ex35, ex36):
    for spec in (ex35, ex36):
        k = spec.dimension
        full = next(subspace_bases(k, k, spec.tower.Fq))
        assert support_defect(spec, full) == 0
        assert support_defect_closed(spec, full) == 0


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_support_defect_closed_everywhere(name):
    """Closed form equals the exhaustive count on every canonical subspace."""
    spec = spec_for(name)
    k, q = spec.dimension, spec.tower.q
    for r in range(1, k + 1):
        if gaussian_binomial(k, r, q) > 10**5:
            continue
        for rows in subspace_bases(k, r, spec.tower.Fq):
            assert support_defect(spec, rows) == support_defect_closed(spec, rows)


@pytest.mark.parametrize("name", ["example-3.3", "example-3.4"])
def test_odd_rank_defect_constancy(name):
    spec = spec_for(name)
    tw = spec.tower
    if spec.analysis.r_q % 2 == 0 or spec.variant is not Variant.HOMOGENEOUS:
        pytest.skip("constancy is an odd-rank homogeneous statement")
    for r in range(1, spec.dimension + 1):
        expect = tw.q ** (tw.M - r) - 1
        for rows in subspace_bases(spec.dimension, r, tw.Fq):
            assert support_defect(spec, rows) == expect


def test_ghw_closed_pinned_values(ex32, ex34, ex35):
    assert ghw_closed(ex32, 3) == 3120
    assert [ghw_closed(ex34, r) for r in (1, 2, 3, 4)] == [2500, 3000, 3100, 3120]
    assert ghw_closed(ex35, 5) == 6561


@pytest.mark.parametrize(
    "name",
    ["example-3.1", "example-3.2", "example-3.4", "example-3.6"],
)
def test_hierarchies_match_reference(name):
    spec = spec_for(name)
    ref = get_preset(name).reference["hierarchy"]
    rep = hierarchy(spec, reference_values=ref)
    assert rep.all_agree
    assert rep.resolved_hierarchy() == [ref[r] for r in sorted(ref)]
    assert rep.strictly_increasing()


def test_hierarchy_example_33_three_way(ex33):
    ref = get_preset("example-3.3").reference["hierarchy"]
    rep = hierarchy(ex33, reference_values=ref)
    rows = {row.r: row for row in rep.rows}
    assert rows[1].agree and rows[3].agree
    assert rows[2].reference == 52830
    assert rows[2].d_closed == 58320
    assert rows[2].d_brute == 58320  # brute force arbitrates against the print
    assert not rows[2].agree
    assert rep.resolved_hierarchy() == [52488, 58320, 58968]


def test_hierarchy_example_35_three_way(ex35):
    ref = get_preset("example-3.5").reference["hierarchy"]
    rep = hierarchy(ex35, reference_values=ref)
    rows = {row.r: row for row in rep.rows}
    for r in (1, 3, 4, 5):
        assert rows[r].agree
    assert (rows[2].reference, rows[2].d_closed, rows[2].d_brute) == (5741, 5751, 5751)
    assert not rows[2].agree


def test_d1_is_minimum_distance(example_spec):
    d1, _ = ghw_brute(example_spec, 1)
    assert d1 == weight_distribution_brute(example_spec).min_nonzero()


def test_dk_counts_always_zero_coordinates(example_spec):
    """d_k = n minus the number of coordinates that vanish on every message;
    the affine family has none, the homogeneous one loses the x with Q = 0."""
    spec = example_spec
    k = spec.dimension
    full = next(subspace_bases(k, k, spec.tower.Fq))
    always_zero = support_defect(spec, full)
    d_k, _ = ghw_brute(spec, k)
    assert d_k == spec.length - always_zero
    if spec.variant is Variant.AFFINE:
        assert always_zero == 0 and d_k == spec.length
    else:
        n_qzero = sum(
            1 for v in spec.analysis.form.value_table if v == 0
        )
        assert always_zero == n_qzero - 1


def test_monotonicity(example_spec):
    rep = hierarchy(example_spec)
    assert rep.strictly_increasing()


def test_budget_error_keeps_closed_values(ex36):
    rep = hierarchy(ex36, budget=100)
    for row in rep.rows:
        assert row.d_closed > 0
        if gaussian_binomial(ex36.dimension, row.r, 3) > 100:
            assert row.d_brute is None and "budget" in row.note
    with pytest.raises(BudgetError):
        ghw_brute(ex36, 3, budget=10)


def test_witness_attains_maximum(ex31):
    d2, witness = ghw_brute(ex31, 2)
    assert support_defect(ex31, witness) == ex31.length - d2


def test_threads_deterministic(ex31):
    rep1 = hierarchy(ex31, threads=1)
    rep2 = hierarchy(ex31, threads=3)
    assert [r.d_brute for r in rep1.rows] == [r.d_brute for r in rep2.rows]
    assert [r.witness for r in rep1.rows] == [r.witness for r in rep2.rows]
