from fractions import Fraction

import pytest

from k3quartic.lattices import (
    A1_GRAM,
    E7_GRAM,
    Obstructed,
    RealizationVector,
    U_GRAM,
    certificate_basis,
    direct_sum,
    form_value,
    gaussian_block_gram,
    gram_build,
    hermitian_det_identity,
    j_apply,
    kummer_tn,
    lattice_invariants,
    mat_det,
    mat_mul,
    mat_transpose,
    neron_severi_gram,
    pair_gram,
    rank4_classification_check,
    signature,
    smith_normal_form,
    tn_gram,
    tn_obstruction_evidence,
    tn_search,
    transcendental_gram,
    twist,
)


def test_neron_severi_invariants():
    inv = lattice_invariants(neron_severi_gram())
    assert inv.rank == 18
    assert inv.signature == (1, 17)
    assert abs(inv.determinant) == 16
    assert inv.invariant_factors[-4:] == (2, 2, 2, 2)
    assert inv.ell == 4
    assert inv.two_elementary
    assert inv.delta == 1


def test_transcendental_invariants():
    inv = lattice_invariants(transcendental_gram())
    assert inv.rank == 4
    assert inv.signature == (2, 2)
    assert inv.determinant == 16
    assert inv.invariant_factors == (2, 2, 2, 2)
    assert inv.ell == 4
    assert inv.two_elementary
    assert inv.delta == 1


def test_hyperbolic_plane_invariants():
    inv = lattice_invariants(U_GRAM)
    assert inv.signature == (1, 1)
    assert inv.determinant == -1
    assert inv.ell == 0


def test_e7_convention():
    inv = lattice_invariants(E7_GRAM)
    assert inv.signature == (0, 7)
    assert inv.determinant == -2
    assert inv.ell == 1


def test_gram_build():
    assert gram_build("A1(-1)") == [[-2]]
    assert gram_build("U+E7+E7+A1(-1)+A1(-1)") == neron_severi_gram()
    assert gram_build("A1+A1+A1(-1)+A1(-1)") == transcendental_gram()
    assert gram_build("U(2)") == [[0, 2], [2, 0]]
    with pytest.raises(ValueError):
        gram_build("E8")


def test_direct_sum_multiplicativity():
    combined = lattice_invariants(direct_sum(U_GRAM, E7_GRAM))
    u, e7 = lattice_invariants(U_GRAM), lattice_invariants(E7_GRAM)
    assert combined.rank == u.rank + e7.rank
    assert combined.signature == (u.signature[0] + e7.signature[0],
                                  u.signature[1] + e7.signature[1])
    assert combined.determinant == u.determinant * e7.determinant


def test_smith_normal_form_transforms():
    for mat in (U_GRAM, E7_GRAM, transcendental_gram(), [[4, 2], [2, 4]]):
        d, left, right = smith_normal_form(mat)
        prod = mat_mul(left, mat_mul(mat, right))
        n = len(mat)
        assert prod == [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
        assert abs(mat_det(left)) == 1
        assert abs(mat_det(right)) == 1
        for i in range(len(d) - 1):
            if d[i]:
                assert d[i + 1] % d[i] == 0


def test_degenerate_rejected():
    with pytest.raises(ValueError):
        lattice_invariants([[0, 0], [0, 2]])
    with pytest.raises(ValueError):
        lattice_invariants([[1, 2], [3, 4]])  # not symmetric


def test_tn_small_cases():
    expected = {1: (1, 0, 0, 0), 3: (2, 0, 1, 0), 4: (2, 1, 1, 0), 7: (4, 0, 3, 0)}
    for n, vec in expected.items():
        r = tn_search(n)
        assert isinstance(r, RealizationVector)
        assert r.a == vec
        assert r.n == n
        assert r.gram() == tn_gram(n)
        assert r.gcd == 1


def test_tn_obstruction():
    r = tn_search(2, evidence_bound=12)
    assert isinstance(r, Obstructed)
    assert any("1,1,0,0" in line for line in r.transcript)
    assert r.evidence == {"bound": 12, "candidates": 756, "primitive_found": 0}
    assert isinstance(tn_search(6), Obstructed)
    assert tn_search(6).evidence is None


def test_tn_input_validation():
    with pytest.raises(ValueError):
        tn_search(0)
    with pytest.raises(ValueError):
        tn_search(-3)


def test_realization_vector_rejects_imprimitive():
    with pytest.raises(ValueError):
        RealizationVector((2, 2, 2, 0))
    with pytest.raises(ValueError):
        RealizationVector((1, 0, 1, 0))  # form value 0


def test_j_structure():
    for a in ((1, 2, 3, 4), (5, 0, -2, 1), (0, 1, 0, 0)):
        assert j_apply(j_apply(a)) == tuple(-x for x in a)
        assert form_value(j_apply(a)) == form_value(a)
        g = pair_gram(a)
        assert g[0][1] == 0 and g[1][0] == 0
        assert g[0][0] == g[1][1] == 2 * form_value(a)


def test_kummer_lattices():
    assert kummer_tn(1) == [[4, 0], [0, 4]]
    # diag(4,4) is the n=2 Gram, which the family never realizes
    assert isinstance(tn_search(2), Obstructed)
    assert kummer_tn(2) == tn_gram(4)
    assert isinstance(tn_search(4), RealizationVector)
    assert kummer_tn(3) == tn_gram(6)
    assert isinstance(tn_search(6), Obstructed)
    with pytest.raises(ValueError):
        kummer_tn(0)


def test_hermitian_det_identity():
    for tup in ((1, -1, 0, 0), (2, 3, 1, -2), (-4, -1, -4, -2), (0, 5, 2, 0)):
        assert hermitian_det_identity(*tup)


def test_rank4_classification():
    r = rank4_classification_check(bound=4)
    assert len(r.survivors) == 142
    assert len(r.delta_one) == 90
    assert len(r.delta_zero) == 52
    assert r.det_identity
    assert r.all_certified
    assert r.canonical == [(-1, 1), (1, -1)]
    assert (1, 1, 0, 0) not in r.survivors
    # the determinant constraint forces the off-diagonal block even
    assert all(b % 2 == 0 and c % 2 == 0 for (_, _, b, c) in r.survivors)


def test_certificate_is_checkable():
    gram = gaussian_block_gram(-4, -1, -4, -2)
    p = certificate_basis(gram)
    assert p is not None
    assert abs(mat_det(p)) == 1
    target = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, -2, 0], [0, 0, 0, -2]]
    assert mat_mul(mat_transpose(p), mat_mul(gram, p)) == target


def test_twist_and_build_consistency():
    assert twist(A1_GRAM, -1) == [[-2]]
    assert gram_build("T") == transcendental_gram()
    assert gram_build("N") == neron_severi_gram()
