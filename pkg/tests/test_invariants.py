import pytest

from syzlab.catalog import fermat, one_node, one_node_job
from syzlab.errors import (DegreeTooSmall, EigenvalueOutOfRange, IndexOutOfRange, NotNodal,
                           RouteMismatch, SmoothInput)
from syzlab.invariants import (SMOOTH, HypersurfaceJob, coincidence_threshold, condition_b_prime,
                               defect_via_ct, eigenspace_grf_dim, grf_complement_dim,
                               minimal_syzygy_degree, sernesi_deformation_dim, theorem_bounds,
                               thmC_applicable, verify_vanishing_and_sharpness)
from syzlab.koszul import milnor_dim, smooth_milnor_dim
from syzlab.linalg import SparseMatrix, dense_rational_rank
from syzlab.nodal import NodeSet, chebyshev_hypersurface, symbolic_power_dim
from syzlab.poly import graded_monomials, jacobian, parse_poly


def test_ct_and_mdr_examples(cheb34, fermat_cubic):
    assert coincidence_threshold(cheb34) == 5
    assert minimal_syzygy_degree(cheb34) == 3
    assert coincidence_threshold(fermat_cubic) is SMOOTH
    assert minimal_syzygy_degree(fermat_cubic) is SMOOTH
    f, _ = one_node_job(3, 3)
    assert coincidence_threshold(f) == 4
    assert minimal_syzygy_degree(f) == 3


def test_quadric_rejected():
    with pytest.raises(DegreeTooSmall):
        coincidence_threshold(parse_poly("x0^2 + x1^2 + x2^2"))
    with pytest.raises(DegreeTooSmall):
        verify_vanishing_and_sharpness(HypersurfaceJob(parse_poly("x0*x1 + x2^2 + x3^2")))


def test_theorem_bounds():
    b = theorem_bounds(3, 4)
    assert (b.thmA, b.thmB, b.corA, b.T, b.k0) == (4, 5, 5, 8, 1)
    b = theorem_bounds(3, 20)
    assert (b.thmB, b.corA) == (29, 45)
    b = theorem_bounds(4, 3)
    assert (b.thmA, b.thmB) == (5, None)


def test_vanishing_sharp_on_chebyshev_quartic(cheb34, cheb34_nodes):
    v = verify_vanishing_and_sharpness(HypersurfaceJob(cheb34, cheb34_nodes))
    assert v.passed and v.sharp and v.first_nonzero == 6
    assert v.hypothesis == "VERIFIED-NODES"
    assert v.mdr == coincidence_threshold(cheb34) - 2


def test_vanishing_on_fermat_is_vacuous(fermat_cubic):
    v = verify_vanishing_and_sharpness(HypersurfaceJob(fermat_cubic))
    assert v.passed and v.first_nonzero is None and v.hypothesis == "TAU-STABLE"


def test_non_isolated_singularities_refused_unless_forced():
    f = parse_poly("x0^2*x1 + x0^2*x2")  # singular along the line x0 = 0
    with pytest.raises(NotNodal):
        verify_vanishing_and_sharpness(HypersurfaceJob(f))
    forced = verify_vanishing_and_sharpness(HypersurfaceJob(f, force=True))
    assert forced.hypothesis == "UNVERIFIED-HYPOTHESIS"


def test_grf_fermat_quartic():
    f = fermat(3, 4)
    assert grf_complement_dim(f, None, 1) == 1 == milnor_dim(f, 8)
    assert grf_complement_dim(f, None, 0) == milnor_dim(f, 12)
    with pytest.raises(IndexOutOfRange):
        grf_complement_dim(f, None, 2)


def test_grf_one_node_cubic_against_dense_oracle():
    f, nodes = one_node_job(3, 3)
    # i = 1, K = 5.  The node is (0:0:0:1), so I_3 is spanned by the cubics other than x3^3.
    cubics = [m for m in graded_monomials(4, 3).monomials if m != (0, 0, 0, 3)]
    assert len(cubics) == symbolic_power_dim(nodes, 1, 3)
    rows = graded_monomials(4, 5).index
    cols = []
    for g in jacobian(f):
        for m in cubics:
            col = {}
            for e, c in g.terms:
                r = rows[tuple(a + b for a, b in zip(m, e))]
                col[r] = col.get(r, 0) + c
            cols.append(col)
    products = dense_rational_rank(SparseMatrix.from_columns(len(rows), cols))
    value = grf_complement_dim(f, nodes, 1)
    assert value == symbolic_power_dim(nodes, 2, 5) - products == 0


def test_condition_b_prime(cheb34, cheb34_nodes):
    f, nodes = one_node_job(3, 3)
    b = condition_b_prime(f, nodes, 1)
    assert b.holds and b.e == 1 and not b.vacuous
    assert condition_b_prime(cheb34, cheb34_nodes, 0).holds
    b = condition_b_prime(cheb34, cheb34_nodes, 1)
    assert not b.holds and b.e == 2
    assert condition_b_prime(cheb34, cheb34_nodes, 0).e == 3


def test_thmC_applicability():
    assert thmC_applicable(4, 5, 1)
    assert thmC_applicable(3, 3, 1)
    app = thmC_applicable(3, 4, 1)
    assert not app and "p = 1 > " in app.reason


def test_eigenspace_dims():
    assert eigenspace_grf_dim(3, 5, 1) == 10
    assert eigenspace_grf_dim(3, 4, 1) == 4
    assert theorem_bounds(3, 3).k0 == 1 and eigenspace_grf_dim(3, 3, 1) == 1
    with pytest.raises(EigenvalueOutOfRange):
        eigenspace_grf_dim(3, 4, 2)


def test_eigenspace_matches_chebyshev_milnor():
    # dimension identity in the range k <= k0: nodal and smooth Milnor algebras agree there
    for d in (4, 5, 6):
        f = chebyshev_hypersurface(3, d)
        k0 = theorem_bounds(3, d).k0
        for k in range(1, k0 + 1):
            assert eigenspace_grf_dim(3, d, k) == milnor_dim(f, d + k - 4)


def test_sernesi():
    s = sernesi_deformation_dim(one_node(3, 3))
    assert s.value == milnor_dim(one_node(3, 3), 3) - 4 + 4 - 1 == 3
    t = sernesi_deformation_dim(chebyshev_hypersurface(3, 4))
    assert t.agreement
    assert t.value == sernesi_deformation_dim(chebyshev_hypersurface(3, 4)).value


def test_defect_via_ct(cheb34, cheb34_nodes):
    assert defect_via_ct(cheb34, 3, nodes=cheb34_nodes)
    assert not defect_via_ct(cheb34, 2, nodes=cheb34_nodes)
    f, nodes = one_node_job(3, 3)
    assert defect_via_ct(f, 0, nodes=nodes)
    with pytest.raises(SmoothInput):
        defect_via_ct(fermat(3, 3), 1)


def test_defect_via_ct_detects_wrong_nodes(cheb34):
    wrong = NodeSet(4, ((1, 0, 0, 0),))
    with pytest.raises(RouteMismatch):
        defect_via_ct(cheb34, 0, nodes=wrong)


def test_smooth_dim_identity_below_k0():
    for d in range(3, 8):
        k0 = theorem_bounds(3, d).k0
        for k in range(1, k0 + 1):
            assert eigenspace_grf_dim(3, d, k) == smooth_milnor_dim(3, d, d + k - 4)


@pytest.mark.parametrize("d", range(3, 12))
def test_eigenspace_dims_nondecreasing(d):
    k0 = theorem_bounds(3, d).k0
    dims = [eigenspace_grf_dim(3, d, k) for k in range(1, k0 + 1)]
    assert dims == sorted(dims)
