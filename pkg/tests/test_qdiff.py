import pytest

from qwhittaker.exactnum import ONE, exact
from qwhittaker.qdiff import (DiagonalCollisionError, OperatorRemainderError, Term, apply_operator,
                              triangular_eigenvector)
from qwhittaker.weyl import InvariantPoly, dominated

Q = exact("1/4")


def test_symmetric_pair_of_rational_terms_sums_to_polynomial():
    # 1/(1 - z^2) + 1/(1 - z^-2) = 1
    terms = [Term(ONE, (), ((ONE, (2,)),), ((ONE, (0,)),)),
             Term(ONE, (), ((ONE, (-2,)),), ((ONE, (0,)),))]
    one = InvariantPoly.constant(1)
    assert apply_operator(terms, one, Q) == one


def test_non_polynomial_image_raises():
    terms = [Term(ONE, (), ((ONE, (2,)),), ((ONE, (0,)),))]
    with pytest.raises(OperatorRemainderError):
        apply_operator(terms, InvariantPoly.constant(1), Q)


def test_shift_operator_on_monomial():
    # (T + T^-1) m_1 with T: z -> q z gives (q + 1/q) m_1
    terms = [Term(ONE, (), (), ((ONE, (1,)),)), Term(ONE, (), (), ((ONE, (-1,)),))]
    m1 = InvariantPoly.monomial((1,))
    assert apply_operator(terms, m1, Q) == m1.scale(Q + 1 / Q)


def test_zero_input():
    assert not apply_operator([], InvariantPoly(2), Q)


def test_triangular_eigenvector_and_collision():
    basis = dominated((1,))
    images = {(0,): InvariantPoly.monomial((0,), exact(0)), (1,): InvariantPoly(1, {(1,): exact(3), (0,): exact(6)})}
    diag = {(0,): exact(0), (1,): exact(3)}
    v = triangular_eigenvector((1,), basis, images, diag.get)
    assert v == InvariantPoly(1, {(1,): ONE, (0,): exact(2)})
    images[(0,)] = InvariantPoly.monomial((0,), exact(3))
    with pytest.raises(DiagonalCollisionError):
        triangular_eigenvector((1,), basis, images, {(0,): exact(3), (1,): exact(3)}.get)


def test_triangular_eigenvector_rejects_wrong_diagonal():
    basis = dominated((1,))
    images = {(0,): InvariantPoly(1), (1,): InvariantPoly.monomial((1,), exact(3))}
    with pytest.raises(OperatorRemainderError):
        triangular_eigenvector((1,), basis, images, {(0,): exact(0), (1,): exact(5)}.get)
