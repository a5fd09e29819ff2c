"""Exact elimination: rref, nullspace, solve, and the incremental span basis."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from virloop.linalg import SpanBasis, nullspace, parse_matrix, rank, rref, solve
from virloop.scalars import ONE, ZERO, GaussianRational, scalar


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_rref_identity():
    m = parse_matrix([[1, 0], [0, 1]])
    rows, pivots = rref(m)
    assert rows == m
    assert pivots == [0, 1]


def test_rref_rank_deficient():
    m = parse_matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    rows, pivots = rref(m)
    assert pivots == [0, 1]
    assert rank(m) == 2
    assert all(x == ZERO for x in rows[2])


def test_nullspace_matches_kernel():
    m = parse_matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    for row in m:
        assert sum((a * b for a, b in zip(row, v)), ZERO) == ZERO


def test_nullspace_full_rank_is_empty():
    assert nullspace(parse_matrix([[1, 1], [1, -1]])) == []


def test_nullspace_gaussian_entries():
    m = [[scalar("i"), scalar(1)]]
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    assert m[0][0] * v[0] + m[0][1] * v[1] == ZERO


def test_solve_consistent_and_inconsistent():
    m = parse_matrix([[2, 0], [0, 3]])
    x = solve(m, [scalar(4), scalar(6)])
    assert x == [scalar(2), scalar(2)]
    m2 = parse_matrix([[1, 1], [1, 1]])
    assert solve(m2, [scalar(1), scalar(2)]) is None


def test_span_basis_growth_and_membership():
    sb = SpanBasis()
    assert sb.add({"a": ONE, "b": gr(2)})
    assert sb.add({"b": ONE})
    assert not sb.add({"a": gr(3), "b": gr(-1)})
    assert sb.dim == 2
    assert sb.contains({"a": gr(5)})
    assert not sb.contains({"c": ONE})


def test_span_basis_canonical_under_insertion_order():
    vecs = [{"x": ONE, "y": gr(1)}, {"y": gr(2), "z": gr(1)}, {"x": gr(1), "z": gr(-3)}]
    sb1 = SpanBasis()
    sb2 = SpanBasis()
    for v in vecs:
        sb1.add(dict(v))
    for v in reversed(vecs):
        sb2.add(dict(v))
    assert sb1.vectors() == sb2.vectors()


def test_span_basis_key_function():
    sb = SpanBasis(key=lambda c: -c)
    sb.add({1: ONE, 5: ONE})
    (row,) = sb.vectors()
    assert row[5] == ONE


coords = st.lists(
    st.tuples(st.integers(0, 5), st.fractions(min_value=-20, max_value=20, max_denominator=5)),
    min_size=1,
    max_size=4,
)


@given(st.lists(coords, min_size=1, max_size=6))
def test_span_basis_idempotent_and_closed(raw):
    sb = SpanBasis()
    vecs = []
    for entries in raw:
        v = {}
        for c, q in entries:
            s = v.get(c, ZERO) + GaussianRational(q, Fraction(0))
            if s:
                v[c] = s
            else:
                v.pop(c, None)
        vecs.append(v)
        sb.add(dict(v))
    for v in vecs:
        assert sb.contains(v)
        assert not sb.add(dict(v))
    for row in sb.vectors():
        assert sb.contains(row)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_nullspace_vectors_annihilate(nr, nc, data):
    m = [
        [
            GaussianRational(
                Fraction(data.draw(st.integers(-4, 4))),
                Fraction(data.draw(st.integers(-2, 2))),
            )
            for _ in range(nc)
        ]
        for _ in range(nr)
    ]
    basis = nullspace(m)
    assert len(basis) == nc - rank(m)
    for v in basis:
        for row in m:
            assert sum((a * b for a, b in zip(row, v)), ZERO) == ZERO
