"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: determinants
come from the Leibniz sum, tensor products from an explicit Kronecker
product, and random ring elements from a seeded Random.
"""

import itertools
from fractions import Fraction

from strandwalk.braid import BraidWord
from strandwalk.linalg import Matrix
from strandwalk.randomwalk import ClosurePresentation, is_string_link
from strandwalk.ring import LaurentPoly, RatFunc


def leibniz_det(a):
    """Determinant by the permutation sum; independent of elimination code."""
    n = a.rows
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        term = None
        for i in range(n):
            e = a.entry(i, perm[i])
            term = e if term is None else term * e
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


def kron(a, b):
    """Kronecker product of two matrices over the same ring."""
    entries = []
    for i in range(a.rows):
        for p in range(b.rows):
            for j in range(a.cols):
                for q in range(b.cols):
                    entries.append(a.entry(i, j) * b.entry(p, q))
    return Matrix(a.rows * b.rows, a.cols * b.cols, entries)


def random_laurent(rng, max_terms=4, exp_range=4, coeff_range=4, allow_zero=True):
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        terms[rng.randint(-exp_range, exp_range)] = rng.randint(-coeff_range, coeff_range)
    return LaurentPoly(terms)


def random_laurent_nonzero(rng, **kw):
    while True:
        p = random_laurent(rng, **kw)
        if not p.is_zero():
            return p


def random_laurent_matrix(rng, n, **kw):
    return Matrix(n, n, [random_laurent(rng, **kw) for _ in range(n * n)])


def random_fraction_matrix(rng, n, lo=-5, hi=5):
    return Matrix(
        n, n, [Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n * n)]
    )


def random_ratfunc(rng):
    return RatFunc(random_laurent(rng, max_terms=3), random_laurent_nonzero(rng, max_terms=2))


def random_word(rng, strands, max_len):
    alphabet = [g for g in range(-(strands - 1), strands) if g != 0]
    if not alphabet:
        return ()
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_presentation(rng, n, m, max_len, want_string_link=True, tries=2000):
    for _ in range(tries):
        cp = ClosurePresentation(n, m, BraidWord(n + m, random_word(rng, n + m, max_len)))
        if not want_string_link or is_string_link(cp):
            return cp
    raise RuntimeError("sampling failed")


def tensor_operator_from_weight_blocks(n, blocks):
    """Assemble a sparse operator from its graded matrices on weight bases."""
    from strandwalk.rmatrix import TensorOperator, weight_basis

    entries = {}
    for k, mat in blocks.items():
        basis = weight_basis(n, k)
        for i, r in enumerate(basis):
            for j, c in enumerate(basis):
                p = mat.entry(i, j)
                if not p.is_zero():
                    entries[(r, c)] = p
    return TensorOperator(n, entries)


def example_s_gamma():
    """The walk invariant of the worked two-strand example, frozen by hand."""
    one = LaurentPoly.one()
    den = LaurentPoly({0: 2, 2: -1})  # 2 - t
    return Matrix.from_rows(
        [
            [RatFunc(one, den), RatFunc(LaurentPoly({-2: 1, 0: -1}), den)],
            [
                RatFunc(LaurentPoly({0: 1, 2: -1}), den),
                RatFunc(LaurentPoly({-2: -1, 0: 3, 2: -1}), den),
            ],
        ]
    )


def example_s_components():
    """Graded closure values of the example: (2-t), the symmetric middle
    block in basis {e0(x)e1, e1(x)e0}, and (2-1/t)."""
    delta = LaurentPoly({-1: 1, 1: -1})
    return {
        0: Matrix(1, 1, [LaurentPoly({0: 2, 2: -1})]),
        1: Matrix.from_rows(
            [
                [LaurentPoly({-2: -1, 0: 3, 2: -1}), delta],
                [delta, LaurentPoly.one()],
            ]
        ),
        2: Matrix(1, 1, [LaurentPoly({0: 2, -2: -1})]),
    }


def is_signed_permutation(mat):
    """Each row and column has exactly one nonzero entry, equal to +-1."""
    n = mat.rows
    if mat.cols != n:
        return False
    col_used = [0] * n
    for i in range(n):
        hits = [(j, mat.entry(i, j)) for j in range(n) if mat.entry(i, j) != 0]
        if len(hits) != 1:
            return False
        j, v = hits[0]
        if v != 1 and v != -1:
            return False
        col_used[j] += 1
    return all(c == 1 for c in col_used)
