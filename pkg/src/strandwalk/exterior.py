"""Exterior-algebra side of the story: wedge extensions of Burau matrices,
supertraces, contractions, the tensor-to-wedge isomorphism, and the three
independent ways of evaluating a partial supertrace.

Forms over the ground set {1..n} are dicts mapping increasing index tuples to
LaurentPoly coefficients.  In a split ground set the first n slots are the
retained module U and the last m slots are the closed module, so an increasing
tuple always lists its U part before its closed part and no reordering signs
appear when separating them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .braid import burau
from .errors import SingularL
from .linalg import (
    Matrix,
    SubsetIndex,
    det,
    exterior_power,
    minor_table,
    schur_complement,
    subsets,
)
from .randomwalk import require_string_link
from .ring import LaurentPoly, RatFunc
from .rmatrix import GradedFunctorValue, weight_basis


@functools.lru_cache(maxsize=None)
def _positions(n, k):
    """Subset -> position in the lex wedge basis of grade k."""
    return {s: i for i, s in enumerate(subsets(n, k))}


@functools.lru_cache(maxsize=None)
def _tensor_positions(n, k):
    """Subset -> position in the ascending-index weight basis of grade k."""
    out = {}
    for i, r in enumerate(weight_basis(n, k)):
        out[_index_subset(r, n)] = i
    return out


def _index_subset(r, n):
    """Slots holding a 1 in tensor index r (slot j is bit n - j)."""
    return tuple(j for j in range(1, n + 1) if (r >> (n - j)) & 1)


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

def normalize_form(x):
    return {k: v for k, v in x.items() if not v.is_zero()}


def merge_sign(i_tuple, j_tuple):
    """(sign, merged) for wedging two increasing tuples, or None on overlap."""
    if set(i_tuple) & set(j_tuple):
        return None
    inv = 0
    for a in i_tuple:
        for b in j_tuple:
            if a > b:
                inv += 1
    merged = tuple(sorted(i_tuple + j_tuple))
    return (-1 if inv % 2 else 1, merged)


def wedge(x, y):
    """Wedge product of two forms."""
    out = {}
    for i, p in x.items():
        for j, q in y.items():
            hit = merge_sign(i, j)
            if hit is None:
                continue
            sign, k = hit
            term = p * q
            if sign < 0:
                term = -term
            acc = out.get(k)
            out[k] = term if acc is None else acc + term
    return normalize_form(out)


def top_form(n, m):
    """The volume form of the closed slots n+1..n+m."""
    return {tuple(range(n + 1, n + m + 1)): LaurentPoly.one()}


def contraction(x, s, n, m):
    """Contract the closed-slot form indexed by s out of x.

    ``s`` indexes the last m slots (values 1..m, or a SubsetIndex on m);
    the result is a form on the retained slots 1..n.  On basis forms this is
    the dual pairing: tau_S is removed exactly when the closed part matches.
    """
    members = s.members if isinstance(s, SubsetIndex) else tuple(s)
    target = tuple(n + j for j in members)
    out = {}
    for j, p in x.items():
        cut = 0
        while cut < len(j) and j[cut] <= n:
            cut += 1
        if j[cut:] != target:
            continue
        u = j[:cut]
        acc = out.get(u)
        out[u] = p if acc is None else acc + p
    return normalize_form(out)


def apply_matrix_form(a, x, table=None):
    """Action of the full exterior extension of a matrix on a form."""
    if table is None:
        table = minor_table(a)
    n = a.rows
    out = {}
    for j, p in x.items():
        for i in subsets(n, len(j)):
            c = table[(i, j)]
            if c.is_zero():
                continue
            term = c * p
            acc = out.get(i)
            out[i] = term if acc is None else acc + term
    return normalize_form(out)


# ---------------------------------------------------------------------------
# graded operators
# ---------------------------------------------------------------------------

class ExtOperator:
    """Endomorphism of the exterior algebra over {1..n}, stored per grade pair.

    blocks maps (k_out, k_in) to a C(n,k_out) x C(n,k_in) matrix between the
    lex wedge bases; missing blocks are zero.  The exterior extension of a
    single matrix is block-diagonal.
    """

    __slots__ = ("n", "blocks")

    def __init__(self, n, blocks):
        clean = {}
        for key, m in blocks.items():
            if any(not e.is_zero() for e in m.entries):
                clean[key] = m
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExtOperator is immutable")

    @classmethod
    def identity(cls, n):
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return cls(
            n,
            {
                (k, k): Matrix.identity(len(subsets(n, k)), one, zero)
                for k in range(n + 1)
            },
        )

    def block(self, k_out, k_in):
        m = self.blocks.get((k_out, k_in))
        if m is not None:
            return m
        rows = len(subsets(self.n, k_out)) if 0 <= k_out <= self.n else 0
        cols = len(subsets(self.n, k_in)) if 0 <= k_in <= self.n else 0
        return Matrix.zeros(rows, cols, LaurentPoly.zero())

    def grade_block(self, k):
        return self.block(k, k)

    def is_grade_diagonal(self):
        return all(ko == ki for ko, ki in self.blocks)

    def scale(self, poly):
        return ExtOperator(
            self.n, {key: m.map_entries(lambda e: poly * e) for key, m in self.blocks.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, ExtOperator) or other.n != self.n:
            return NotImplemented
        out = {}
        for (ko, j1), a in self.blocks.items():
            for (j2, ki), b in other.blocks.items():
                if j1 != j2:
                    continue
                prod = a * b
                acc = out.get((ko, ki))
                out[(ko, ki)] = prod if acc is None else acc + prod
        return ExtOperator(self.n, out)

    def apply(self, x):
        """Act on a form."""
        out = {}
        for j, p in x.items():
            ki = len(j)
            col = _positions(self.n, ki)[j]
            for (ko, k), m in self.blocks.items():
                if k != ki:
                    continue
                for i, row in enumerate(subsets(self.n, ko)):
                    c = m.entry(i, col)
                    if c.is_zero():
                        continue
                    term = c * p
                    acc = out.get(row)
                    out[row] = term if acc is None else acc + term
        return normalize_form(out)

    def __eq__(self, other):
        if not isinstance(other, ExtOperator):
            return NotImplemented
        if self.n != other.n:
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(*k) == other.block(*k) for k in keys)

    def __hash__(self):
        return hash((self.n, frozenset(self.blocks.items())))

    def __repr__(self):
        return f"ExtOperator(n={self.n}, blocks={sorted(self.blocks)})"


def lambda_star(a, n=None):
    """Exterior extension of a square matrix, all grades at once.

    Minors are shared across grades through a single cofactor table, which is
    far cheaper than grade-by-grade determinants.
    """
    if n is None:
        n = a.rows
    if a.rows != n or a.cols != n:
        raise ValueError(f"expected an {n}x{n} matrix")
    table = minor_table(a)
    blocks = {}
    for k in range(n + 1):
        idx = subsets(n, k)
        blocks[(k, k)] = Matrix(
            len(idx), len(idx), [table[(t, s)] for t in idx for s in idx]
        )
    return ExtOperator(n, blocks)


def supertrace(f):
    """Alternating-sign trace over the grades."""
    acc = LaurentPoly.zero()
    for k in range(f.n + 1):
        m = f.grade_block(k)
        tr = LaurentPoly.zero()
        for i in range(m.rows):
            tr = tr + m.entry(i, i)
        acc = acc + (-tr if k % 2 else tr)
    return acc


# ---------------------------------------------------------------------------
# partial supertraces, three ways
# ---------------------------------------------------------------------------

def partial_supertrace(f, n):
    """Contract the last m = f.n - n slots out of a graded operator.

    Acting on a retained form alpha this is the alternating sum over closed
    subsets S of contracting S out of f(alpha ^ tau_S).  Because increasing
    tuples list retained slots first, the matrix element bookkeeping reduces
    to gluing S onto row and column subsets.
    """
    big = f.n
    m = big - n
    if m < 0:
        raise ValueError("cannot retain more slots than the operator has")
    if m == 0:
        return f
    out = {}
    for size in range(m + 1):
        for s in subsets(m, size):
            s_abs = tuple(n + j for j in s)
            sign = -1 if size % 2 else 1
            for (go, gi), blk in f.blocks.items():
                ko, ki = go - size, gi - size
                if not (0 <= ko <= n and 0 <= ki <= n):
                    continue
                rpos = _positions(big, go)
                cpos = _positions(big, gi)
                rows_out = subsets(n, ko)
                cols_out = subsets(n, ki)
                target = out.setdefault(
                    (ko, ki),
                    [[LaurentPoly.zero()] * len(cols_out) for _ in range(len(rows_out))],
                )
                for i, beta in enumerate(rows_out):
                    r = rpos[beta + s_abs]
                    for j, alpha in enumerate(cols_out):
                        c = cpos[alpha + s_abs]
                        e = blk.entry(r, c)
                        if e.is_zero():
                            continue
                        target[i][j] = target[i][j] + (-e if sign < 0 else e)
    blocks = {
        key: Matrix(len(grid), len(grid[0]) if grid else 0, [x for row in grid for x in row])
        for key, grid in out.items()
    }
    return ExtOperator(n, blocks)


def top_form_eval(a, alpha, n, m):
    """Partial supertrace of the exterior extension of a, evaluated on a form
    by pairing against the top form of the closed slots:

        contract_top( (Lambda* a)(alpha)  ^  (Lambda* (I - a))(tau) ).
    """
    if a.rows != n + m or a.cols != n + m:
        raise ValueError("matrix does not match the split")
    table = minor_table(a)
    first = apply_matrix_form(a, alpha, table)
    if m == 0:
        return first
    b = a.identity_like() - a
    second = apply_matrix_form(b, top_form(n, m))
    return contraction(wedge(first, second), tuple(range(1, m + 1)), n, m)


def schur_supertrace(a, n, m):
    """Partial supertrace via the UL factorization of I - a.

    Equals det(L) times the exterior extension of I - D, where D is the Schur
    complement of the closed-closed block L of I - a.  Raises SingularL when
    that block is singular.
    """
    if a.rows != n + m or a.cols != n + m:
        raise ValueError("matrix does not match the split")
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    b_l = Matrix.identity(n + m, one, zero) - a
    det_l = det(b_l.block(n, n + m, n, n + m), one=one)
    if det_l.is_zero():
        raise SingularL("closed-closed block of I - a is singular")
    b = b_l.map_entries(RatFunc.from_laurent)
    factors = schur_complement(b, (n, m))
    gamma = Matrix.identity(n, RatFunc.one(), RatFunc.zero()) - factors.d
    det_l_r = RatFunc.from_laurent(det_l)
    blocks = {}
    for k in range(n + 1):
        blk = exterior_power(gamma, k).map_entries(lambda e: det_l_r * e)
        blocks[(k, k)] = blk.map_entries(
            lambda e: e.to_laurent(require_integral=False)
        )
    return ExtOperator(n, blocks)


# ---------------------------------------------------------------------------
# the tensor-to-wedge isomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiMap:
    """Basis pairing e_I -> (prod_{j in S(I)} t^(j/2)) tau_{S(I)}.

    Each weight-k tensor basis vector maps to the wedge form on the same
    subset of slots, scaled by a monomial unit.  The subset pairing is a
    bijection per grade; only the two bases enumerate their subsets in
    different orders (ascending tensor index vs lex), which the conjugation
    helpers account for.
    """

    n: int

    def scale(self, subset):
        return LaurentPoly.s_power(sum(subset))

    def scale_inverse(self, subset):
        return LaurentPoly.s_power(-sum(subset))

    def image_of_index(self, r):
        """(subset, scale) for the tensor basis vector with index r."""
        s = _index_subset(r, self.n)
        return s, self.scale(s)


def phi(n):
    return PhiMap(n)


def phi_conjugate_block(m, n, k_out, k_in, direction):
    """Conjugate one graded block through the isomorphism.

    direction 'to_wedge' turns a tensor-side block (weight bases) into the
    wedge-side block Phi m Phi^-1; 'to_tensor' is the inverse conjugation.
    Entries may be LaurentPoly or RatFunc; scales are monomial units.
    """
    p = phi(n)
    wedge_rows = subsets(n, k_out)
    wedge_cols = subsets(n, k_in)
    trow = _tensor_positions(n, k_out)
    tcol = _tensor_positions(n, k_in)
    if direction == "to_wedge":
        entries = [
            p.scale(t) * m.entry(trow[t], tcol[s]) * p.scale_inverse(s)
            for t in wedge_rows
            for s in wedge_cols
        ]
        return Matrix(len(wedge_rows), len(wedge_cols), entries)
    if direction == "to_tensor":
        wrow = _positions(n, k_out)
        wcol = _positions(n, k_in)
        tensor_rows = [_index_subset(r, n) for r in weight_basis(n, k_out)]
        tensor_cols = [_index_subset(r, n) for r in weight_basis(n, k_in)]
        entries = [
            p.scale_inverse(t) * m.entry(wrow[t], wcol[s]) * p.scale(s)
            for t in tensor_rows
            for s in tensor_cols
        ]
        return Matrix(len(tensor_rows), len(tensor_cols), entries)
    raise ValueError(f"unknown direction {direction!r}")


def phi_conjugate(value, direction):
    """Conjugate a grade-diagonal object; returns {grade: Matrix}.

    Accepts a GradedFunctorValue, a grade-diagonal ExtOperator, or a plain
    {grade: Matrix} dict.  Off-diagonal blocks go through
    phi_conjugate_block directly.
    """
    if isinstance(value, GradedFunctorValue):
        items = value.components.items()
        n = value.n
    elif isinstance(value, ExtOperator):
        if not value.is_grade_diagonal():
            raise ValueError("operator has grade-shifting blocks; conjugate them one by one")
        n = value.n
        items = ((k, value.grade_block(k)) for k in range(n + 1))
    elif isinstance(value, dict):
        items = value.items()
        n = None
        for k, m in value.items():
            size = m.rows
            # recover n from C(n, k) only when unambiguous; callers with bare
            # dicts built them from a known n, so grade 1 is always present
            if k == 1:
                n = size
        if n is None:
            raise ValueError("cannot infer the slot count; pass a graded object instead")
    else:
        raise TypeError(f"cannot conjugate {type(value).__name__}")
    return {k: phi_conjugate_block(m, n, k, k, direction) for k, m in items}


# ---------------------------------------------------------------------------
# closure blocks on the wedge side
# ---------------------------------------------------------------------------

def brt_all(cp):
    """Partial supertrace of the exterior Burau extension of the braid."""
    require_string_link(cp)
    return partial_supertrace(lambda_star(burau(cp.braid)), cp.n)


def brt(cp, k):
    """Grade-k block of the closure on the wedge side; grade 0 is det(I - Q)."""
    return brt_all(cp).grade_block(k)


def brt_ratio(cp, k):
    """Grade-k block divided by the grade-0 polynomial, over RatFunc."""
    full = brt_all(cp)
    v0 = full.grade_block(0).entry(0, 0)
    return full.grade_block(k).map_entries(lambda e: RatFunc(e, v0))


# ---------------------------------------------------------------------------
# ladder operators on forms
# ---------------------------------------------------------------------------

def f_breve(n, x):
    """Wedge from the left with t^(1/2) (v_1 + t v_2 + ... + t^(n-1) v_n).

    The prefactor is forced by conjugating the tensor-side raising operator
    through the isomorphism (check n = 1: e_0 -> e_1 -> t^(1/2) v_1); it is
    the grade-raising partner of e_breve.
    """
    u = {(j,): LaurentPoly.t_power(j - 1) for j in range(1, n + 1)}
    scaled = wedge(u, x)
    return {k: LaurentPoly.s_power(1) * v for k, v in scaled.items()}


def e_breve(n, x):
    """t^(-n/2) times the sum of single-slot contractions."""
    out = {}
    for j_tuple, p in x.items():
        for pos, j in enumerate(j_tuple):
            rest = j_tuple[:pos] + j_tuple[pos + 1 :]
            above = len(j_tuple) - pos - 1  # factors that v_j hops over
            term = -p if above % 2 else p
            acc = out.get(rest)
            out[rest] = term if acc is None else acc + term
    scale = LaurentPoly.s_power(-n)
    return normalize_form({k: scale * v for k, v in out.items()})


def form_operator_block(fn, n, k_in, k_out):
    """Matrix of a form-valued map between wedge bases of two grades."""
    cols = subsets(n, k_in)
    rows = subsets(n, k_out)
    rpos = {s: i for i, s in enumerate(rows)}
    entries = [[LaurentPoly.zero()] * len(cols) for _ in range(len(rows))]
    for j, s in enumerate(cols):
        image = fn(n, {s: LaurentPoly.one()})
        for key, val in image.items():
            i = rpos.get(key)
            if i is not None:
                entries[i][j] = val
    return Matrix(len(rows), len(cols), [x for row in entries for x in row])
