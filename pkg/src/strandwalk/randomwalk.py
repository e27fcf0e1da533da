"""Random-walk invariant of string links from braid closure presentations.

A presentation closes the last m strands of a braid on n + m strands.  The
invariant of the resulting string link is read off the blocks of the Burau
matrix: gamma = X + Y (I - Q)^-1 Z, a matrix of rational functions whose
column sums are 1 and whose value at t = 1 is the underlying permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .braid import BraidWord, Permutation, burau, permutation
from .errors import BadGrade, NotStringLink
from .linalg import Matrix
from .ring import LaurentPoly, RatFunc


@dataclass(frozen=True)
class ClosurePresentation:
    """A string-link candidate: braid on n + m strands, last m strands closed."""

    n: int
    m: int
    braid: BraidWord

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise ValueError("need n >= 1 and m >= 0")
        if self.braid.strands != self.n + self.m:
            raise ValueError(
                f"braid on {self.braid.strands} strands does not match n+m={self.n + self.m}"
            )

    def describe(self):
        word = self.braid.as_text() or "(identity)"
        return f"n={self.n} m={self.m} word={word}"


@dataclass(frozen=True)
class BurauBlocks:
    """Burau matrix of the presentation braid split at row/column n."""

    x: Matrix
    y: Matrix
    z: Matrix
    q: Matrix


@dataclass(frozen=True)
class RWInvariant:
    gamma: Matrix  # n x n over RatFunc
    denominator: LaurentPoly  # det(I - Q)


def blocks(cp):
    b = burau(cp.braid)
    n, m = cp.n, cp.m
    return BurauBlocks(
        x=b.block(0, n, 0, n),
        y=b.block(0, n, n, n + m),
        z=b.block(n, n + m, 0, n),
        q=b.block(n, n + m, n, n + m),
    )


def _q_at_t1(cp):
    """The closed block of the underlying permutation matrix, as 0/1 ints."""
    pi = permutation(cp.braid)
    n, m = cp.n, cp.m
    q = [[0] * m for _ in range(m)]
    for i in range(m):
        img = pi(n + 1 + i)
        if img > n:
            q[img - n - 1][i] = 1
    return q


def is_string_link(cp):
    """True iff the closure has no closed loop: the t=1 closed block is nilpotent."""
    m = cp.m
    if m == 0:
        return True
    q = _q_at_t1(cp)
    # Q^m = 0 over the integers decides nilpotency for an m x m block
    power = q
    for _ in range(m - 1):
        power = [
            [sum(power[i][k] * q[k][j] for k in range(m)) for j in range(m)]
            for i in range(m)
        ]
    return all(power[i][j] == 0 for i in range(m) for j in range(m))


def closed_cycle(cp):
    """Positions of one closed loop among the closure strands, or None.

    Follows the underlying permutation restricted to positions n+1..n+m; a
    cycle there is exactly an illegal closed component.
    """
    pi = permutation(cp.braid)
    n, m = cp.n, cp.m
    seen = set()
    for start in range(n + 1, n + m + 1):
        if start in seen:
            continue
        trail = []
        pos = start
        while pos > n and pos not in trail:
            trail.append(pos)
            pos = pi(pos)
        if pos in trail:
            return trail[trail.index(pos) :]
        seen.update(trail)
    return None


def require_string_link(cp):
    if not is_string_link(cp):
        cycle = closed_cycle(cp)
        hint = ""
        if cycle:
            hint = " (closure arcs " + " -> ".join(map(str, cycle + [cycle[0]])) + " form a loop)"
        raise NotStringLink(f"presentation {cp.describe()} is not a string link{hint}", cycle)


def string_link_permutation(cp):
    """Bottom-to-top permutation of the string link itself.

    Follows the braid permutation, jumping from a top closure position to the
    matching bottom one; termination is exactly the string-link condition.
    """
    require_string_link(cp)
    pi = permutation(cp.braid)
    n = cp.n
    images = []
    for i in range(1, n + 1):
        pos = pi(i)
        while pos > n:
            pos = pi(pos)
        images.append(pos)
    return Permutation(n, tuple(images))


def ltw(cp):
    """The random-walk invariant gamma = X + Y (I - Q)^-1 Z over RatFunc."""
    require_string_link(cp)
    blk = blocks(cp)
    n, m = cp.n, cp.m
    x = blk.x.map_entries(RatFunc.from_laurent)
    if m == 0:
        return RWInvariant(gamma=x, denominator=LaurentPoly.one())
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    iq_l = Matrix.identity(m, one, zero) - blk.q
    den = linalg.det(iq_l)
    iq = iq_l.map_entries(RatFunc.from_laurent)
    y = blk.y.map_entries(RatFunc.from_laurent)
    z = blk.z.map_entries(RatFunc.from_laurent)
    gamma = x + y * linalg.inverse(iq) * z
    return RWInvariant(gamma=gamma, denominator=den)


def ltw_exterior(cp, k):
    """Exterior power of the invariant on the wedge basis (lex subset order)."""
    if not 0 <= k <= cp.n:
        raise BadGrade(f"grade {k} out of range 0..{cp.n}")
    return linalg.exterior_power(ltw(cp).gamma, k)


def eigen_check(inv):
    """All-ones row and (1, t, ..., t^(n-1)) column are fixed by gamma."""
    g = inv.gamma
    n = g.rows
    ones = Matrix(1, n, [RatFunc.one()] * n)
    if ones * g != ones:
        return False
    u = Matrix(n, 1, [RatFunc.from_laurent(LaurentPoly.t_power(j)) for j in range(n)])
    return g * u == u


def equilibrium(n):
    """Right eigenvector normalized against the all-ones row: entries sum to 1.

    Component j is t^(j-1) (1 - t) / (1 - t^n).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [RatFunc.one()]
    num = LaurentPoly({0: 1, 2: -1})  # 1 - t
    den = LaurentPoly({0: 1, 2 * n: -1})  # 1 - t^n
    return [RatFunc(LaurentPoly.t_power(j) * num, den) for j in range(n)]


def truncated_series_oracle(cp, trunc, t0):
    """Finite path sum X + Y (sum_{r<trunc} Q^r) Z evaluated at a rational t0.

    This is the walk over paths crossing the closure line fewer than trunc + 1
    times; trunc = 0 keeps only the paths that never cross.  Values are exact
    rationals, so convergence toward the closed form can be measured with zero
    round-off.
    """
    require_string_link(cp)
    t0 = Fraction(t0)
    if not 0 < t0 < 1:
        raise ValueError(f"need 0 < t0 < 1, got {t0}")
    if trunc < 0:
        raise ValueError("truncation must be nonnegative")
    blk = blocks(cp)
    ev = lambda p: p.evaluate_t(t0)
    x = blk.x.map_entries(ev)
    if cp.m == 0:
        return x
    y = blk.y.map_entries(ev)
    z = blk.z.map_entries(ev)
    q = blk.q.map_entries(ev)
    m = cp.m
    if trunc == 0:
        return x
    acc = Matrix.identity(m, Fraction(1), Fraction(0))
    power = acc
    for _ in range(trunc - 1):
        power = power * q
        acc = acc + power
    return x + y * acc * z


def truncated_series_gaps(cp, trunc, t0):
    """Max entrywise |partial sum - closed form| at t0, for each cut 0..trunc.

    The partial sums are built incrementally, so the whole history costs the
    same as the longest truncation.  Gaps are exact rationals.
    """
    require_string_link(cp)
    t0 = Fraction(t0)
    if not 0 < t0 < 1:
        raise ValueError(f"need 0 < t0 < 1, got {t0}")
    exact = ltw(cp).gamma.map_entries(lambda r: r.evaluate_t(t0))
    blk = blocks(cp)
    ev = lambda p: p.evaluate_t(t0)
    x = blk.x.map_entries(ev)

    def gap(approx):
        return max(
            (abs(a - b) for a, b in zip(approx.entries, exact.entries)),
            default=Fraction(0),
        )

    if cp.m == 0:
        return [gap(x)] * (trunc + 1)
    y = blk.y.map_entries(ev)
    z = blk.z.map_entries(ev)
    q = blk.q.map_entries(ev)
    gaps = [gap(x)]
    acc = Matrix.identity(cp.m, Fraction(1), Fraction(0))
    power = acc
    for _ in range(trunc):
        gaps.append(gap(x + y * acc * z))
        power = power * q
        acc = acc + power
    return gaps[: trunc + 1]


def compose(upper, lower):
    """Presentation of the stack: upper string link on top of lower.

    The lower braid keeps its strand labels; the upper braid's closure
    strands are parked above the lower ones by a block swap whose crossings
    cancel around the upper braid.  Invariants are multiplicative over this
    composition: gamma(compose(T, S)) = gamma(T) * gamma(S).
    """
    if upper.n != lower.n:
        raise ValueError("composable presentations need equal retained strand counts")
    n = upper.n
    ms, mt = lower.m, upper.m
    total = n + ms + mt

    def swap_word():
        # move the ms-block at n+1..n+ms past the mt-block above it
        letters = []
        for i in range(ms, 0, -1):
            letters.extend(range(n + i, n + i + mt))
        return letters

    w = swap_word()
    word = (
        list(lower.braid.letters)
        + w
        + list(upper.braid.letters)
        + [-g for g in reversed(w)]
    )
    return ClosurePresentation(n, ms + mt, BraidWord(total, tuple(word)))
