"""Exact effective-channel erasure polynomials for pattern assignments.

Three computations live here, deliberately kept independent of one another so
they can be cross-checked:

* ``regular_block_erasures`` -- the closed-form design recursion for a single
  regular pattern: at each level the odd child maps z -> z*(1 + z - z**2)
  and the even child z -> z**2 when the pattern bit polarizes, both children
  staying at z when it does not.
* ``assignment_erasures`` -- the design analysis for an arbitrary multiset
  of kernels: blocks with identical kernels merge their aligned legs at each
  polarizing level, distinct kernels contribute independent per-block
  factors, and a lone polarizing block resolves its partner through two uses
  of the partner's channel (the same convention the single-pattern recursion
  bakes into its odd-child map).  This reproduces the closed-form
  effective-channel expressions of the best known patterns and reduces to
  the exact decoder analysis for two repetitions and for pure-repetition
  assignments.
* ``reference_expression_set`` -- fixed transcriptions of the known
  closed-form effective-channel expressions for the best four-repetition
  patterns, kept as a golden reference.

The design analysis is a per-channel-use calculation, deliberately simpler
than the full behavior of the operational decoder in :mod:`polarrep.codec`;
the codec's brute-force oracle measures the difference, which is zero for
two repetitions and confined to coefficients at or above the shortest route
weight for four.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .channel_algebra import Bit, Check, Rep, W, expr_to_erasure_poly
from .patterns import PatternAssignment, PatternFamily
from .poly import EPS, ONE, Poly


@dataclass(frozen=True)
class EffectiveChannelSet:
    """Per-sub-codeword erasure polynomials and the scheme's capacity.

    ``capacity_poly`` is the achievable rate per channel use per
    transmission: (sum of per-sub-codeword capacities) / r**2, the r**2
    accounting for both the r sub-codewords and the r transmissions.
    """

    r: int
    per_subword: tuple[Poly, ...]
    capacity_poly: Poly

    def capacity_at(self, eps: Fraction | int) -> Fraction:
        return self.capacity_poly.evaluate(eps)

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "per_subword": [p.to_strings() for p in self.per_subword],
            "capacity": self.capacity_poly.to_strings(),
        }


def _make_set(per_subword: tuple[Poly, ...]) -> EffectiveChannelSet:
    r = len(per_subword)
    total = Poly.const(r)
    for z in per_subword:
        total = total - z
    return EffectiveChannelSet(
        r=r, per_subword=per_subword, capacity_poly=total.scale(Fraction(1, r * r))
    )


# -- regular-pattern design recursion ---------------------------------------

def regular_block_erasures(i: int, t: int) -> tuple[Poly, ...]:
    """Per-sub-codeword erasure polynomials of regular pattern i at t levels.

    Bits of ``i`` are consumed most significant first, one per level; the
    seed is the raw erasure probability.  Pattern 2**t - 1 (identity) leaves
    every sub-codeword at the raw channel.
    """
    if t < 0:
        raise ValueError("level count must be >= 0")
    if not 0 <= i < (1 << t):
        raise ValueError(f"pattern index {i} out of range for t={t}")
    zs: list[Poly] = [EPS]
    for level in range(t - 1, -1, -1):
        polarize = ((i >> level) & 1) == 0
        nxt: list[Poly] = []
        for z in zs:
            if polarize:
                nxt.append(z * (ONE + z - z * z))
                nxt.append(z * z)
            else:
                nxt.extend((z, z))
        zs = nxt
    return tuple(zs)


def coded_repetition_scheme(t: int) -> EffectiveChannelSet:
    """Design channels of the one-polarized-block scheme for r = 2**t blocks.

    One block carries the fully polarized pattern (index 0) and the other
    r - 1 blocks repeat the sub-codewords unchanged, so each design erasure
    is the pattern-0 polynomial times eps**(r-1).
    """
    if t < 1:
        raise ValueError("need at least one level")
    r = 1 << t
    rep = EPS ** (r - 1)
    per = tuple(z * rep for z in regular_block_erasures(0, t))
    return _make_set(per)


# -- design analysis for arbitrary assignments -------------------------------

Matrix_ = tuple[tuple[int, ...], ...]


def _split_kernel(rows: Matrix_) -> tuple[int, Matrix_, Matrix_]:
    h = len(rows) // 2
    a = tuple(row[:h] for row in rows[:h])
    b = tuple(row[h:] for row in rows[h:])
    c = tuple(row[:h] for row in rows[h:])
    zero = tuple((0,) * h for _ in range(h))
    if c == zero:
        return 0, a, b
    if c == b:
        return 1, a, b
    raise ValueError("kernel is not block-structured as [[A,0],[e*B,B]]")


def _single_factor(rows: Matrix_, z: Poly, k: int) -> Poly:
    """Design factor of one lone block: self-similar polarization maps.

    A polarizing level sends the earlier half to check(z, z**2) and the
    later half to z**2 -- the partner is budgeted two uses of the current
    channel, its own leg plus one repetition leg, which is what makes one
    polarized block plus plain repetitions come out as the single-pattern
    recursion.  Non-polarizing levels pass z through.
    """
    if len(rows) == 1:
        return z
    e, a, b = _split_kernel(rows)
    h = len(rows) // 2
    if k < h:
        if e:
            zz = z * z
            z = z + zz - z * zz
        return _single_factor(a, z, k)
    return _single_factor(b, z * z if e else z, k - h)


def _merged_factor(rows: Matrix_, z: Poly, k: int) -> Poly:
    """Factor of a group of identical blocks, seeded with z = eps**mult.

    Repeating one block is plain repetition of its codeword, so the aligned
    legs fuse into a single channel and the block polarizes with the
    standard maps: check level z -> 2z - z**2, bit level z -> z**2.  This is
    exact, matching both the decoder and the length-one repetition scheme.
    """
    if len(rows) == 1:
        return z
    e, a, b = _split_kernel(rows)
    h = len(rows) // 2
    if k < h:
        if e:
            z = z.scale(2) - z * z
        return _merged_factor(a, z, k)
    return _merged_factor(b, z * z if e else z, k - h)


def assignment_erasures(
    assignment: PatternAssignment, family: PatternFamily
) -> EffectiveChannelSet:
    """Design erasure polynomials of every sub-codeword for an assignment.

    The assignment must have one kernel per sub-codeword (as many blocks as
    the kernel size), which is the standard shape where every block carries
    one combination of all sub-codewords.  Blocks are grouped by kernel;
    each distinct kernel contributes one multiplicative factor per
    sub-codeword, with repeated kernels fused into a repetition-boosted
    single block.
    """
    kernels = assignment.kernels(family)
    if assignment.r != family.size:
        raise ValueError(
            f"assignment has {assignment.r} blocks but kernels have size {family.size}"
        )
    groups: dict[Matrix_, int] = {}
    for kern in kernels:
        groups[kern.rows] = groups.get(kern.rows, 0) + 1
    per = []
    for k in range(family.size):
        acc = ONE
        for rows, mult in groups.items():
            if mult == 1:
                acc = acc * _single_factor(rows, EPS, k)
            else:
                acc = acc * _merged_factor(rows, EPS**mult, k)
        per.append(acc)
    return _make_set(tuple(per))


# -- golden closed-form references ------------------------------------------

def _u() -> Check:
    return Check(W, Rep(W, 2))


_REFERENCE_EXPRS = {
    # Best regular pattern for four blocks: {0, 3, 3, 3}.
    "regular_best_r4": (
        Bit(Check(_u(), Rep(_u(), 2)), Rep(W, 3)),
        Bit(Rep(_u(), 2), Rep(W, 3)),
        Bit(Check(Rep(W, 2), Rep(W, 4)), Rep(W, 3)),
        Bit(Rep(W, 4), Rep(W, 3)),
    ),
    # Best irregular pattern for four blocks: {2, 5, 7, 7}.
    "irregular_best_r4": (
        Bit(Bit(Bit(_u(), _u()), W), W),
        Bit(Bit(Bit(_u(), Rep(W, 2)), W), W),
        Bit(Bit(Bit(Check(Rep(W, 2), Rep(W, 4)), W), W), W),
        Bit(Bit(Bit(Rep(W, 4), W), W), W),
    ),
}


def reference_expression_set(which: str) -> EffectiveChannelSet:
    """Golden effective channels for the published best r=4 patterns.

    These are fixed expression-tree transcriptions evaluated through the
    channel algebra, independent of :func:`assignment_erasures`; comparing
    the two (and both against the codec's brute-force oracle) is part of the
    validation story, not an identity assumed by the code.
    """
    try:
        exprs = _REFERENCE_EXPRS[which]
    except KeyError:
        raise ValueError(
            f"unknown reference set {which!r}; expected one of {sorted(_REFERENCE_EXPRS)}"
        ) from None
    return _make_set(tuple(expr_to_erasure_poly(e) for e in exprs))
