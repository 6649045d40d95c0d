"""Encoder, successive-cancellation decoder, exact oracle, and simulator.

The code transmits r = 2**t blocks; block b carries its kernel applied to
the r sub-codewords, each of which is an inner polar codeword of length
2**(m-t).  Decoding follows the kernel tree: the earlier half of the
sub-codewords is decoded first, using partner estimates assembled from the
second-half legs of blocks whose bottom kernels match; once known, it is
subtracted and the later half is decoded from everything that carries it.
Messages live in {0, 1, erased}: a check combine erases if either input is
erased (else XOR), a variable combine erases only if all inputs are erased
(conflicting known values are impossible over an erasure channel).

Because erasure propagation does not depend on the transmitted values, the
per-bit behavior of this decoder is a deterministic function of the erasure
pattern.  ``erasure_flow`` evaluates that function for whole batches of
patterns at once; the brute-force oracle feeds it every pattern of a short
code to get exact per-bit erasure polynomials, and the Monte Carlo driver
feeds it sampled patterns.  The oracle is the ground truth the design
analysis in :mod:`polarrep.effective_channels` is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .channel_algebra import standard_synthetic_channel
from .effective_channels import EffectiveChannelSet, assignment_erasures
from .patterns import Kernel, PatternAssignment, PatternFamily, apply_kernel
from .poly import EPS, Poly

Matrix = tuple[tuple[int, ...], ...]

#: Full enumeration of 2**N erasure patterns stays cheap up to this length.
ORACLE_MAX_BITS = 24


class DecodeFailure(Exception):
    """Raised when the first undecodable unfrozen bit is reached."""

    def __init__(self, bit_index: int):
        super().__init__(f"undecodable information bit at index {bit_index}")
        self.bit_index = bit_index


@dataclass(frozen=True)
class CodeSpec:
    """One concrete code instance.

    ``frozen`` is the sorted tuple of frozen u-bit indices; the remaining
    ``k`` indices carry information.  Global bit index j*2**(m-t) + i is bit
    i of sub-codeword j, which is also the successive-cancellation decode
    order.
    """

    m: int
    t: int
    family: PatternFamily
    assignment: PatternAssignment
    design_eps: Fraction
    k: int
    frozen: tuple[int, ...]

    @property
    def r(self) -> int:
        return 1 << self.t

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def inner_len(self) -> int:
        return 1 << (self.m - self.t)

    @property
    def block_count(self) -> int:
        return self.assignment.r

    @property
    def total_len(self) -> int:
        return self.block_count * self.n

    @property
    def info_positions(self) -> tuple[int, ...]:
        frozen = set(self.frozen)
        return tuple(i for i in range(self.n) if i not in frozen)

    def kernels(self) -> tuple[Kernel, ...]:
        return self.assignment.kernels(self.family)

    def channels(self) -> EffectiveChannelSet:
        return assignment_erasures(self.assignment, self.family)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "t": self.t,
            "family": self.family.kind,
            "assignment": list(self.assignment.indices),
            "design_eps": str(self.design_eps),
            "k": self.k,
            "frozen": list(self.frozen),
        }


def synthetic_erasure_values(
    per_subword: Sequence[Poly], inner_levels: int, eps: Fraction
) -> list[Fraction]:
    """Design erasure of every u-bit: inner polarization of each sub-channel.

    Scalar recursion on exact rationals; bit (j, i) gets the inner map chain
    of i applied to per_subword[j] evaluated at the design point.
    """
    values = []
    for z in per_subword:
        base = z.evaluate(eps)
        level_vals = [base]
        for _ in range(inner_levels):
            nxt = []
            for v in level_vals:
                nxt.append(2 * v - v * v)
                nxt.append(v * v)
            level_vals = nxt
        values.extend(level_vals)
    return values


def synthetic_polynomials(spec: CodeSpec) -> list[Poly]:
    """Exact design erasure polynomial of every u-bit of the code."""
    per = spec.channels().per_subword
    inner = spec.m - spec.t
    return [
        standard_synthetic_channel(inner, i, base=per[j])
        for j in range(spec.r)
        for i in range(1 << inner)
    ]


def design_code(
    m: int,
    t: int,
    assignment: PatternAssignment,
    design_eps: Fraction | int | str,
    k: int,
    family: PatternFamily,
) -> CodeSpec:
    """Choose the frozen set for a code of 2**m u-bits and k info bits.

    All 2**m synthetic erasures are evaluated exactly at the design point
    and the worst 2**m - k are frozen; at equal erasure the larger index is
    frozen first, so constructions are deterministic.
    """
    if not 0 <= t <= m:
        raise ValueError(f"need 0 <= t <= m, got t={t}, m={m}")
    if not 0 <= k <= (1 << m):
        raise ValueError(f"info bit count {k} out of range for m={m}")
    design_eps = Fraction(design_eps)
    if not 0 <= design_eps <= 1:
        raise ValueError(f"design erasure must lie in [0, 1], got {design_eps}")
    if family.size != (1 << t):
        raise ValueError(f"family kernels have size {family.size}, expected {1 << t}")
    per = assignment_erasures(assignment, family).per_subword
    values = synthetic_erasure_values(per, m - t, design_eps)
    order = sorted(range(1 << m), key=lambda i: (values[i], i), reverse=True)
    frozen = tuple(sorted(order[: (1 << m) - k]))
    return CodeSpec(
        m=m,
        t=t,
        family=family,
        assignment=assignment,
        design_eps=design_eps,
        k=k,
        frozen=frozen,
    )


# -- encoding ---------------------------------------------------------------

def inner_encode(u: Sequence[int]) -> tuple[int, ...]:
    """Polar transform of a length-2**q word (earlier bits are XORed down)."""
    if len(u) == 1:
        return (u[0],)
    h = len(u) // 2
    left = inner_encode(u[:h])
    right = inner_encode(u[h:])
    return tuple(a ^ b for a, b in zip(left, right)) + right


def encode(spec: CodeSpec, info_bits: Sequence[int]) -> list[tuple[int, ...]]:
    """Encode info bits into the r transmitted blocks.

    Info bits fill the unfrozen u-positions in index order, each sub-codeword
    is inner polar coded, and block b applies the b-th kernel of the
    canonical assignment order to the tuple of sub-codewords.
    """
    if len(info_bits) != spec.k:
        raise ValueError(f"expected {spec.k} info bits, got {len(info_bits)}")
    u = [0] * spec.n
    for pos, bit in zip(spec.info_positions, info_bits):
        u[pos] = int(bit)
    width = spec.inner_len
    subwords = [
        inner_encode(u[j * width : (j + 1) * width]) for j in range(spec.r)
    ]
    return [apply_kernel(kern, subwords) for kern in spec.kernels()]


# -- value-level SC decoding ------------------------------------------------

def _combine_check(a: int | None, b: int | None) -> int | None:
    if a is None or b is None:
        return None
    return a ^ b

def _combine_first(values: Iterable[int | None]) -> int | None:
    for v in values:
        if v is not None:
            return v
    return None


def _split_rows(rows: Matrix) -> tuple[int, Matrix, Matrix]:
    h = len(rows) // 2
    a = tuple(row[:h] for row in rows[:h])
    b = tuple(row[h:] for row in rows[h:])
    c = tuple(row[:h] for row in rows[h:])
    if c == tuple((0,) * h for _ in range(h)):
        return 0, a, b
    if c == b:
        return 1, a, b
    raise ValueError("kernel is not block-structured as [[A,0],[e*B,B]]")


def _inner_sc(
    msgs: list[int | None], frozen: set[int], bit_offset: int
) -> tuple[list[int], list[int]]:
    """Standard polar SC over erasure messages; returns (u_hat, x_hat)."""
    if len(msgs) == 1:
        if bit_offset in frozen:
            return [0], [0]
        if msgs[0] is None:
            raise DecodeFailure(bit_offset)
        return [msgs[0]], [msgs[0]]
    h = len(msgs) // 2
    left_in = [_combine_check(msgs[i], msgs[i + h]) for i in range(h)]
    u_left, x_left = _inner_sc(left_in, frozen, bit_offset)
    right_in = [
        _combine_first((_combine_check(msgs[i], x_left[i]), msgs[i + h]))
        for i in range(h)
    ]
    u_right, x_right = _inner_sc(right_in, frozen, bit_offset + h)
    return u_left + u_right, [a ^ b for a, b in zip(x_left, x_right)] + x_right


def _outer_decode(
    carriers: list[tuple[Matrix, list[list[int | None]]]],
    frozen: set[int],
    bit_offset: int,
    inner_len: int,
) -> tuple[list[int], list[list[int]]]:
    """Decode a group of sub-codewords from carrier messages.

    Each carrier is (kernel rows, per-position message rows); returns the
    decoded u-bits and the re-encoded sub-codeword vectors, which callers
    need for interference subtraction.
    """
    size = len(carriers[0][0])
    if size == 1:
        eff = [
            _combine_first(rowset[0][col] for _, rowset in carriers)
            for col in range(inner_len)
        ]
        u_hat, x_hat = _inner_sc(eff, frozen, bit_offset)
        return u_hat, [x_hat]

    splits = [_split_rows(rows) for rows, _ in carriers]
    h = size // 2

    # Partner estimates: one per distinct bottom kernel, from every carrier
    # whose bottom kernel matches.
    estimates: dict[Matrix, list[list[int | None]]] = {}
    for (e, _, b), _carrier in zip(splits, carriers):
        if e and b not in estimates:
            members = [
                rowset for (_, _, bb), (_, rowset) in zip(splits, carriers) if bb == b
            ]
            estimates[b] = [
                [
                    _combine_first(m[h + p][col] for m in members)
                    for col in range(inner_len)
                ]
                for p in range(h)
            ]

    first_carriers = []
    for (e, a, b), (_, rowset) in zip(splits, carriers):
        if e:
            est = estimates[b]
            rows = [
                [
                    _combine_check(rowset[p][col], est[p][col])
                    for col in range(inner_len)
                ]
                for p in range(h)
            ]
        else:
            rows = [rowset[p] for p in range(h)]
        first_carriers.append((a, rows))
    u_first, x_first = _outer_decode(first_carriers, frozen, bit_offset, inner_len)

    second_carriers = []
    for (e, a, b), (_, rowset) in zip(splits, carriers):
        second_carriers.append((b, [rowset[h + p] for p in range(h)]))
        if e:
            cancelled = [
                [
                    None
                    if rowset[p][col] is None
                    else rowset[p][col] ^ _known_combination(a, x_first, p, col)
                    for col in range(inner_len)
                ]
                for p in range(h)
            ]
            second_carriers.append((b, cancelled))
    u_second, x_second = _outer_decode(
        second_carriers, frozen, bit_offset + h * inner_len, inner_len
    )
    return u_first + u_second, x_first + x_second


def _known_combination(
    a: Matrix, subwords: list[list[int]], p: int, col: int
) -> int:
    acc = 0
    for q, row in enumerate(a):
        if row[p]:
            acc ^= subwords[q][col]
    return acc


def sc_decode(spec: CodeSpec, received: Sequence[int | None]) -> list[int]:
    """Successive-cancellation decode of a full received word.

    ``received`` holds the concatenated blocks with ``None`` marking
    erasures.  Returns the information bits; raises :class:`DecodeFailure`
    with the first undecodable unfrozen bit index otherwise.
    """
    if len(received) != spec.total_len:
        raise ValueError(f"expected {spec.total_len} symbols, got {len(received)}")
    width = spec.inner_len
    carriers = []
    for b, kern in enumerate(spec.kernels()):
        block = received[b * spec.n : (b + 1) * spec.n]
        rows = [list(block[p * width : (p + 1) * width]) for p in range(spec.r)]
        carriers.append((kern.rows, rows))
    u_hat, _ = _outer_decode(carriers, set(spec.frozen), 0, width)
    return [u_hat[i] for i in spec.info_positions]


# -- batched genie-aided erasure propagation --------------------------------

def _inner_flags(msgs: np.ndarray) -> list[np.ndarray]:
    if msgs.shape[1] == 1:
        return [msgs[:, 0]]
    h = msgs.shape[1] // 2
    first = _inner_flags(msgs[:, :h] | msgs[:, h:])
    second = _inner_flags(msgs[:, :h] & msgs[:, h:])
    return first + second


def _outer_flags(carriers: list[tuple[Matrix, np.ndarray]]) -> list[np.ndarray]:
    size = len(carriers[0][0])
    if size == 1:
        eff = carriers[0][1][:, 0, :]
        for _, arr in carriers[1:]:
            eff = eff & arr[:, 0, :]
        return _inner_flags(eff)

    splits = [_split_rows(rows) for rows, _ in carriers]
    h = size // 2
    estimates: dict[Matrix, np.ndarray] = {}
    for (e, _, b), _arr in zip(splits, carriers):
        if e and b not in estimates:
            est = None
            for (_, _, bb), (_, arr) in zip(splits, carriers):
                if bb == b:
                    est = arr[:, h:, :] if est is None else est & arr[:, h:, :]
            estimates[b] = est

    first_carriers = []
    second_carriers = []
    for (e, a, b), (_, arr) in zip(splits, carriers):
        top, bottom = arr[:, :h, :], arr[:, h:, :]
        first_carriers.append((a, top | estimates[b] if e else top))
        second_carriers.append((b, bottom))
        if e:
            second_carriers.append((b, top))
    return _outer_flags(first_carriers) + _outer_flags(second_carriers)


def erasure_flow(spec: CodeSpec, erased: np.ndarray) -> np.ndarray:
    """Genie-aided per-bit erasure flags for a batch of erasure patterns.

    ``erased`` is boolean with shape (batch, total_len); the result has
    shape (batch, 2**m), entry (s, i) telling whether u-bit i is left
    undetermined in pattern s when all earlier bits are known.  Value
    tracking is unnecessary: erasure propagation is value-independent.
    """
    batch, n_sym = erased.shape
    if n_sym != spec.total_len:
        raise ValueError(f"expected {spec.total_len} symbols, got {n_sym}")
    width = spec.inner_len
    carriers = []
    for b, kern in enumerate(spec.kernels()):
        block = erased[:, b * spec.n : (b + 1) * spec.n]
        carriers.append((kern.rows, block.reshape(batch, spec.r, width)))
    flags = _outer_flags(carriers)
    return np.stack(flags, axis=1)


def decode_operation_count(spec: CodeSpec) -> int:
    """Deterministic combine-operation count of one decoder run."""

    def outer(kernels: list[Matrix]) -> int:
        size = len(kernels[0])
        width = spec.inner_len
        if size == 1:
            inner_ops = width * (spec.m - spec.t)
            return (len(kernels) - 1) * width + inner_ops
        splits = [_split_rows(rows) for rows in kernels]
        h = size // 2
        ops = 0
        seen = set()
        for e, _, b in splits:
            if e and b not in seen:
                seen.add(b)
                members = sum(1 for _, _, bb in splits if bb == b)
                ops += (members - 1) * h * width
        firsts, seconds = [], []
        for e, a, b in splits:
            if e:
                ops += 2 * h * width  # check combines + interference removal
                seconds.append(b)
            firsts.append(a)
            seconds.append(b)
        return ops + outer(firsts) + outer(seconds)

    return outer([k.rows for k in spec.kernels()])


# -- exact oracle ------------------------------------------------------------

def exact_erasure_oracle(spec: CodeSpec) -> list[Poly]:
    """Exact per-u-bit erasure polynomials of the operational decoder.

    Enumerates every erasure pattern of the full code, runs the genie-aided
    decoder on all of them, and assembles, for each bit, the exact
    polynomial sum of eps**w (1-eps)**(N-w) over failing patterns.  Requires
    every bit unfrozen (the oracle characterizes channels, not one code) and
    a total length of at most ORACLE_MAX_BITS.
    """
    n_sym = spec.total_len
    if spec.k != spec.n:
        raise ValueError("oracle requires a spec with all bits unfrozen")
    if n_sym > ORACLE_MAX_BITS:
        raise ValueError(f"total length {n_sym} exceeds oracle bound {ORACLE_MAX_BITS}")
    counts = np.zeros((spec.n, n_sym + 1), dtype=np.int64)
    chunk = 1 << min(n_sym, 16)
    bit_cols = np.arange(n_sym, dtype=np.uint32)
    for start in range(0, 1 << n_sym, chunk):
        idx = np.arange(start, start + chunk, dtype=np.uint32)
        patterns = ((idx[:, None] >> bit_cols[None, :]) & 1).astype(bool)
        weights = patterns.sum(axis=1)
        flags = erasure_flow(spec, patterns)
        for i in range(spec.n):
            counts[i] += np.bincount(weights[flags[:, i]], minlength=n_sym + 1)
    one_minus = [Poly.one()]
    for _ in range(n_sym):
        one_minus.append(one_minus[-1] * (Poly.one() - EPS))
    polys = []
    for i in range(spec.n):
        acc = Poly.zero()
        for w in range(n_sym + 1):
            c = int(counts[i, w])
            if c:
                acc = acc + (Poly.monomial(w, c) * one_minus[n_sym - w])
        polys.append(acc)
    return polys


def oracle_spec(
    family: PatternFamily,
    assignment: PatternAssignment,
    m: int,
    t: int,
) -> CodeSpec:
    """All-bits-unfrozen spec for oracle runs and channel measurements."""
    return design_code(m, t, assignment, Fraction(1, 2), 1 << m, family)


# -- Monte Carlo -------------------------------------------------------------

@dataclass(frozen=True)
class SimReport:
    """Empirical genie-aided erasure rates from simulated transmissions."""

    spec: CodeSpec
    eps: Fraction
    trials: int
    seed: int
    per_bit_rates: tuple[float, ...]
    block_error_rate: float
    operations: int
    operations_per_decode: int = field(default=0)

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "eps": str(self.eps),
            "trials": self.trials,
            "seed": self.seed,
            "per_bit_erasure_rates": list(self.per_bit_rates),
            "block_error_rate": self.block_error_rate,
            "operations": self.operations,
            "operations_per_decode": self.operations_per_decode,
        }


def monte_carlo(
    spec: CodeSpec,
    eps: Fraction | float | str,
    trials: int,
    seed: int = 0,
    chunk: int = 1 << 13,
) -> SimReport:
    """Simulate i.i.d. erasures and measure genie-aided per-bit rates.

    Rates are reported for every u-bit; the block error rate counts trials
    where any unfrozen bit was undecodable.  Results are deterministic given
    the seed (fixed chunking) and independent of the transmitted values.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    rng = np.random.default_rng(seed)
    n_bits = spec.n
    info = [i for i in range(n_bits) if i not in set(spec.frozen)]
    bit_fail = np.zeros(n_bits, dtype=np.int64)
    block_fail = 0
    remaining = trials
    p = float(eps)
    while remaining:
        size = min(chunk, remaining)
        erased = rng.random((size, spec.total_len)) < p
        flags = erasure_flow(spec, erased)
        bit_fail += flags.sum(axis=0)
        if info:
            block_fail += int(flags[:, info].any(axis=1).sum())
        remaining -= size
    ops_each = decode_operation_count(spec)
    return SimReport(
        spec=spec,
        eps=eps,
        trials=trials,
        seed=seed,
        per_bit_rates=tuple(float(v) / trials for v in bit_fail),
        block_error_rate=block_fail / trials,
        operations=ops_each * trials,
        operations_per_decode=ops_each,
    )


# -- oracle vs analysis comparison -------------------------------------------

@dataclass(frozen=True)
class OracleComparison:
    """Coefficient-level comparison of oracle and analysis channel sets."""

    label: str
    m: int
    total_len: int
    oracle_polys: tuple[Poly, ...]
    analysis_polys: tuple[Poly, ...]
    mismatched_bits: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return not self.mismatched_bits

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "m": self.m,
            "total_len": self.total_len,
            "equal": self.equal,
            "mismatched_bits": list(self.mismatched_bits),
            "oracle": [p.to_strings() for p in self.oracle_polys],
            "analysis": [p.to_strings() for p in self.analysis_polys],
        }


def compare_oracle_with_analysis(
    family: PatternFamily,
    assignment: PatternAssignment,
    m: int,
    t: int,
    analysis: Sequence[Poly] | None = None,
    label: str = "",
) -> OracleComparison:
    """Run the oracle and diff it against analysis channels, per coefficient.

    ``analysis`` defaults to the design channels of the assignment; pass the
    golden reference expressions to compare those instead.  Sub-codeword
    channels are composed with the inner polarization maps so both sides
    describe the same 2**m bits.
    """
    spec = oracle_spec(family, assignment, m, t)
    oracle = exact_erasure_oracle(spec)
    if analysis is None:
        analysis = assignment_erasures(assignment, family).per_subword
    composed = [
        standard_synthetic_channel(m - t, i, base=analysis[j])
        for j in range(1 << t)
        for i in range(1 << (m - t))
    ]
    mism = tuple(i for i in range(1 << m) if oracle[i] != composed[i])
    return OracleComparison(
        label=label or f"{family.kind}:{assignment.label()} m={m}",
        m=m,
        total_len=spec.total_len,
        oracle_polys=tuple(oracle),
        analysis_polys=tuple(composed),
        mismatched_bits=mism,
    )
