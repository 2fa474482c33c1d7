"""Brute-force information-theoretic oracles.

Everything here exists to check the closed-form accounting by exhaustive
enumeration at toy scale: exact total variation between conditional
seed-observation laws for a given per-symbol observation channel, exact
collision-entropy budgets, and exact identification error fractions.
Distributions are kept as exact rationals end to end; floats appear only in
reported logarithms.

Conventions: total variation is the unhalved sum of absolute differences
(maximum 2), and collision divergence D2(P||Q) = log2 sum P^2/Q is +inf as
soon as P puts mass outside the support of Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .rmid import Identity, IdCodeParams, evaluate_tag
from .wiretap import (
    SecrecyParams,
    enumerate_seeds,
    hyperplane,
    kappa_d2_bits,
    leakage_bound,
    leakage_bound_squared,
)

# enumeration guard: inputs * seeds * outputs of the vector channel
STATE_SPACE_LIMIT = 100_000_000

_NUM_TOLERANCE = 1e-12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary expansion
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact probability")


def _check_distribution(dist: Sequence) -> tuple[Fraction, ...]:
    probs = tuple(_as_fraction(v) for v in dist)
    if any(v < 0 for v in probs):
        raise ValueError("negative probability mass")
    total = sum(probs)
    if abs(float(total) - 1.0) > _NUM_TOLERANCE:
        raise ValueError(f"distribution sums to {float(total)}, not 1")
    return probs


def total_variation(p: Sequence, q: Sequence) -> Fraction:
    """Unhalved: sum |p_i - q_i|, up to 2 for disjoint supports."""
    pp, qq = _check_distribution(p), _check_distribution(q)
    if len(pp) != len(qq):
        raise ValueError("distributions live on different universes")
    return sum(abs(a - b) for a, b in zip(pp, qq))


def renyi2_pow(p: Sequence, q: Sequence) -> Fraction | None:
    """2^(D2(p||q)) as an exact rational, or None when D2 is infinite."""
    pp, qq = _check_distribution(p), _check_distribution(q)
    if len(pp) != len(qq):
        raise ValueError("distributions live on different universes")
    acc = Fraction(0)
    for a, b in zip(pp, qq):
        if a == 0:
            continue
        if b == 0:
            return None
        acc += a * a / b
    return acc


def renyi2(p: Sequence, q: Sequence) -> float:
    """Collision divergence in bits; +inf on support violation."""
    pow2 = renyi2_pow(p, q)
    return math.inf if pow2 is None else math.log2(pow2)


# ---------------------------------------------------------------------------
# channels

@dataclass(frozen=True)
class ChannelModel:
    """Per-symbol observation channel: rows are inputs 0..q-1, columns are
    outputs (an erasure channel has one extra output, the erasure mark)."""

    kind: str
    q: int
    matrix: tuple[tuple[Fraction, ...], ...]
    delta: Fraction | None = None

    def __post_init__(self) -> None:
        if len(self.matrix) != self.q:
            raise ValueError(f"need {self.q} rows, got {len(self.matrix)}")
        width = len(self.matrix[0])
        for row in self.matrix:
            if len(row) != width:
                raise ValueError("ragged transition matrix")
            if any(v < 0 for v in row):
                raise ValueError("negative transition probability")
            if sum(row) != 1:
                raise ValueError(f"row of {self.kind} channel sums to {sum(row)}")

    @property
    def n_outputs(self) -> int:
        return len(self.matrix[0])

    @classmethod
    def identity(cls, q: int) -> "ChannelModel":
        one, zero = Fraction(1), Fraction(0)
        rows = tuple(
            tuple(one if z == x else zero for z in range(q)) for x in range(q)
        )
        return cls("identity", q, rows)

    @classmethod
    def uniform(cls, q: int) -> "ChannelModel":
        u = Fraction(1, q)
        return cls("uniform", q, tuple(tuple(u for _ in range(q)) for _ in range(q)))

    @classmethod
    def symmetric(cls, q: int, delta) -> "ChannelModel":
        """Stays put with probability 1 - delta, otherwise uniform over the
        q - 1 other symbols; delta = (q-1)/q is the uniform channel."""
        d = _as_fraction(delta)
        if not 0 <= d <= 1:
            raise ValueError(f"flip probability must be in [0, 1], got {delta}")
        if q < 2:
            raise ValueError("symmetric channel needs q >= 2")
        off = d / (q - 1)
        rows = tuple(
            tuple(1 - d if z == x else off for z in range(q)) for x in range(q)
        )
        return cls("symmetric", q, rows, delta=d)

    @classmethod
    def erasure(cls, q: int, delta) -> "ChannelModel":
        """Output q is the erasure mark, hit with probability delta."""
        d = _as_fraction(delta)
        if not 0 <= d <= 1:
            raise ValueError(f"erasure probability must be in [0, 1], got {delta}")
        rows = tuple(
            tuple((1 - d if z == x else Fraction(0)) for z in range(q)) + (d,)
            for x in range(q)
        )
        return cls("erasure", q, rows, delta=d)

    @classmethod
    def from_matrix(cls, kind: str, matrix: Sequence[Sequence]) -> "ChannelModel":
        rows = tuple(tuple(_as_fraction(v) for v in row) for row in matrix)
        return cls(kind, len(rows), rows)

    def power(self, n: int) -> "ChannelModel":
        """Memoryless n-fold product; inputs and outputs are mixed-radix
        encodings of the coordinate tuples.  Only sensible at toy sizes."""
        if n < 1:
            raise ValueError("power needs n >= 1")
        rows = []
        for xs in product(range(self.q), repeat=n):
            row = []
            for zs in product(range(self.n_outputs), repeat=n):
                v = Fraction(1)
                for x, z in zip(xs, zs):
                    v *= self.matrix[x][z]
                row.append(v)
            rows.append(tuple(row))
        return ChannelModel(f"{self.kind}^{n}", self.q ** n, tuple(rows), self.delta)


def conditional_d2_pow(channel: ChannelModel, input_dist: Sequence | None = None) -> Fraction:
    """2^(D2(W || P_X W | P_X)) exactly: the reference output law is the
    push-forward of the given input distribution (uniform by default)."""
    q = channel.q
    if input_dist is None:
        px: tuple[Fraction, ...] = tuple(Fraction(1, q) for _ in range(q))
    else:
        px = _check_distribution(input_dist)
        if len(px) != q:
            raise ValueError(f"input distribution needs {q} entries")
    n_out = channel.n_outputs
    py = [Fraction(0)] * n_out
    for x in range(q):
        if px[x]:
            for z in range(n_out):
                py[z] += px[x] * channel.matrix[x][z]
    acc = Fraction(0)
    for x in range(q):
        if px[x] == 0:
            continue
        row_sum = Fraction(0)
        for z in range(n_out):
            w = channel.matrix[x][z]
            if w:
                # py[z] > 0 whenever the row contributes, since px[x] > 0
                row_sum += w * w / py[z]
        acc += px[x] * row_sum
    return acc


def conditional_d2(channel: ChannelModel, input_dist: Sequence | None = None) -> float:
    """Conditional collision divergence of a channel in bits."""
    return math.log2(conditional_d2_pow(channel, input_dist))


# ---------------------------------------------------------------------------
# exact leakage of the hyperplane cipher

@dataclass(frozen=True)
class LeakageReport:
    q: int
    ell_prime: int
    channel_kind: str
    delta: Fraction | None
    exact_max_tv: Fraction
    exact_pairwise_tv: Fraction
    d2_pow: Fraction
    d2_bits: float
    kappa_true: float
    bound_tight: float
    bound_simplified: float

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "ell_prime": self.ell_prime,
            "channel": self.channel_kind,
            "delta": None if self.delta is None else float(self.delta),
            "exact_max_tv": float(self.exact_max_tv),
            "exact_max_tv_exact": str(self.exact_max_tv),
            "exact_pairwise_tv": float(self.exact_pairwise_tv),
            "exact_pairwise_tv_exact": str(self.exact_pairwise_tv),
            "d2_bits": self.d2_bits,
            "kappa_true": self.kappa_true,
            "bound_tight": self.bound_tight,
            "bound_simplified": self.bound_simplified,
        }

    def to_csv_row(self) -> list:
        return [
            self.q,
            self.ell_prime,
            "" if self.delta is None else float(self.delta),
            self.kappa_true,
            float(self.exact_max_tv),
            self.bound_tight,
            self.bound_simplified,
        ]


LEAKAGE_CSV_HEADER = [
    "q",
    "ell_prime",
    "delta",
    "kappa_true",
    "exact_max_tv",
    "bound_tight",
    "bound_simplified",
]


def exact_leakage(params: SecrecyParams, channel: ChannelModel) -> LeakageReport:
    """Enumerate the joint law of (seed, observation) for every message and
    measure both leakage statistics exactly, then cross-check them against
    the closed-form bounds at the channel's true collision budget.

    The observer sees each ciphertext symbol through one use of the
    per-symbol channel.  P(s, z | m) = (1/|S|) * (1/q^(ell'-1)) *
    sum over the hyperplane of prod_i W(z_i | x_i)."""
    field = params.field
    q = field.q
    if channel.q != q:
        raise ValueError(f"channel alphabet {channel.q} does not match q={q}")
    lp = params.ell_prime
    n_seeds = params.seed_space_size
    n_obs = channel.n_outputs ** lp
    if q ** lp * n_seeds * n_obs > STATE_SPACE_LIMIT:
        raise ValueError(
            f"state space q^ell' * |S| * |Z| = {q ** lp * n_seeds * n_obs} "
            f"too large for exact enumeration"
        )

    seeds = list(enumerate_seeds(params))
    obs = list(product(range(channel.n_outputs), repeat=lp))
    seed_weight = Fraction(1, n_seeds * q ** (lp - 1))
    w = channel.matrix

    # joint[m][s_index][z_index]
    joint: list[list[list[Fraction]]] = [
        [[Fraction(0)] * len(obs) for _ in seeds] for _ in range(q)
    ]
    for si, seed in enumerate(seeds):
        for m in range(q):
            row = joint[m][si]
            for x in hyperplane(params, seed, m):
                # distribution of the observation for this ciphertext
                probs = [Fraction(1)]
                for xi in x:
                    wrow = w[xi]
                    probs = [pz * wz for pz in probs for wz in wrow]
                for zi, pz in enumerate(probs):
                    if pz:
                        row[zi] += seed_weight * pz
    average = [
        [sum(joint[m][si][zi] for m in range(q)) / q for zi in range(len(obs))]
        for si in range(len(seeds))
    ]

    def tv_against(m: int, ref: list[list[Fraction]]) -> Fraction:
        return sum(
            abs(joint[m][si][zi] - ref[si][zi])
            for si in range(len(seeds))
            for zi in range(len(obs))
        )

    exact_max_tv = max(tv_against(m, average) for m in range(q))
    exact_pairwise_tv = max(
        tv_against(m, joint[m2]) for m in range(q) for m2 in range(q)
    )

    # collision budget of the vector channel at uniform input; products
    # factorize, so the per-symbol budget is raised to ell'
    d2_pow = conditional_d2_pow(channel) ** lp
    d2_bits = math.log2(d2_pow)
    kappa_true = d2_bits / (lp * field.log2_q)

    tight_sq, _ = leakage_bound_squared(q, lp, d2_pow)
    effective_sq = min(tight_sq, Fraction(4))  # the bound is clamped at TV <= 2
    for name, stat in (("max", exact_max_tv), ("pairwise", exact_pairwise_tv)):
        if stat < 0 or stat > 2:
            raise AssertionError(f"exact {name} TV {stat} outside [0, 2]")
        if stat * stat > effective_sq:
            raise AssertionError(
                f"exact {name} TV {float(stat)} exceeds the tight bound; "
                "the closed form or the enumeration is wrong"
            )
    bounds = leakage_bound(params, d2_bits)
    return LeakageReport(
        q=q,
        ell_prime=lp,
        channel_kind=channel.kind,
        delta=channel.delta,
        exact_max_tv=exact_max_tv,
        exact_pairwise_tv=exact_pairwise_tv,
        d2_pow=d2_pow,
        d2_bits=d2_bits,
        kappa_true=kappa_true,
        bound_tight=bounds.tight,
        bound_simplified=bounds.simplified,
    )


# ---------------------------------------------------------------------------
# exact identification error

def exact_id_error(id_i: Identity, id_j: Identity) -> Fraction:
    """Exact per-challenge acceptance fraction: how many points of GF(q)^ell
    make id_j's tag match id_i's.  exact_id_error(x, x) = 1."""
    if id_i.params != id_j.params:
        raise ValueError("identities use different code parameters")
    params = id_i.params
    q = params.field.q
    if q ** params.ell > 10_000_000:
        raise ValueError(f"q^ell = {q ** params.ell} too large to enumerate")
    hits = 0
    for r in product(range(q), repeat=params.ell):
        if evaluate_tag(id_i, r) == evaluate_tag(id_j, r):
            hits += 1
    return Fraction(hits, q ** params.ell)
