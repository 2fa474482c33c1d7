"""Identification via Reed-Muller tag polynomials.

An identity is the coefficient vector of an ell-variate polynomial of total
degree at most k over GF(q), laid out in graded lexicographic monomial
order.  A challenge is a uniformly random point r of GF(q)^ell together
with the tag p_i(r); the verifier accepts iff its own polynomial agrees.
Distinct identities collide on at most a k/q fraction of points, and n
independent challenges push the false-accept bound to (k/q)^n while the
identity space stays doubly exponential in the challenge length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .ff import Field, field_for


def monomial_exponents(ell: int, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples of all ell-variate monomials with total degree <= k,
    in graded lexicographic order (degree first, then ascending tuple
    comparison).  This fixed enumeration is the wire layout of identities."""
    out: list[tuple[int, ...]] = []
    for degree in range(k + 1):
        out.extend(_compositions(ell, degree))
    return out


def _compositions(slots: int, total: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(slots - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class IdCodeParams:
    """Code geometry: GF(q), ell variables, degree bound k, and how many
    independent challenges a verification round uses."""

    field: Field
    ell: int
    k: int
    n_challenges: int = 1

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError(f"need at least one variable, got ell={self.ell}")
        if not 0 <= self.k < self.field.q:
            raise ValueError(
                f"degree bound k={self.k} must satisfy 0 <= k < q={self.field.q}"
            )
        if self.n_challenges < 1:
            raise ValueError(f"n_challenges must be >= 1, got {self.n_challenges}")

    @cached_property
    def coeff_count(self) -> int:
        return math.comb(self.ell + self.k, self.ell)

    @cached_property
    def _eval_chain(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Incremental evaluation plan: monomial i equals monomial pred[i]
        times variable var[i], so a sweep costs one multiplication per
        monomial.  Entry 0 is the constant monomial."""
        exponents = monomial_exponents(self.ell, self.k)
        index = {e: i for i, e in enumerate(exponents)}
        pred = [0] * len(exponents)
        var = [0] * len(exponents)
        for i, exps in enumerate(exponents):
            if i == 0:
                continue
            j = next(pos for pos, e in enumerate(exps) if e > 0)
            shorter = list(exps)
            shorter[j] -= 1
            pred[i] = index[tuple(shorter)]
            var[i] = j
        return tuple(pred), tuple(var)


@dataclass(frozen=True)
class Identity:
    params: IdCodeParams
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.params.coeff_count:
            raise ValueError(
                f"identity needs {self.params.coeff_count} coefficients, "
                f"got {len(self.coeffs)}"
            )
        q = self.params.field.q
        for c in self.coeffs:
            if not 0 <= c < q:
                raise ValueError(f"coefficient {c} outside [0, {q})")

    def to_json_dict(self) -> dict:
        f = self.params.field
        return {
            "q_params": {
                "p": f.p,
                "m": f.m,
                "q": f.q,
                "irreducible": list(f.irreducible),
            },
            "ell": self.params.ell,
            "k": self.params.k,
            "n": self.params.n_challenges,
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Identity":
        qp = obj["q_params"]
        field = field_for(qp["p"], qp["m"])
        if "irreducible" in qp and tuple(qp["irreducible"]) != field.irreducible:
            raise ValueError("reducing polynomial does not match the canonical one")
        if "q" in qp and qp["q"] != field.q:
            raise ValueError(f"inconsistent q_params: q={qp['q']} vs p^m={field.q}")
        params = IdCodeParams(field, obj["ell"], obj["k"], obj.get("n", 1))
        return cls(params, tuple(obj["coeffs"]))


@dataclass(frozen=True)
class Challenge:
    r: tuple[int, ...]
    tag: int

    def to_json_dict(self) -> dict:
        return {"r": list(self.r), "tag": self.tag}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Challenge":
        return cls(tuple(obj["r"]), obj["tag"])

    def to_bytes(self, field: Field) -> bytes:
        """ell + 1 fixed-width symbols: the point, then the tag."""
        return field.encode_symbols(self.r + (self.tag,))

    @classmethod
    def from_bytes(cls, data: bytes, field: Field, ell: int) -> "Challenge":
        symbols = field.decode_symbols(data, ell + 1)
        return cls(symbols[:ell], symbols[ell])


@dataclass(frozen=True)
class MultiChallenge:
    challenges: tuple[Challenge, ...]

    def to_json_dict(self) -> dict:
        return {"challenges": [c.to_json_dict() for c in self.challenges]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MultiChallenge":
        return cls(tuple(Challenge.from_json_dict(c) for c in obj["challenges"]))

    def to_bytes(self, field: Field) -> bytes:
        return b"".join(c.to_bytes(field) for c in self.challenges)

    @classmethod
    def from_bytes(cls, data: bytes, field: Field, ell: int, n: int) -> "MultiChallenge":
        step = (ell + 1) * field.symbol_bytes
        if len(data) != n * step:
            raise ValueError(f"expected {n * step} bytes, got {len(data)}")
        return cls(
            tuple(
                Challenge.from_bytes(data[i * step : (i + 1) * step], field, ell)
                for i in range(n)
            )
        )


# ---------------------------------------------------------------------------
# byte-string identities

def identity_from_bytes(data: bytes, params: IdCodeParams) -> Identity:
    """Interpret bytes as one big-endian integer and expand it base q,
    most significant digit first, zero-padded to the coefficient count."""
    value = int.from_bytes(data, "big")
    q = params.field.q
    n = params.coeff_count
    if value >= q ** n:
        raise ValueError(
            f"payload needs more than {n} base-{q} digits; "
            f"identity space holds only q^{n}"
        )
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        value, digits[i] = divmod(value, q)
    return Identity(params, tuple(digits))


def identity_to_bytes(identity: Identity) -> bytes:
    """Minimal big-endian encoding of the base-q value.  Round-trips exactly
    on admissible inputs: byte strings without a leading zero byte (the
    empty string encodes the all-zero identity)."""
    q = identity.params.field.q
    value = 0
    for d in identity.coeffs:
        value = value * q + d
    return value.to_bytes((value.bit_length() + 7) // 8, "big")


# ---------------------------------------------------------------------------
# challenge / verify

def evaluate_tag(identity: Identity, r: Sequence[int]) -> int:
    """p_i(r) by a single graded-lex sweep; one multiplication builds each
    monomial from its predecessor, one more folds in the coefficient."""
    params = identity.params
    field = params.field
    if len(r) != params.ell:
        raise ValueError(f"point has {len(r)} coordinates, expected {params.ell}")
    point = tuple(field._check(x) for x in r)
    add, mul = field.fast_ops()
    pred, var = params._eval_chain
    coeffs = identity.coeffs
    count = len(coeffs)
    vals = [1] * count
    acc = coeffs[0]
    for i in range(1, count):
        v = mul(vals[pred[i]], point[var[i]])
        vals[i] = v
        c = coeffs[i]
        if c:
            acc = add(acc, mul(c, v))
    return acc


def generate_challenge(identity: Identity, rng) -> Challenge:
    params = identity.params
    r = params.field.sample_vector(rng, params.ell)
    return Challenge(r, evaluate_tag(identity, r))


def verify(identity: Identity, challenge: Challenge) -> bool:
    return evaluate_tag(identity, challenge.r) == challenge.tag


def generate_multi(identity: Identity, rng) -> MultiChallenge:
    return MultiChallenge(
        tuple(
            generate_challenge(identity, rng)
            for _ in range(identity.params.n_challenges)
        )
    )


def verify_multi(identity: Identity, mc: MultiChallenge) -> bool:
    """Accept only if every challenge verifies."""
    if len(mc.challenges) != identity.params.n_challenges:
        raise ValueError(
            f"expected {identity.params.n_challenges} challenges, "
            f"got {len(mc.challenges)}"
        )
    return all(verify(identity, c) for c in mc.challenges)


# ---------------------------------------------------------------------------
# size and error accounting

def error_bound(params: IdCodeParams) -> Fraction:
    """Exact false-accept bound (k/q)^n for distinct identities: two distinct
    degree-<=k polynomials agree on at most a k/q fraction of points, and
    challenges are independent."""
    return Fraction(params.k, params.field.q) ** params.n_challenges


def code_size_bits(params: IdCodeParams) -> float:
    """log2 of the identity count: C(ell+k, ell) * log2 q."""
    return params.coeff_count * params.field.log2_q


@dataclass(frozen=True)
class CapacityDiagnostics:
    """Scaling ratios of the self-similar family q = 2^(n^2), k = 2^(n^2-n),
    ell = 2^n, computed purely in exponent arithmetic since q itself is
    astronomically large.  The loglog interval encloses loglog(I)/log(R)
    using (k/ell)^ell <= C(k+ell, ell) <= (e(k+ell)/ell)^ell."""

    n_seq: int
    ell: int
    log_t_over_log_r: float
    k_over_q: float
    ratio_lower: float
    ratio_upper: float

    def to_json_dict(self) -> dict:
        return {
            "n_seq": self.n_seq,
            "ell": self.ell,
            "log_t_over_log_r": self.log_t_over_log_r,
            "k_over_q": self.k_over_q,
            "loglog_ratio_interval": [self.ratio_lower, self.ratio_upper],
        }


def capacity_diagnostics(n_seq: int) -> CapacityDiagnostics:
    if n_seq < 1:
        raise ValueError(f"sequence index must be >= 1, got {n_seq}")
    n = n_seq
    ell = 2 ** n
    log2_q = n * n  # q = 2^(n^2), never materialized
    # tag/randomness rate: log q / (ell * log q)
    log_t_over_log_r = 1.0 / ell
    k_over_q = math.ldexp(1.0, -n)  # 2^(n^2-n) / 2^(n^2)
    # lower: log2(k/ell) / log2 q, exact in exponents
    lower = (n * n - 2 * n) / (n * n)
    # upper keeps the loglog q term and the (k+ell)/ell form
    tail = math.ldexp(1.0, 2 * n - n * n)  # (ell/k), underflows harmlessly
    log2_kpl_over_ell = (n * n - 2 * n) + math.log2(1.0 + tail)
    upper = (2 * math.log2(n) / ell + math.log2(math.e) + log2_kpl_over_ell) / (n * n)
    return CapacityDiagnostics(
        n_seq=n,
        ell=ell,
        log_t_over_log_r=log_t_over_log_r,
        k_over_q=k_over_q,
        ratio_lower=lower,
        ratio_upper=upper,
    )
