"""Two-layer Reed-Solomon identification baseline.

The comparison scheme concatenates two univariate evaluations: an outer
polynomial with k_out coefficients over the extension GF(q^k_in) is
evaluated at r1, the resulting symbol is split into its k_in base-field
coordinates, and those become the coefficients of an inner polynomial
evaluated at r2 in GF(q).  The tag is the inner value.  A union bound gives
a false-accept fraction of at most (k_out-1)/q^k_in + (k_in-1)/q.

epsilon_2rs searches this family for the smallest error at (essentially)
the same identity size as a given polynomial-tag code, which is the budget
a multi-challenge round has to beat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .ff import Field, field_for
from .rmid import IdCodeParams


@dataclass(frozen=True)
class RsIdParams:
    field: Field
    k_in: int
    k_out: int

    def __post_init__(self) -> None:
        if not 1 <= self.k_in < self.field.q:
            raise ValueError(
                f"inner coefficient count k_in={self.k_in} must be in [1, q)"
            )
        if not 1 <= self.k_out < self.field.q ** self.k_in:
            raise ValueError(
                f"outer coefficient count k_out={self.k_out} must be in [1, q^k_in)"
            )

    @cached_property
    def outer_field(self) -> Field:
        # GF(q^k_in) realized as GF(p^(m*k_in))
        return field_for(self.field.p, self.field.m * self.k_in)

    @property
    def identity_space(self) -> int:
        """Identities are outer coefficient vectors: (q^k_in)^k_out of them."""
        return self.outer_field.q ** self.k_out


@dataclass(frozen=True)
class RsErrorQuote:
    params: RsIdParams
    error: Fraction
    size_bits: float

    @classmethod
    def quote(cls, params: RsIdParams) -> "RsErrorQuote":
        q = params.field.q
        error = Fraction(params.k_out - 1, q ** params.k_in) + Fraction(
            params.k_in - 1, q
        )
        if error > 1:
            error = Fraction(1)
        size_bits = params.k_out * params.k_in * params.field.log2_q
        return cls(params, error, size_bits)

    def to_json_dict(self) -> dict:
        return {
            "k_in": self.params.k_in,
            "k_out": self.params.k_out,
            "error": float(self.error),
            "error_exact": str(self.error),
            "size_bits": self.size_bits,
        }


@dataclass(frozen=True)
class RsChallenge:
    r1: int  # point in GF(q^k_in), canonical integer
    r2: int  # point in GF(q)
    tag: int


def _split_outer_symbol(params: RsIdParams, y: int) -> tuple[int, ...]:
    """GF(q^k_in) -> GF(q)^k_in: chunk the base-p digit vector into k_in
    groups of m digits, low chunk first."""
    base, m = params.field, params.field.m
    digits = params.outer_field.digits(y)
    return tuple(
        base.from_digits(digits[i * m : (i + 1) * m]) for i in range(params.k_in)
    )


def _horner(field: Field, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def rs_tag(params: RsIdParams, outer_coeffs: Sequence[int], r1: int, r2: int) -> int:
    if len(outer_coeffs) != params.k_out:
        raise ValueError(f"expected {params.k_out} outer coefficients")
    y = _horner(params.outer_field, outer_coeffs, params.outer_field._check(r1))
    inner = _split_outer_symbol(params, y)
    return _horner(params.field, inner, params.field._check(r2))


def rs_generate_challenge(
    params: RsIdParams, outer_coeffs: Sequence[int], rng
) -> RsChallenge:
    r1 = params.outer_field.sample_uniform(rng)
    r2 = params.field.sample_uniform(rng)
    return RsChallenge(r1, r2, rs_tag(params, outer_coeffs, r1, r2))


def rs_verify(
    params: RsIdParams, outer_coeffs: Sequence[int], challenge: RsChallenge
) -> bool:
    return rs_tag(params, outer_coeffs, challenge.r1, challenge.r2) == challenge.tag


# ---------------------------------------------------------------------------
# the comparison budget

def rs_candidates(target: IdCodeParams, k_in_max: int = 8) -> list[RsErrorQuote]:
    """All layered quotes that fit the target's size: for each inner width
    k_in, the outer length is pushed as high as k_in*k_out <= C(ell+k, ell)
    allows (symbol counts compare exactly; the log2 q factor cancels)."""
    q = target.field.q
    budget = target.coeff_count
    quotes = []
    for k_in in range(1, min(k_in_max, q - 1) + 1):
        k_out = min(budget // k_in, q ** k_in - 1)
        if k_out < 1:
            continue
        quotes.append(RsErrorQuote.quote(RsIdParams(target.field, k_in, k_out)))
    return quotes


def epsilon_2rs(target: IdCodeParams, k_in_max: int = 8) -> RsErrorQuote:
    """Smallest union-bound error among size-maximal layered quotes; ties go
    to the smaller (k_in, k_out).  Shrinking k_out below the size budget is
    not allowed, otherwise the degenerate one-symbol code with zero error
    would win every comparison."""
    quotes = rs_candidates(target, k_in_max)
    if not quotes:
        raise ValueError(
            f"no layered code fits a budget of {target.coeff_count} symbols"
        )
    return min(quotes, key=lambda rq: (rq.error, rq.params.k_in, rq.params.k_out))


def required_rm_challenges(target: IdCodeParams, k_in_max: int = 8) -> int:
    """Smallest n with (k/q)^n at or below the layered baseline's error."""
    if target.k == 0:
        return 1
    eps = epsilon_2rs(target, k_in_max).error
    return min_challenges_for(Fraction(target.k, target.field.q), eps)


def min_challenges_for(ratio: Fraction, eps: Fraction) -> int:
    """Smallest n >= 1 with ratio^n <= eps, exact rational arithmetic."""
    if not 0 <= ratio < 1:
        raise ValueError(f"per-challenge error ratio must be in [0, 1), got {ratio}")
    if eps <= 0:
        raise ValueError(f"target error must be positive, got {eps}")
    n = 1
    power = ratio
    while power > eps:
        n += 1
        power *= ratio
        if n > 10_000:
            raise ValueError("challenge count diverged; target error too small")
    return n
