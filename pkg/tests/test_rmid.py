import itertools
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secrid.ff import Field, field_for
from secrid.rmid import (
    Challenge,
    IdCodeParams,
    Identity,
    MultiChallenge,
    capacity_diagnostics,
    code_size_bits,
    error_bound,
    evaluate_tag,
    generate_challenge,
    generate_multi,
    identity_from_bytes,
    identity_to_bytes,
    monomial_exponents,
    verify,
    verify_multi,
)

from util import ScriptedSource


def brute_force_exponents(ell, k):
    # independent oracle: enumerate the whole cube, filter, sort
    cube = itertools.product(range(k + 1), repeat=ell)
    kept = [e for e in cube if sum(e) <= k]
    return sorted(kept, key=lambda e: (sum(e), e))


def brute_force_tag(identity, r):
    field = identity.params.field
    acc = 0
    for c, exps in zip(identity.coeffs, monomial_exponents(identity.params.ell, identity.params.k)):
        term = c
        for rj, e in zip(r, exps):
            term = field.mul(term, field.pow(rj, e))
        acc = field.add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# monomial order

def test_monomial_order_frozen_ell2_k2():
    assert monomial_exponents(2, 2) == [
        (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
    ]


def test_monomial_order_univariate_is_power_basis():
    assert monomial_exponents(1, 4) == [(0,), (1,), (2,), (3,), (4,)]


@pytest.mark.parametrize("ell,k", [(1, 5), (2, 3), (3, 4), (4, 2), (5, 1)])
def test_monomial_order_matches_brute_force(ell, k):
    assert monomial_exponents(ell, k) == brute_force_exponents(ell, k)


@pytest.mark.parametrize("ell,k", [(1, 3), (2, 4), (3, 3), (6, 2)])
def test_coeff_count_is_binomial(ell, k):
    params = IdCodeParams(field_for(5, 1), ell, k)
    assert params.coeff_count == math.comb(ell + k, ell)
    assert len(monomial_exponents(ell, k)) == params.coeff_count


# ---------------------------------------------------------------------------
# evaluation

def test_univariate_example_tag():
    # 1 + 2r + 3r^2 at r = 2 over GF(5): 1 + 4 + 12 = 17 = 2
    params = IdCodeParams(field_for(5, 1), 1, 2)
    identity = Identity(params, (1, 2, 3))
    assert evaluate_tag(identity, (2,)) == 2


@pytest.mark.parametrize(
    "q,ell,k",
    [(5, 1, 3), (5, 2, 2), (7, 2, 3), (9, 3, 2), (8, 2, 2), (25, 1, 4)],
)
def test_evaluation_matches_monomial_oracle(q, ell, k):
    field = Field.from_q(q)
    params = IdCodeParams(field, ell, k)
    rng = random.Random(q * 100 + ell * 10 + k)
    for _ in range(20):
        identity = Identity(params, field.sample_vector(rng, params.coeff_count))
        r = field.sample_vector(rng, ell)
        assert evaluate_tag(identity, r) == brute_force_tag(identity, r)


def test_evaluation_at_origin_reads_constant_coeff():
    params = IdCodeParams(field_for(7, 1), 3, 2)
    rng = random.Random(3)
    identity = Identity(params, field_for(7, 1).sample_vector(rng, params.coeff_count))
    assert evaluate_tag(identity, (0, 0, 0)) == identity.coeffs[0]


def test_evaluate_rejects_bad_point():
    params = IdCodeParams(field_for(5, 1), 2, 2)
    identity = Identity(params, (0,) * params.coeff_count)
    with pytest.raises(ValueError):
        evaluate_tag(identity, (0,))  # wrong arity
    with pytest.raises(ValueError):
        evaluate_tag(identity, (0, 5))  # out of range


# ---------------------------------------------------------------------------
# challenge and verify

def test_own_identity_always_accepts():
    field = field_for(7, 1)
    params = IdCodeParams(field, 2, 3)
    rng = random.Random(11)
    identity = Identity(params, field.sample_vector(rng, params.coeff_count))
    for _ in range(50):
        assert verify(identity, generate_challenge(identity, rng))


def test_distinct_identities_with_constant_difference_never_collide():
    # p_i - p_j = 1 everywhere, so no challenge point can confuse them
    params = IdCodeParams(field_for(5, 1), 1, 2)
    id_i = Identity(params, (0, 2, 3))
    id_j = Identity(params, (1, 2, 3))
    for r in range(5):
        tag_i = evaluate_tag(id_i, (r,))
        assert not verify(id_j, Challenge((r,), tag_i))


def test_false_accept_fraction_obeys_degree_bound():
    params = IdCodeParams(field_for(7, 1), 1, 3)
    id_i = Identity(params, (1, 0, 0, 1))
    id_j = Identity(params, (0, 0, 0, 0))
    hits = sum(
        verify(id_j, Challenge((r,), evaluate_tag(id_i, (r,)))) for r in range(7)
    )
    # r^3 + 1 has at most 3 roots in GF(7)
    assert Fraction(hits, 7) <= Fraction(3, 7)


def test_scripted_challenge_point():
    field = field_for(5, 1)
    params = IdCodeParams(field, 1, 2)
    identity = Identity(params, (1, 2, 3))
    ch = generate_challenge(identity, ScriptedSource([2]))
    assert ch.r == (2,)
    assert ch.tag == 2


def test_multi_false_accept_is_per_challenge_product():
    # over all (r1, r2) pairs the 2-challenge acceptance count for a rival
    # is exactly (single-challenge count)^2
    field = field_for(5, 1)
    params1 = IdCodeParams(field, 1, 2, 1)
    id_i = Identity(params1, (0, 0, 1))
    id_j = Identity(params1, (1, 0, 0))  # difference r^2 - 1, roots {1, 4}
    singles = [
        r for r in range(5)
        if verify(id_j, Challenge((r,), evaluate_tag(id_i, (r,))))
    ]
    assert singles == [1, 4]
    params2 = IdCodeParams(field, 1, 2, 2)
    id_i2 = Identity(params2, id_i.coeffs)
    id_j2 = Identity(params2, id_j.coeffs)
    doubles = 0
    for r1 in range(5):
        for r2 in range(5):
            mc = MultiChallenge(
                (
                    Challenge((r1,), evaluate_tag(id_i2, (r1,))),
                    Challenge((r2,), evaluate_tag(id_i2, (r2,))),
                )
            )
            doubles += verify_multi(id_j2, mc)
    assert doubles == len(singles) ** 2


def test_verify_multi_rejects_wrong_count():
    field = field_for(5, 1)
    params = IdCodeParams(field, 1, 2, 2)
    identity = Identity(params, (1, 2, 3))
    with pytest.raises(ValueError):
        verify_multi(identity, MultiChallenge((Challenge((0,), 1),)))


# ---------------------------------------------------------------------------
# size and error accounting

def test_error_bound_values():
    field = field_for(3, 10)
    assert error_bound(IdCodeParams(field, 2, 20, 1)) == Fraction(20, 59049)
    assert error_bound(IdCodeParams(field, 2, 20, 2)) == Fraction(20, 59049) ** 2


def test_code_size_bits_values():
    assert code_size_bits(IdCodeParams(field_for(2, 4), 1, 2)) == pytest.approx(12.0)
    assert code_size_bits(IdCodeParams(field_for(5, 1), 1, 2)) == pytest.approx(
        3 * math.log2(5)
    )


def test_params_validation():
    field = field_for(5, 1)
    with pytest.raises(ValueError):
        IdCodeParams(field, 0, 2)
    with pytest.raises(ValueError):
        IdCodeParams(field, 1, -1)
    with pytest.raises(ValueError):
        IdCodeParams(field, 1, 5)  # k must stay below q
    with pytest.raises(ValueError):
        IdCodeParams(field, 1, 2, 0)
    # k = 0 is the degenerate constant code and is allowed
    assert IdCodeParams(field, 1, 0).coeff_count == 1


# ---------------------------------------------------------------------------
# byte and JSON codecs

def test_identity_bytes_is_base_q_big_endian():
    params = IdCodeParams(field_for(5, 2), 1, 2)  # q = 25, 3 coeffs
    identity = identity_from_bytes(bytes([1, 4]), params)
    # 0x0104 = 260 = 0*625 + 10*25 + 10
    assert identity.coeffs == (0, 10, 10)
    assert identity_to_bytes(identity) == bytes([1, 4])


def test_identity_bytes_roundtrip_random():
    params = IdCodeParams(field_for(3, 2), 2, 2)  # 9^6 identities
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(1, 8)
        payload = bytes(rng.randrange(256) for _ in range(n))
        payload = payload.lstrip(b"\x00") or b"\x00"
        value = int.from_bytes(payload, "big")
        if value >= 9 ** params.coeff_count:
            continue
        identity = identity_from_bytes(payload, params)
        if value == 0:
            assert identity_to_bytes(identity) == b""
        else:
            assert identity_to_bytes(identity) == payload


def test_identity_from_bytes_rejects_oversized_payload():
    params = IdCodeParams(field_for(2, 1), 1, 1)  # 4 identities total
    with pytest.raises(ValueError):
        identity_from_bytes(bytes([4]), params)


def test_identity_json_roundtrip():
    field = field_for(5, 2)
    params = IdCodeParams(field, 2, 2, 3)
    rng = random.Random(9)
    identity = Identity(params, field.sample_vector(rng, params.coeff_count))
    blob = json.dumps(identity.to_json_dict())
    back = Identity.from_json_dict(json.loads(blob))
    assert back == identity
    assert back.params.field == field


def test_identity_json_rejects_inconsistent_q():
    field = field_for(5, 1)
    params = IdCodeParams(field, 1, 2)
    obj = Identity(params, (1, 2, 3)).to_json_dict()
    obj["q_params"]["q"] = 26
    with pytest.raises(ValueError):
        Identity.from_json_dict(obj)


def test_challenge_binary_roundtrip():
    field = field_for(3, 10)
    ch = Challenge((101, 90), 4)
    blob = ch.to_bytes(field)
    assert len(blob) == 3 * field.symbol_bytes
    assert Challenge.from_bytes(blob, field, 2) == ch


def test_multichallenge_codecs_roundtrip():
    field = field_for(7, 1)
    mc = MultiChallenge((Challenge((1, 2), 3), Challenge((4, 5), 6)))
    assert MultiChallenge.from_json_dict(mc.to_json_dict()) == mc
    blob = mc.to_bytes(field)
    assert MultiChallenge.from_bytes(blob, field, ell=2, n=2) == mc


# ---------------------------------------------------------------------------
# scaling diagnostics

def test_capacity_family_shape():
    d = capacity_diagnostics(1)
    assert d.ell == 2
    assert d.k_over_q == pytest.approx(0.5)
    d4 = capacity_diagnostics(4)
    assert d4.ell == 16
    assert d4.k_over_q == pytest.approx(2 ** -4)


def test_capacity_interval_brackets_target():
    for n in range(2, 13):
        d = capacity_diagnostics(n)
        target = (n * n - 2 * n) / (n * n)
        assert d.ratio_lower <= target <= d.ratio_upper
        assert d.ratio_lower == pytest.approx(target)


def test_capacity_interval_tightens():
    widths = [
        capacity_diagnostics(n).ratio_upper - capacity_diagnostics(n).ratio_lower
        for n in range(2, 13)
    ]
    assert all(a > b for a, b in zip(widths, widths[1:]))


@given(st.integers(min_value=1, max_value=40))
@settings(max_examples=40, deadline=None)
def test_capacity_ratios_are_ordered_and_bounded(n):
    d = capacity_diagnostics(n)
    assert 0.0 < d.k_over_q <= 0.5
    assert d.ratio_lower <= d.ratio_upper
    if n >= 2:  # n = 1 is the degenerate corner of the family
        assert 0.0 <= d.ratio_lower < 1.0
        assert d.ratio_upper <= 1.0
