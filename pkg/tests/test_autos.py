import pytest

from oracles import range0_automorphism_oracle
from shiftlab import (
    apply_to_config,
    apply_to_word,
    build_chain,
    certify_automorphism,
    certify_free_semigroup,
    code_to_json,
    commutator,
    compose,
    coset_count,
    enumerate_automorphisms,
    equal_on_shift,
    find_inverse,
    pad,
    parse_code,
    preserves_occurrences,
    subgroup_closure,
)
from shiftlab.autos import BlockCode, product_code, reduce_range
from shiftlab.chains import Chain, ChainLevel
from shiftlab.errors import (
    InvalidChainError,
    RuleIncompleteError,
    SearchSpaceError,
    SpecFormatError,
)
from shiftlab.words import Configuration


def w(text):
    return tuple(text)


@pytest.fixture(scope="module")
def hallway_certs(systems):
    spec = systems["hallway"].spec
    codes = systems["hallway"].codes
    return {"a": certify_automorphism(spec, codes["phi_a"], 1).cert,
            "b": certify_automorphism(spec, codes["phi_b"], 1).cert}


# -- rule tables and application ----------------------------------------------

def test_block_code_requires_exact_table(systems):
    spec = systems["golden_mean"].spec
    with pytest.raises(ValueError):
        BlockCode(spec, 0, {("0",): "0"})  # missing the window ("1",)
    with pytest.raises(ValueError):
        BlockCode(spec, 0, {("0",): "0", ("1",): "1", ("1", "1"): "0"})


def test_apply_to_word_shift(systems):
    sigma = systems["full2"].codes["shift"]
    assert apply_to_word(sigma, w("010")) == w("0")
    assert apply_to_word(sigma, w("0110")) == w("10")


def test_apply_to_word_identity(systems):
    ident = systems["full2"].codes["identity"]
    assert apply_to_word(ident, w("0110")) == w("0110")


def test_apply_to_word_hallway_walk(systems):
    phi_a = systems["hallway"].codes["phi_a"]
    assert apply_to_word(phi_a, ("0", "p", "1", "0")) == ("0", "ap")


def test_apply_to_word_needs_window(systems):
    sigma = systems["full2"].codes["shift"]
    with pytest.raises(ValueError):
        apply_to_word(sigma, w("0"))


def test_apply_rule_incomplete_off_language(systems):
    ident = systems["golden_mean"].codes["identity"]
    padded = pad(ident, 1)
    with pytest.raises(RuleIncompleteError):
        apply_to_word(padded, w("0110"))


def test_apply_to_config_identity(systems):
    ident = systems["full2"].codes["identity"]
    for probe in systems["full2"].probes.values():
        assert apply_to_config(ident, probe) == probe


def test_apply_to_config_shift(systems):
    sigma = systems["full2"].codes["shift"]
    one = systems["full2"].probes["one"]
    assert apply_to_config(sigma, one) == one.shift(1)
    assert apply_to_config(sigma, one).get(-1) == "1"


def test_apply_to_config_hallway_hangs_picture(systems):
    hallway = systems["hallway"]
    image = apply_to_config(hallway.codes["phi_a"], hallway.probes["x1"])
    assert image.window(-1, 2) == ("0", "ap")
    image_b = apply_to_config(hallway.codes["phi_b"], hallway.probes["x1"])
    assert image_b.get(0) == "bp"


def test_word_point_consistency(systems):
    for name in ("full2", "at_most_one_1", "hallway"):
        system = systems[name]
        for code in system.codes.values():
            radius = code.radius
            for probe in system.probes.values():
                for start in (-3, -1, 0, 2):
                    expect = apply_to_word(
                        code, probe.window(start - radius, 5 + 2 * radius))
                    image = apply_to_config(code, probe)
                    assert image.window(start, 5) == expect


# -- composition, padding, equality -------------------------------------------

def test_compose_identity_is_padding(systems):
    full2 = systems["full2"]
    sigma = full2.codes["shift"]
    composed = compose(full2.codes["identity"], sigma)
    assert composed.radius == 1
    assert equal_on_shift(full2.spec, composed, sigma)


def test_compose_shifts(systems):
    full2 = systems["full2"]
    sigma = full2.codes["shift"]
    sigma2 = compose(sigma, sigma)
    assert sigma2.radius == 2
    assert equal_on_shift(full2.spec, sigma2, BlockCode.shift(full2.spec, 2))


def test_compose_matches_pointwise_action(systems):
    hallway = systems["hallway"]
    ab = compose(hallway.codes["phi_a"], hallway.codes["phi_b"])
    assert ab.radius == 2
    for probe in ("x1", "x2", "x3", "at_nail_1"):
        x = hallway.probes[probe]
        assert apply_to_config(ab, x) == apply_to_config(
            hallway.codes["phi_a"], apply_to_config(hallway.codes["phi_b"], x))


def test_equal_on_shift_examples(systems):
    full2 = systems["full2"]
    sigma, flip = full2.codes["shift"], full2.codes["flip"]
    assert equal_on_shift(full2.spec, compose(sigma, flip), compose(flip, sigma))
    ident = full2.codes["identity"]
    assert equal_on_shift(full2.spec, ident, pad(ident, 2))
    hallway = systems["hallway"]
    assert not equal_on_shift(hallway.spec, hallway.codes["phi_a"],
                              hallway.codes["phi_b"])


def test_reduce_range_inverts_padding(systems):
    ident = systems["full2"].codes["identity"]
    assert reduce_range(pad(ident, 3)).radius == 0
    sigma = systems["full2"].codes["shift"]
    assert reduce_range(sigma).radius == 1


# -- inverses and certification ------------------------------------------------

def test_find_inverse_flip(systems):
    full2 = systems["full2"]
    inv = find_inverse(full2.spec, full2.codes["flip"], 0)
    assert inv is not None
    assert equal_on_shift(full2.spec, inv, full2.codes["flip"])


def test_find_inverse_hallway_walk(systems):
    hallway = systems["hallway"]
    inv = find_inverse(hallway.spec, hallway.codes["phi_a"], 1)
    assert inv is not None
    assert inv.radius == 1
    assert equal_on_shift(hallway.spec, inv, hallway.codes["phi_a_inv"])


def test_find_inverse_xor_rule_fails(systems):
    full2 = systems["full2"]
    xor = BlockCode.from_function(
        full2.spec, 1, lambda win: str(int(win[1]) ^ int(win[2])))
    assert find_inverse(full2.spec, xor, 2) is None


def test_certify_hallway_b(systems):
    hallway = systems["hallway"]
    result = certify_automorphism(hallway.spec, hallway.codes["phi_b"], 1)
    assert result.status == "certified"
    assert result.cert.r_certified == 1
    assert equal_on_shift(hallway.spec, result.cert.inverse,
                          hallway.codes["phi_b_inv"])


def test_certify_flip_not_endomorphism_on_golden_mean(systems):
    gm = systems["golden_mean"].spec
    flip = BlockCode.letter_map(gm, {"0": "1", "1": "0"})
    result = certify_automorphism(gm, flip, 2)
    assert result.status == "not-endomorphism"
    word, image = result.witness
    assert not gm.contains(image)
    assert apply_to_word(flip, word) == image


def test_certify_identity(systems):
    for system in systems.values():
        result = certify_automorphism(system.spec, system.codes["identity"], 0)
        assert result.status == "certified"


# -- enumeration ---------------------------------------------------------------

def test_enumerate_full2_range0_matches_oracle(systems):
    full2 = systems["full2"]
    certs = enumerate_automorphisms(full2.spec, 0)
    tables = sorted(tuple(sorted(c.code.rule.items())) for c in certs)
    language = {n: set(full2.spec.words(n)) for n in range(1, 7)}
    oracle = range0_automorphism_oracle(("0", "1"), language)
    assert tables == sorted(tuple(sorted(t.items())) for t in oracle)
    assert len(certs) == 2


def test_enumerate_golden_mean_range0_matches_oracle(systems):
    gm = systems["golden_mean"]
    certs = enumerate_automorphisms(gm.spec, 0)
    language = {n: set(gm.spec.words(n)) for n in range(1, 7)}
    oracle = range0_automorphism_oracle(("0", "1"), language)
    assert len(certs) == len(oracle) == 1
    assert certs[0].code.rule == {("0",): "0", ("1",): "1"}


def test_enumerate_full2_range1(systems):
    full2 = systems["full2"]
    certs = enumerate_automorphisms(full2.spec, 1)
    assert len(certs) == 6
    sigma, flip = full2.codes["shift"], full2.codes["flip"]
    expected = [
        full2.codes["identity"], flip, sigma, full2.codes["shift_inv"],
        compose(flip, sigma), compose(flip, full2.codes["shift_inv"]),
    ]
    for target in expected:
        assert any(equal_on_shift(full2.spec, c.code, target) for c in certs)


def test_enumerate_search_space_cap(systems):
    with pytest.raises(SearchSpaceError):
        enumerate_automorphisms(systems["hallway"].spec, 1, table_cap=1000)


def test_enumeration_closure_under_composition(systems):
    one = systems["at_most_one_1"].spec
    small = enumerate_automorphisms(one, 1)
    large = enumerate_automorphisms(one, 2)
    for a in small:
        for b in small:
            composed = compose(a.code, b.code)
            assert any(equal_on_shift(one, composed, c.code) for c in large)


# -- occurrence preservation ----------------------------------------------------

def test_preserves_identity(systems):
    one = systems["at_most_one_1"]
    assert preserves_occurrences(one.spec, one.codes["identity"], w("1"))


def test_preserves_flip_fails(systems):
    full2 = systems["full2"]
    assert not preserves_occurrences(full2.spec, full2.codes["flip"], w("0"))


def test_preserves_shift_fails(systems):
    one = systems["at_most_one_1"]
    assert not preserves_occurrences(one.spec, one.codes["shift"], w("1"))


def test_preserves_relative_form_precondition(systems):
    one = systems["at_most_one_1"]
    sigma = one.codes["shift"]
    with pytest.raises(ValueError):
        preserves_occurrences(one.spec, sigma, w("1"), anchors=([w("1")], 2))


def test_lemma_replay_hallway(systems, hallway_certs):
    # phi_a and phi_b agree on the extension of the at-nail letter, so
    # inverse-compose preserves its occurrences
    spec = systems["hallway"].spec
    wt = ("0", "0", "1p", "0", "0")
    img_a = apply_to_word(hallway_certs["a"].code, wt)
    img_b = apply_to_word(hallway_certs["b"].code, wt)
    assert img_a == img_b == ("0", "1", "p")
    mixed = compose(hallway_certs["a"].inverse, hallway_certs["b"].code)
    assert preserves_occurrences(spec, mixed, wt)


def test_lemma_replay_all_equal_image_pairs(systems):
    one = systems["at_most_one_1"].spec
    certs = enumerate_automorphisms(one, 1)
    wt = ("0", "0", "1", "0", "0")  # unique 2-step extension of "1"
    for phi in certs:
        phi_pad = pad(phi.code, 1)
        for psi in certs:
            psi_pad = pad(psi.code, 1)
            if apply_to_word(phi_pad, wt) == apply_to_word(psi_pad, wt):
                mixed = compose(pad(phi.inverse, 1), psi_pad)
                assert preserves_occurrences(one, mixed, wt)


# -- coset signatures ------------------------------------------------------------

def test_coset_count_at_most_one_1(systems):
    one = systems["at_most_one_1"].spec
    chain = build_chain(one, 1, 1, cap=10)
    assert coset_count(one, 0, chain) == 1
    assert coset_count(one, 1, chain) == 3


def test_coset_count_degenerate_full2(systems):
    full2 = systems["full2"].spec
    level = ChainLevel(full2, w("0"), w("0"), True)
    chain = Chain(levels=(level,), terminal=None, range_r=0,
                  max_len=1, effective_len=1)
    assert coset_count(full2, 0, chain) == 2


def test_coset_count_invalid_chain(systems):
    empty = Chain(levels=(), terminal=None, range_r=1, max_len=1, effective_len=5)
    with pytest.raises(InvalidChainError):
        coset_count(systems["at_most_one_1"].spec, 0, empty)


def test_coset_count_bounded_by_image_counts(systems):
    one = systems["at_most_one_1"].spec
    chain = build_chain(one, 1, 1, cap=10)
    longest = max(len(a) for a in chain.anchors())
    bound = one.count_words(longest) ** len(chain.anchors())
    assert coset_count(one, 1, chain) <= bound


# -- subgroup closure -------------------------------------------------------------

def test_closure_flip(systems):
    full2 = systems["full2"]
    flip = certify_automorphism(full2.spec, full2.codes["flip"], 0).cert
    result = subgroup_closure(full2.spec, [flip], 10)
    assert result.status == "ok"
    assert len(result.elements) == 2


def test_closure_shift_exceeds_cap(systems):
    full2 = systems["full2"]
    sigma = certify_automorphism(full2.spec, full2.codes["shift"], 1).cert
    result = subgroup_closure(full2.spec, [sigma], 10)
    assert result.status == "cap-exceeded"
    assert result.elements is None


def test_closure_empty_generators(systems):
    hallway = systems["hallway"]
    result = subgroup_closure(hallway.spec, [], 10)
    assert result.status == "ok"
    assert len(result.elements) == 1
    assert result.elements[0].radius == 0


# -- free semigroup certification ---------------------------------------------------

def test_free_semigroup_hallway_depth2(systems, hallway_certs):
    spec = systems["hallway"].spec
    report = certify_free_semigroup(spec, hallway_certs["a"], hallway_certs["b"], 2)
    assert report.status == "free-to-depth"
    assert report.words == (("a",), ("b",), ("a", "a"), ("a", "b"),
                            ("b", "a"), ("b", "b"))
    for i in range(6):
        for j in range(6):
            assert report.distinct[i][j] == (i != j)


def test_free_semigroup_shift_powers_collide(systems):
    full2 = systems["full2"]
    sigma = certify_automorphism(full2.spec, full2.codes["shift"], 1).cert
    sigma2_code = compose(full2.codes["shift"], full2.codes["shift"])
    sigma2 = certify_automorphism(full2.spec, sigma2_code, 2).cert
    report = certify_free_semigroup(full2.spec, sigma, sigma2, 3)
    assert report.status == "collision"
    assert report.collision == (("b",), ("a", "a"))


def test_free_semigroup_identity_collides_at_depth1(systems):
    full2 = systems["full2"]
    ident = certify_automorphism(full2.spec, full2.codes["identity"], 0).cert
    report = certify_free_semigroup(full2.spec, ident, ident, 1)
    assert report.status == "collision"
    assert report.collision == (("a",), ("b",))


# -- commutators -----------------------------------------------------------------

def test_commutator_of_commuting_codes(systems):
    full2 = systems["full2"]
    sigma, flip = full2.codes["shift"], full2.codes["flip"]
    sigma_inv = full2.codes["shift_inv"]
    comm = commutator(sigma, flip, sigma_inv, flip)
    assert equal_on_shift(full2.spec, comm, full2.codes["identity"])


def test_commutator_with_identity(systems):
    hallway = systems["hallway"]
    ident = hallway.codes["identity"]
    comm = commutator(ident, hallway.codes["phi_a"], ident,
                      hallway.codes["phi_a_inv"])
    assert equal_on_shift(hallway.spec, comm, ident)


def test_commutator_hallway_nontrivial(systems, hallway_certs):
    hallway = systems["hallway"]
    comm = commutator(hallway_certs["a"].code, hallway_certs["b"].code,
                      hallway_certs["a"].inverse, hallway_certs["b"].inverse)
    assert not equal_on_shift(hallway.spec, comm, hallway.codes["identity"])
    probe = hallway.probes["at_nail_1"]
    image = apply_to_config(comm, probe)
    assert image != probe
    assert image.get(0) == "bp"


# -- JSON interface ----------------------------------------------------------------

def test_code_json_round_trip(systems):
    hallway = systems["hallway"]
    blob = code_to_json(hallway.codes["phi_a"])
    again = parse_code(hallway.spec, blob)
    assert equal_on_shift(hallway.spec, again, hallway.codes["phi_a"])


def test_parse_code_strictness(systems):
    full2 = systems["full2"]
    good = code_to_json(full2.codes["flip"])
    bad = dict(good)
    bad["extra"] = 1
    with pytest.raises(SpecFormatError):
        parse_code(full2.spec, bad)
    incomplete = dict(good)
    incomplete["rule"] = {"0": "1"}
    with pytest.raises(SpecFormatError):
        parse_code(full2.spec, incomplete)
    wrong_alpha = dict(good)
    wrong_alpha["alphabet"] = ["0", "1", "2"]
    with pytest.raises(SpecFormatError):
        parse_code(full2.spec, wrong_alpha)


def test_product_code_composition_order(systems, hallway_certs):
    # the leftmost generator of a word acts last
    gens = {"a": hallway_certs["a"].code, "b": hallway_certs["b"].code}
    code = product_code(gens, ("a", "b"))
    x2 = systems["hallway"].probes["x2"]
    by_hand = apply_to_config(gens["a"], apply_to_config(gens["b"], x2))
    assert apply_to_config(code, x2) == by_hand
    assert by_hand.get(0) == "ap"
