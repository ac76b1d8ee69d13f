import itertools

import pytest

from freewidth import lab
from freewidth.errors import BallCapExceeded, SuiteUnknown
from freewidth.words import hamming_to_palindrome

from oracles import free_product_ball_size


def brute_palindrome_set(inst, max_len, m):
    """Every letter word of length <= max_len within m mirror mismatches, reduced to its key."""
    out = set()
    alphabet = inst.alphabet()
    for n in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            if hamming_to_palindrome(letters) <= m:
                out.add(inst.key(inst.from_letters(letters)))
    return out


def test_ball_radius_zero(inst):
    for name in ("z4hnn", "z5z2"):
        ball = lab.enumerate_ball(inst[name], 0)
        assert len(ball) == 1 and ball.layers == [1]


def test_ball_z2z2(inst):
    ball = lab.enumerate_ball(inst["z2z2"], 3)
    assert len(ball) == 7 and ball.layers == [1, 2, 2, 2]


@pytest.mark.parametrize("radius", [2, 4, 6])
def test_ball_z5z2_matches_alternating_count(inst, radius):
    assert len(lab.enumerate_ball(inst["z5z2"], radius)) == free_product_ball_size(5, 2, radius)


def test_ball_words_spell_their_elements(inst):
    for name in ("z4hnn", "s3v4"):
        h = inst[name]
        ball = lab.enumerate_ball(h, 4)
        assert sum(ball.layers) == len(ball)
        for key, (length, letters) in ball.elements.items():
            assert len(letters) == length
            assert h.key(h.from_letters(letters)) == key


def test_ball_cap(inst):
    with pytest.raises(BallCapExceeded):
        lab.enumerate_ball(inst["z5z2"], 8, cap=100)


def test_single_letters_are_palindromes(inst):
    h = inst["z4hnn"]
    got = lab.enumerate_m_almost_palindromes(h, 1, 0)
    want = {h.key(h.identity)} | {h.key(h.from_letters([x])) for x in h.alphabet()}
    assert got == want


@pytest.mark.parametrize("name, max_len, m", [("z2z2", 6, 0), ("z2z2", 6, 1), ("z4hnn", 5, 0),
                                              ("z4hnn", 5, 1), ("z5z2", 5, 2)])
def test_palindrome_sets_match_brute_force(inst, name, max_len, m):
    h = inst[name]
    assert lab.enumerate_m_almost_palindromes(h, max_len, m) == brute_palindrome_set(h, max_len, m)


def test_palindrome_sets_are_nested(inst):
    h = inst["z5z2"]
    p0, p1, p2 = (lab.enumerate_m_almost_palindromes(h, 6, m) for m in range(3))
    assert p0 <= p1 <= p2 and p0 != p2


def test_oracle_basics(inst):
    for name in ("z4hnn", "z5z2", "z2z2"):
        h = inst[name]
        oracle = lab.PlengthOracle(h, 0, max_len=6, max_k=3)
        assert oracle(h.identity) == 0
        assert oracle(h.from_letters([h.alphabet()[-1]])) == 1


def test_oracle_is_monotone_in_m(inst):
    h = inst["z5z2"]
    oracles = [lab.PlengthOracle(h, m, max_len=5, max_k=3, product_cap=50_000) for m in range(3)]
    for key in lab.enumerate_ball(h, 5).elements:
        vals = [o(key) for o in oracles]
        known = [v for v in vals if v is not None]
        assert known == sorted(known, reverse=True)


def test_oracle_respects_lower_bound(inst):
    rep = lab.verify_suite(inst["z5z2"], "oracle-consistency", m=0, radius=5, oracle_max_len=6, max_k=3)
    assert rep.ok and rep.samples == len(lab.enumerate_ball(inst["z5z2"], 5))


def test_oracle_unknown_beyond_caps(inst):
    h = inst["z5z2"]
    w = h.witness_word(5)
    # the word is far longer than max_len, and two palindromes of length 2 cannot reach it
    assert lab.plength_oracle(h, w, 0, max_len=2, max_k=2) is None


@pytest.mark.parametrize("suite", [s for s in lab.SUITES if s not in ("syllable-length", "oracle-consistency")])
def test_hnn_suites_run_and_are_deterministic(inst, suite):
    h = inst["z4hnn"]
    a = lab.verify_suite(h, suite, samples=40, seed=3, shuffles=5)
    b = lab.verify_suite(h, suite, samples=40, seed=3, shuffles=5, workers=2)
    assert a.to_json() == b.to_json()
    if suite not in ("defect", "nfold"):
        assert a.ok, a.violations[:2]


@pytest.mark.parametrize("suite", [s for s in lab.SUITES if s not in ("signature-uniqueness", "oracle-consistency")])
def test_amalgam_suites_run_and_are_deterministic(inst, suite):
    h = inst["z5z2"]
    a = lab.verify_suite(h, suite, samples=40, seed=3, shuffles=5)
    b = lab.verify_suite(h, suite, samples=40, seed=3, shuffles=5, workers=2)
    assert a.to_json() == b.to_json()
    assert a.ok, a.violations[:2]


def test_defect_suites_keep_the_one_sided_bound(inst):
    for name in ("z4hnn", "z5z2"):
        for suite in ("defect", "nfold"):
            rep = lab.verify_suite(inst[name], suite, samples=300, seed=11)
            assert rep.max_upper_excess <= 0


def test_suite_errors(inst):
    with pytest.raises(SuiteUnknown):
        lab.verify_suite(inst["z4hnn"], "nope")
    with pytest.raises(SuiteUnknown, match="syllable-length"):
        lab.verify_suite(inst["z5z2"], "signature-uniqueness")
    with pytest.raises(SuiteUnknown, match="signature-uniqueness"):
        lab.verify_suite(inst["z4hnn"], "syllable-length")


def test_workers_env(monkeypatch):
    monkeypatch.setenv("FREEWIDTH_THREADS", "3")
    assert lab.default_workers() == 3
    monkeypatch.setenv("FREEWIDTH_THREADS", "zero")
    with pytest.raises(ValueError):
        lab.default_workers()
    monkeypatch.delenv("FREEWIDTH_THREADS")
    assert lab.default_workers() == 1


def test_growth_examples(inst):
    rep = lab.growth_report(inst["z4hnn"], 0, 64)
    assert rep.rows[-1] == (64, 63, 10) and rep.monotone
    assert rep.first_exceeding[9] <= 64
    rep = lab.growth_report(inst["z5z2"], 0, 63)
    assert rep.rows[-1] == (63, 63, 6) and rep.monotone
    js = rep.to_json()
    assert js["rows"][0] == {"K": 1, "f": 1, "bound": 1}


def test_growth_table_agrees_with_lower_bound(inst):
    for name in ("z4hnn", "z5z2"):
        h = inst[name]
        table = lab.growth_table(h, range(4), 20)
        for m, rep in table.items():
            for K, f, b in rep.rows[::4]:
                w = h.witness_word(K)
                assert h.f(w) == f and h.plength_lower_bound(w, m) == b
