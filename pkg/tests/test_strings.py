import pytest
from hypothesis import given, settings, strategies as st

from gentlecat import strings as S
from gentlecat.strings import (
    GradedBand, GradedString, Letter, StringError, parse_object_literal,
    format_object, projective_object, resolve_infinite,
)


@pytest.fixture(scope="module")
def probe(pres):
    """The five-letter string ~e ~f c b a*f anchored in degree 3."""
    return parse_object_literal(pres, "~e ~f c b a*f | mu0=3")


@pytest.fixture(scope="module")
def strings4(pres):
    return S.enumerate_strings(pres, 4)


def test_probe_grading(pres, probe):
    assert probe.n == 5
    assert probe.mu_seq() == (3, 2, 1, 0, 1, 2)
    assert [probe.vertex(i) for i in range(6)] == ['3', '1', '2', '0', '3', '4']


def test_parse_format_round_trip(pres, probe):
    assert format_object(probe) == "~e ~f c b a*f | mu0=3"
    assert parse_object_literal(pres, format_object(probe)) == probe
    stalk = projective_object(pres, '2', mu0=-1)
    assert format_object(stalk) == "v:2 | mu0=-1"
    assert parse_object_literal(pres, format_object(stalk)) == stalk


def test_letters_must_connect(pres):
    with pytest.raises(StringError, match="do not connect"):
        parse_object_literal(pres, "a e")


def test_equal_direction_junction_needs_relation(pres):
    # b after a lies in the ideal, so "b a" is a valid word; "a f" would
    # compose to the nonzero path a*f and is not
    parse_object_literal(pres, "b a")
    with pytest.raises(StringError, match=r"condition \(ii\)"):
        parse_object_literal(pres, "a f")


def test_direction_change_needs_distinct_arrows(pres):
    with pytest.raises(StringError, match=r"condition \(iii\)"):
        parse_object_literal(pres, "~a a")
    with pytest.raises(StringError, match=r"condition \(iii\)"):
        parse_object_literal(pres, "a ~a")


def test_letter_path_must_be_nonzero(pres):
    with pytest.raises(StringError, match="ideal"):
        GradedString(pres, (Letter(pres.path(["b", "a"])),))


def test_shift_lowers_mu(pres, probe):
    assert probe.shift(2).mu0 == 1
    assert probe.shift(2).shift(-2) == probe


def test_invert_is_involutive(pres, probe):
    assert probe.invert().invert() == probe
    assert probe.invert().mu0 == probe.mu(probe.n)
    assert probe.canonical() == probe.invert().canonical()


def test_trivial_string_needs_anchor(pres):
    with pytest.raises(StringError, match="anchor"):
        GradedString(pres, ())
    s = projective_object(pres, '4', mu0=2)
    assert s.is_trivial and s.vertex(0) == '4' and s.mu(0) == 2


# -- bands --------------------------------------------------------------------


@pytest.fixture(scope="module")
def band6(pres):
    return parse_object_literal(pres, "band: ~d ~e ~f c b a | mu0=0 lambda=1")


def test_band_end_letters_must_differ(pres):
    # every junction of the cycle a, b, c holds, only the type check fails
    with pytest.raises(StringError, match="one direct and one inverse"):
        GradedBand(pres, (Letter(pres.path(["a"])),
                          Letter(pres.path(["b"])),
                          Letter(pres.path(["c"]))), mu0=0)


def test_band_rejects_proper_power(pres, band6):
    doubled = band6.letters + band6.letters
    with pytest.raises(StringError, match="proper power"):
        GradedBand(pres, doubled, mu0=0)


def test_band_rejects_zero_parameter(pres, band6):
    with pytest.raises(StringError, match="nonzero"):
        GradedBand(pres, band6.letters, mu0=0, lam=0)


def test_band_rotation_preserves_canonical_word(pres, band6):
    base, _ = band6.canonical()
    for k in range(band6.n):
        if band6.letters[k].inverse == band6.letters[k - 1].inverse:
            continue
        rep, _ = band6.rotate(k).canonical()
        assert rep.word_key() == base.word_key()


def test_band_inversion_flips_exponent(pres, band6):
    rep, exp = band6.canonical()
    rep2, exp2 = band6.invert().canonical()
    assert rep.word_key() == rep2.word_key()
    assert exp2 == -exp


def test_band_grading_must_close(pres):
    with pytest.raises(StringError):
        parse_object_literal(pres, "band: b a")


# -- infinite strings ----------------------------------------------------------


def test_two_sided_resolution(pres):
    inf = parse_object_literal(pres, "inf-both: a ~d | mu0=0")
    assert inf.left and inf.right and inf.trimmed == 0
    t, added_left, added_right = inf.truncate(1, 1)
    assert added_left == 3 and added_right == 3
    assert t.mu_seq() == (-3, -2, -1, 0, 1, 0, -1, -2, -3)
    # right tail descends the (d e f) cycle, left tail climbs (a b c)
    assert [str(l) for l in t.letters] == \
        ['~d', '~f', '~e', '~d', 'a', 'b', 'c', 'a']


def test_one_sided_resolution_requires_direct_end(pres):
    s = parse_object_literal(pres, "~a | mu0=0")
    with pytest.raises(StringError, match="not left resolvable"):
        resolve_infinite(pres, s, "left")
    resolve_infinite(pres, s, "right")


def test_non_primitive_core_is_trimmed(pres):
    # forced tail letters peel off until the core is minimal, so c b a and
    # b a both store the same object with core a
    long = parse_object_literal(pres, "c b a | mu0=0")
    short = parse_object_literal(pres, "b a | mu0=0")
    inf_long = resolve_infinite(pres, long, "left")
    inf_short = resolve_infinite(pres, short, "left")
    assert inf_long.trimmed == 2 and inf_short.trimmed == 1
    assert inf_long == inf_short
    assert str(inf_long) == "inf-left: a | mu0=0"


def test_trimming_respects_junctions(pres):
    # d*c ends with the tail arrow c of b a, but is not the forced letter c,
    # so the core must stay untrimmed
    s = parse_object_literal(pres, "d*c b a | mu0=0")
    inf = resolve_infinite(pres, s, "left")
    assert inf.trimmed == 0
    assert inf.core.n == 3


def test_infinite_equality_and_shift(pres):
    inf = parse_object_literal(pres, "inf-left: b a | mu0=0")
    assert inf.shift(3).shift(-3) == inf
    assert inf.invert().invert() == inf
    assert inf.canonical() == inf.invert().canonical()


# -- enumeration ---------------------------------------------------------------


def test_enumerate_strings_counts(pres, strings4):
    one = S.enumerate_strings(pres, 1)
    # 5 stalks plus one class per basis path of length >= 1
    assert len([s for s in one if s.is_trivial]) == 5
    assert len([s for s in one if s.n == 1]) == 8
    assert len(one) == 13
    assert len(strings4) == 71
    assert all(s == S.canonical_up_to_shift(s) for s in strings4)


def test_enumerate_bands_smallest(pres):
    assert S.enumerate_bands(pres, 4) == []
    bands = S.enumerate_bands(pres, 6)
    assert len(bands) == 1
    assert bands[0].n == 6
    assert str(bands[0]) == "band: ~d ~e ~f c b a | mu0=0 lambda=1"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-3, 3))
def test_canonical_is_stable_under_shift(pres, strings4, idx, k):
    s = strings4[idx % len(strings4)]
    assert S.canonical_up_to_shift(s.shift(k)) == s
    assert s.shift(k).invert().canonical() == s.shift(k).canonical()
