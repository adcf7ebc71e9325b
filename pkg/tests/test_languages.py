import pytest
from hypothesis import given, strategies as st

from bsgrowth.conjugacy import canonical_key
from bsgrowth.group import eval_word, free_reduce, parse_word
from bsgrowth.languages import (
    LanguageFamily,
    abelian_shape,
    abelian_word,
    canonical_rotation,
    check_geodesic_subwords,
    conjugacy_family,
    element_family,
    language_conjugacy_growth,
    least_rotation,
    necklace_counts,
    necklaces,
    plus_member,
    plus_word,
    rewrite_to_representative,
)
from bsgrowth.oracle import bfs_ball, sphere_elements


def member(family, k, text, **kw):
    return LanguageFamily(family, k, **kw).is_member(parse_word(text))


def test_membership_examples():
    assert not member("E_o", 3, "a t a⁻¹ t⁻¹")
    assert member("C_2", 2, "a t a² t⁻¹")
    assert not member("A_plus", 3, "a⁻¹ t a⁻¹ t")
    assert not member("A_plus", 4, "a² t a⁻¹ t")
    assert member("A_plus", 3, "a t a t")


def test_violations_name_the_rule():
    fam = LanguageFamily("E_o", 3)
    assert fam.violations(parse_word("a t a⁻¹ t⁻¹"))
    assert fam.violations(parse_word("a t a t⁻¹")) == []
    assert fam.violations(parse_word("a t⁻¹ a")) == ["not of the form t^-b a^x0 t ... t a^xd t^-c"]
    assert fam.violations(parse_word("t a t")) == ["no form of this family has this (b, d, c) shape"]


def test_count_examples():
    assert sorted(LanguageFamily("C_2", 2).words(5)) == [
        parse_word("a⁻¹ t a⁻² t⁻¹"),
        parse_word("a t a² t⁻¹"),
    ]
    assert LanguageFamily("C_o", 3).count_by_length(4) == 2
    assert LanguageFamily("A_plus", 3).count_by_length(2) == 2
    for fam, k in [("E_o", 3), ("E_e", 4), ("E_2", 2), ("C_o", 5), ("C_e", 6), ("C_2", 2)]:
        assert LanguageFamily(fam, k).count_by_length(0) == 1
    assert LanguageFamily("A_plus", 3).count_by_length(0) == 0
    assert LanguageFamily("A_minus", 4).count_by_length(0) == 0


def test_bad_family_arguments():
    with pytest.raises(ValueError):
        LanguageFamily("X", 3)
    with pytest.raises(ValueError):
        LanguageFamily("E_e", 3)
    with pytest.raises(ValueError):
        LanguageFamily("C_o", 3, strict=True)
    with pytest.raises(ValueError):
        LanguageFamily("C_o", 3).words(-1)


# element representatives against the m = 0 part of each Cayley sphere
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_element_family_equals_abelian_spheres(k):
    N = 8
    fam = LanguageFamily(element_family(k), k)
    for n, sphere in enumerate(sphere_elements(k, N)):
        expected = {(p, e) for p, e, m in sphere if m == 0}
        got = [eval_word(w, k) for w in fam.words(n)]
        assert len(got) == len(expected), n
        assert {(g.x.num, g.x.exp) for g in got} == expected, n


# frozen counts: corrected reading and the rules as literally stated
ELEMENT_COUNTS = {
    2: ([1, 2, 2, 4, 4, 8, 10, 14, 24], [1, 2, 2, 4, 4, 8, 10, 18, 24]),
    3: ([1, 2, 2, 4, 8, 12, 20, 36, 56], [1, 2, 2, 4, 6, 12, 20, 32, 56]),
    4: ([1, 2, 2, 6, 10, 18, 34, 58, 108], [1, 2, 2, 6, 10, 22, 38, 64, 122]),
    5: ([1, 2, 2, 6, 12, 20, 40, 76, 136], [1, 2, 2, 6, 12, 18, 40, 76, 132]),
    6: ([1, 2, 2, 6, 14, 22, 46, 90, 170], [1, 2, 2, 6, 14, 22, 50, 94, 176]),
}


@pytest.mark.parametrize("k", sorted(ELEMENT_COUNTS))
def test_literal_element_rules_diverge(k):
    corrected, literal = ELEMENT_COUNTS[k]
    fam = element_family(k)
    assert LanguageFamily(fam, k).counts(8) == corrected
    assert LanguageFamily(fam, k, literal=True).counts(8) == literal
    assert corrected != literal


CLASS_COUNTS = {
    2: ([1, 2, 0, 2, 0, 2, 2, 2, 4], [1, 2, 0, 2, 0, 2, 2, 4, 4]),
    3: ([1, 2, 2, 0, 2, 4, 4, 8, 12], [1, 2, 2, 0, 2, 4, 4, 8, 12]),
    4: ([1, 2, 2, 2, 2, 6, 10, 12, 26], [1, 2, 2, 2, 2, 8, 12, 12, 26]),
    5: ([1, 2, 2, 2, 4, 6, 12, 20, 32], [1, 2, 2, 2, 4, 6, 12, 20, 32]),
    6: ([1, 2, 2, 2, 6, 6, 14, 26, 42], [1, 2, 2, 2, 6, 6, 16, 28, 40]),
}


@pytest.mark.parametrize("k", sorted(CLASS_COUNTS))
def test_class_family_counts(k):
    corrected, literal = CLASS_COUNTS[k]
    fam = conjugacy_family(k)
    assert LanguageFamily(fam, k).counts(8) == corrected
    assert LanguageFamily(fam, k, literal=True).counts(8) == literal
    assert bfs_ball(k, 8).split_growth()[0] == corrected


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_class_family_words_are_distinct_minimal_classes(k):
    N = 8
    table = bfs_ball(k, N)
    fam = LanguageFamily(conjugacy_family(k), k)
    seen = set()
    for n in range(N + 1):
        for w in fam.words(n):
            key = canonical_key(eval_word(w, k))
            assert key not in seen
            assert table.class_first_seen[key] == n
            seen.add(key)


NECKLACES = {
    2: [0, 1, 1, 2, 3, 3, 5, 7, 10, 14, 22],
    3: [0, 1, 2, 3, 5, 7, 13, 19, 35, 59, 107],
    4: [0, 1, 3, 3, 8, 10, 22, 35, 71, 131, 261],
    5: [0, 1, 3, 4, 8, 13, 26, 45, 93, 180, 371],
}


@pytest.mark.parametrize("k", sorted(NECKLACES))
def test_necklaces_are_nonabelian_classes(k):
    assert necklace_counts(k, 10) == NECKLACES[k]
    table = bfs_ball(k, 10)
    _, other = table.split_growth()
    assert [2 * c for c in NECKLACES[k]] == other
    for n in range(1, 8):
        keys = {canonical_key(eval_word(plus_word(xs), k)) for xs in necklaces(k, n)}
        assert len(keys) == len(necklaces(k, n))
        assert all(table.class_first_seen[key] == n for key in keys)


@pytest.mark.parametrize("k", [3, 4])
def test_minus_family_is_inverse_of_plus(k):
    plus, minus = LanguageFamily("A_plus", k), LanguageFamily("A_minus", k)
    for n in range(1, 7):
        assert len(minus.words(n)) == len(plus.words(n))
        for w in minus.words(n):
            assert minus.is_member(w)
            assert eval_word(w, k).m < 0


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_language_growth_matches_oracle(k):
    assert language_conjugacy_growth(k, 9) == bfs_ball(k, 9).conjugacy_growth()


def test_shape_round_trip():
    for b, xs, c in [(0, (1, 0, 2), 2), (1, (1, -1, 0, 3), 2), (2, (1, 0, 2), 0), (0, (4,), 0)]:
        assert abelian_shape(abelian_word(b, xs, c)) == (b, xs, c)
    assert abelian_shape(parse_word("a t⁻¹ a")) is None
    assert abelian_shape(parse_word("a a⁻¹")) is None


@given(st.lists(st.integers(0, 3), max_size=12))
def test_least_rotation_is_minimal(seq):
    best = canonical_rotation(seq)
    rotations = [tuple(seq[i:] + seq[:i]) for i in range(len(seq))] or [()]
    assert best == min(rotations)
    if seq:
        i = least_rotation(seq)
        assert tuple(seq[i:] + seq[:i]) == best


def test_rewrite_examples():
    assert rewrite_to_representative(parse_word("a³ t"), 4) == parse_word("t")
    assert rewrite_to_representative(parse_word("a t a t"), 3) == parse_word("a t a t")
    out = rewrite_to_representative(parse_word("a⁻¹ t a⁻¹ t"), 3)
    assert len(out) == 4
    assert canonical_key(eval_word(out, 3)) == canonical_key(eval_word(parse_word("a⁻¹ t a⁻¹ t"), 3))


def test_rewrite_rejects_abelian():
    with pytest.raises(ValueError):
        rewrite_to_representative(parse_word("t a T"), 3)


@given(st.integers(2, 6), st.lists(st.sampled_from("aAtT"), min_size=1, max_size=14))
def test_rewrite_reaches_minimal_representative(k, letters):
    w = free_reduce(letters)
    g = eval_word(w, k)
    if g.m == 0:
        return
    out = rewrite_to_representative(w, k)
    assert canonical_key(eval_word(out, k)) == canonical_key(g)
    xs_word = out if g.m > 0 else tuple({"a": "A", "A": "a", "t": "T", "T": "t"}[c] for c in reversed(out))
    fam = LanguageFamily("A_plus", k)
    assert fam.is_member(xs_word)
    assert len(out) <= len(w)


def test_rewrite_length_is_class_length():
    k, N = 3, 7
    table = bfs_ball(k, N)
    for n in range(1, N + 1):
        for sphere_word in LanguageFamily("A_plus", k).words(n):
            g = eval_word(sphere_word + ("a",), k)
            out = rewrite_to_representative(sphere_word + ("a",), k)
            key = canonical_key(g)
            if key in table.class_first_seen:
                assert len(out) == table.class_first_seen[key]


def test_geodesic_subword_examples():
    assert not check_geodesic_subwords(parse_word("t⁻¹ a t a t⁻¹ a t"))
    assert check_geodesic_subwords(parse_word("a t a t"))
    assert not check_geodesic_subwords(parse_word("t⁻¹ a t a t⁻¹"))
    assert not check_geodesic_subwords(parse_word("a A"))


@pytest.mark.parametrize("k", [2, 3])
def test_geodesic_subwords_necessary(k):
    # every geodesic passes: compare against BFS distances on all short reduced words
    from itertools import product

    N = 7
    dist = {}
    for n, sphere in enumerate(sphere_elements(k, N)):
        for g in sphere:
            dist[g] = n
    for n in range(N + 1):
        for w in product("aAtT", repeat=n):
            if free_reduce(w) != w:
                continue
            g = eval_word(w, k)
            if dist[g.as_tuple()] == n:
                assert check_geodesic_subwords(w), w


def test_plus_member_cyclic_rule():
    # even k: the wrap-around pair (x_{m-1}, x_0) is also constrained
    assert plus_member((2, 1), 4) is True
    assert plus_member((2, -1), 4) is False
    assert plus_member((-1, 2), 4) is False
    assert plus_member((2,), 4) is False
    assert plus_member((-1, -2), 4) is False
