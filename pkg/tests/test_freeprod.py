import random

import pytest

from helpers import random_tree_loxodromic, random_word
from hypfree.backends import MobiusBackend
from hypfree.errors import EqualEnds, NotLoxodromic, ParseError, PrefixTooShallow
from hypfree.freeprod import (
    Cylinder,
    FreeProduct,
    Syllable,
    Word,
    format_presentation,
    parse_presentation,
)
from hypfree.mobius import parse_mobius

Z23 = FreeProduct([2, 3])
S = Z23.parse_word("g1")
T = Z23.parse_word("g2")


def psl2z_image(word: Word):
    """Faithful matrix representation of Z/2 * Z/3 for an independent oracle."""
    s_mat = parse_mobius("0 -1 1 0")
    t_mat = parse_mobius("0 -1 1 -1")
    out = parse_mobius("1 0 0 1")
    for syl in word:
        base = s_mat if syl.factor == 0 else t_mat
        for _ in range(syl.exp):
            out = out * base
    return out


def test_multiply_examples():
    assert Z23.multiply(S, S).is_identity
    st = Z23.multiply(S, T)
    t2s = Z23.word([(1, 2), (0, 1)])
    assert Z23.multiply(st, t2s).is_identity
    assert Z23.multiply(T, T) == Z23.word([(1, 2)])


def test_multiply_against_matrix_oracle():
    rng = random.Random(88)
    for _ in range(60):
        w1 = random_word(Z23, rng)
        w2 = random_word(Z23, rng)
        prod = Z23.multiply(w1, w2)
        assert psl2z_image(prod) == psl2z_image(w1) * psl2z_image(w2)
        assert psl2z_image(Z23.multiply(w1, Z23.inverse(w1))) == parse_mobius("1 0 0 1")


def test_normal_form_soundness():
    rng = random.Random(31)
    for _ in range(80):
        w = random_word(Z23, rng)
        for a, b in zip(w.syllables, w.syllables[1:]):
            assert a.factor != b.factor
        for syl in w:
            assert 1 <= syl.exp < Z23.orders[syl.factor]
        assert Z23.multiply(w, Z23.inverse(w)).is_identity


def test_cyclic_reduce_examples():
    conj, core = Z23.cyclic_reduce(Z23.parse_word("g1 g2 g1"))
    assert conj == S and core == T
    conj, core = Z23.cyclic_reduce(Z23.parse_word("g1 g2"))
    assert conj.is_identity and core == Z23.parse_word("g1 g2")
    conj, core = Z23.cyclic_reduce(Z23.parse_word("g2 g1 g2^2"))
    assert conj == T and core == S


def test_cyclic_reduce_reconstructs():
    rng = random.Random(17)
    for _ in range(100):
        w = random_word(Z23, rng)
        conj, core = Z23.cyclic_reduce(w)
        back = Z23.multiply(Z23.multiply(conj, core), Z23.inverse(conj))
        assert back == w
        if len(core) >= 2:
            assert core.syllables[0].factor != core.syllables[-1].factor


def test_classify_word():
    assert Z23.classify_word(S) == ("elliptic", 0)
    assert Z23.classify_word(Z23.parse_word("g1 g2")) == ("loxodromic", 2)
    assert Z23.classify_word(Z23.parse_word("g1 g2 g1")) == ("elliptic", 0)
    # no positive power of a loxodromic is trivial
    st = Z23.parse_word("g1 g2")
    for n in range(1, 7):
        assert not Z23.power(st, n).is_identity


def test_fixed_ends():
    st = Z23.multiply(S, T)
    plus, minus = Z23.fixed_ends(st)
    assert plus == Z23.make_end((), st.syllables)
    assert minus == Z23.make_end((), Z23.inverse(st).syllables)
    assert Z23.apply_end(st, plus) == plus
    assert Z23.apply_end(st, minus) == minus
    st2 = Z23.parse_word("g1 g2^2")
    plus2, minus2 = Z23.fixed_ends(st2)
    assert plus2 == Z23.make_end((), st2.syllables)
    assert minus2 == Z23.make_end((), Z23.parse_word("g2 g1").syllables)
    with pytest.raises(NotLoxodromic):
        Z23.fixed_ends(S)


def test_fixed_end_covariance():
    rng = random.Random(606)
    for _ in range(50):
        w = random_tree_loxodromic(Z23, rng)
        h = random_word(Z23, rng)
        plus, minus = Z23.fixed_ends(w)
        cplus, cminus = Z23.fixed_ends(Z23.multiply(Z23.multiply(h, w), Z23.inverse(h)))
        assert cplus == Z23.apply_end(h, plus)
        assert cminus == Z23.apply_end(h, minus)


def test_apply_end_examples():
    st_end = Z23.make_end((), Z23.parse_word("g1 g2").syllables)
    assert Z23.apply_end(Word(), st_end) == st_end
    moved = Z23.apply_end(S, st_end)
    assert moved == Z23.make_end((), Z23.parse_word("g2 g1").syllables)


def test_translation_toward_plus():
    rng = random.Random(2024)
    candidates = [
        Z23.make_end((), Z23.parse_word("g1 g2").syllables),
        Z23.make_end((), Z23.parse_word("g2 g1").syllables),
        Z23.make_end((), Z23.parse_word("g1 g2^2").syllables),
    ]
    for _ in range(10):
        w = random_tree_loxodromic(Z23, rng)
        plus, minus = Z23.fixed_ends(w)
        start = next(e for e in candidates if e not in (plus, minus))
        depths = []
        cur = start
        for _ in range(8):
            cur = Z23.apply_end(w, cur)
            depths.append(10**6 if cur == plus else Z23.tree_gromov_product(cur, plus))
        # once past any preperiod transient the agreement depth grows strictly
        tail = depths[3:]
        assert all(b > a or a == 10**6 for a, b in zip(tail, tail[1:])), depths
        assert depths[-1] > depths[0] or depths[-1] == 10**6


def test_gromov_product_examples():
    st = Z23.make_end((), Z23.parse_word("g1 g2").syllables)
    st2 = Z23.make_end((), Z23.parse_word("g1 g2^2").syllables)
    t2s = Z23.make_end((), Z23.parse_word("g2^2 g1").syllables)
    s_t2s = Z23.apply_end(S, t2s)
    assert Z23.tree_gromov_product(st, st2) == 1
    assert Z23.tree_gromov_product(st, s_t2s) == 1
    assert Z23.tree_gromov_product(st, t2s) == 0
    with pytest.raises(EqualEnds):
        Z23.tree_gromov_product(st, st)


def test_image_cylinder():
    sts = Cylinder(Z23.parse_word("g1 g2 g1").syllables)
    img = Z23.image_cylinder(S, sts)
    assert img.prefix == Z23.parse_word("g2 g1").syllables
    st = Cylinder(Z23.parse_word("g1 g2").syllables)
    assert Z23.image_cylinder(Word(), st) == st
    assert Z23.image_cylinder(T, st).prefix == Z23.parse_word("g2 g1 g2").syllables
    with pytest.raises(PrefixTooShallow):
        Z23.image_cylinder(Z23.parse_word("g1 g2"), st)


def _sample_ends_in(cylinder: Cylinder, count: int, seed: int):
    """Distinct ends extending the cylinder prefix."""
    out = []
    rng = random.Random(seed)
    while len(out) < count:
        ext = cylinder.prefix
        for _ in range(rng.randint(1, 3)):
            ext = rng.choice(Z23.children(ext))
        period_head = rng.choice(Z23.children(ext))[-1]
        period_tail = rng.choice(
            [s for s in (Syllable(0, 1), Syllable(1, 1), Syllable(1, 2)) if s.factor != period_head.factor]
        )
        e = Z23.make_end(ext, (period_head, period_tail))
        if Z23.cylinder_contains(cylinder, e) and e not in out:
            out.append(e)
    return out


def test_image_cylinder_membership():
    rng = random.Random(5150)
    cases = 0
    while cases < 20:
        w = random_word(Z23, rng, max_len=4)
        prefix = random_word(Z23, rng, max_len=8)
        if len(prefix) <= len(w):
            continue
        cases += 1
        cyl = Cylinder(prefix.syllables)
        img = Z23.image_cylinder(w, cyl)
        for e in _sample_ends_in(cyl, 3, seed=cases):
            moved = Z23.apply_end(w, e)
            assert Z23.cylinder_contains(img, moved)
            assert Z23.apply_end(Z23.inverse(w), moved) == e
        # and an end of the image cylinder pulls back into the source
        for e in _sample_ends_in(img, 3, seed=1000 + cases):
            assert Z23.cylinder_contains(cyl, Z23.apply_end(Z23.inverse(w), e))


def test_deepen():
    s_cyl = Cylinder((Syllable(0, 1),))
    deep = Z23.deepen(s_cyl, 2)
    got = {Z23.format_word(Word(c.prefix)) for c in deep.cylinders}
    assert got == {"g1 g2", "g1 g2^2"}
    t_cyl = Cylinder((Syllable(1, 1),))
    deep = Z23.deepen(t_cyl, 2)
    assert {Z23.format_word(Word(c.prefix)) for c in deep.cylinders} == {"g2 g1"}
    assert Z23.deepen(s_cyl, 1).cylinders == (s_cyl,)


def test_depth_partition():
    # the depth-3 cylinders partition the end space
    region = Z23.region_full()
    all3 = []
    for c in region.cylinders:
        all3.extend(Z23.deepen(c, 3).cylinders)
    rng = random.Random(9)
    for _ in range(40):
        w = random_tree_loxodromic(Z23, rng)
        e = Z23.fixed_ends(w)[0]
        hits = [c for c in all3 if Z23.cylinder_contains(c, e)]
        assert len(hits) == 1


def test_region_algebra():
    c = Cylinder(Z23.parse_word("g1 g2").syllables)
    region = Z23.region([c])
    comp = Z23.region_complement(region)
    assert Z23.region_disjoint(region, comp)
    assert Z23.region_subset(region, region)
    # complement twice round-trips to the canonical form
    assert Z23.region_complement(comp) == region
    # union of region and complement covers every sampled end
    total = Z23.region_union(region, comp)
    assert total == Z23.region_full()
    # image with heavy cancellation still splits correctly
    w = Z23.parse_word("g2^2 g1")
    img = Z23.region_image(w, region)
    e = Z23.make_end(c.prefix, Z23.parse_word("g1 g2^2").syllables)
    assert Z23.region_contains(region, e)
    assert Z23.region_contains(img, Z23.apply_end(w, e))


def test_find_independent_loxodromics():
    pair = Z23.find_independent_loxodromics([S, T], 2)
    assert pair is not None
    f, g = pair
    fp = set(Z23.fixed_ends(f))
    gp = set(Z23.fixed_ends(g))
    assert fp.isdisjoint(gp)
    dihedral = FreeProduct([2, 2])
    a, b = dihedral.parse_word("g1"), dihedral.parse_word("g2")
    assert dihedral.find_independent_loxodromics([a, b], 4) is None
    st = Z23.multiply(S, T)
    assert Z23.find_independent_loxodromics([st], 4) is None


def test_parse_and_format():
    assert format_presentation(Z23) == "orders: 2 3"
    assert parse_presentation("orders: 2 3") == Z23
    w = Z23.parse_word("g1 g2^2 g1")
    assert Z23.format_word(w) == "g1 g2^2 g1"
    assert Z23.parse_word(Z23.format_word(w)) == w
    assert Z23.parse_word("e").is_identity
    e = Z23.make_end(Z23.parse_word("g1").syllables, Z23.parse_word("g2 g1").syllables)
    assert Z23.parse_end(Z23.format_end(e)) == e
    with pytest.raises(ParseError):
        Z23.parse_word("h1")
    with pytest.raises(ParseError):
        parse_presentation("orders: 2")
    with pytest.raises(ParseError):
        Z23.parse_end("g1 g2")


def test_end_canonical_rolling():
    # s(ts)^inf equals (st)^inf after rolling the period
    rolled = Z23.make_end((Syllable(0, 1),), (Syllable(1, 1), Syllable(0, 1)))
    direct = Z23.make_end((), (Syllable(0, 1), Syllable(1, 1)))
    assert rolled == direct
    # period g2 g1 g2 g1 collapses to the primitive g2 g1
    doubled = Z23.make_end((), Z23.parse_word("g2 g1 g2 g1").syllables)
    assert doubled == Z23.make_end((), Z23.parse_word("g2 g1").syllables)
