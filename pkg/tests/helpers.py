"""Shared generators and fixtures for the test suite."""

import random
from fractions import Fraction

from hypfree.backends import MobiusBackend, TreeBackend
from hypfree.freeprod import FreeProduct, Syllable
from hypfree.mobius import MobiusMap, classify, parse_mobius


def random_matrix(rng: random.Random, lo=-6, hi=6) -> MobiusMap:
    while True:
        vals = [rng.randint(lo, hi) for _ in range(4)]
        try:
            return MobiusMap(*vals)
        except ValueError:
            continue


def random_loxodromic(rng: random.Random) -> MobiusMap:
    while True:
        m = random_matrix(rng)
        if classify(m).kind == "loxodromic":
            return m


def random_word(P: FreeProduct, rng: random.Random, max_len=8):
    length = rng.randint(1, max_len)
    sylls = []
    last = None
    for _ in range(length):
        factor = rng.randrange(len(P.orders))
        while factor == last:
            factor = rng.randrange(len(P.orders))
        exp = rng.randint(1, P.orders[factor] - 1)
        sylls.append(Syllable(factor, exp))
        last = factor
    return P.reduce(sylls)


def random_tree_loxodromic(P: FreeProduct, rng: random.Random):
    while True:
        w = random_word(P, rng)
        if P.is_loxodromic(w):
            return w


def standard_mobius_input():
    """f diagonal, g its conjugate, x a parabolic and an elliptic."""
    be = MobiusBackend()
    f = parse_mobius("2 0 0 1/2")
    h = parse_mobius("1 1 1 2")
    g = h * f * h.inverse()
    xs = [parse_mobius("1 1 0 1"), parse_mobius("0 -1 1 0")]
    return be, f, g, xs


def standard_tree_input():
    P = FreeProduct([2, 3])
    be = TreeBackend(P)
    s = P.parse_word("g1")
    t = P.parse_word("g2")
    f = P.multiply(s, t)
    g = P.multiply(s, P.multiply(t, t))
    return be, f, g, [s, t]


def reduced_generator_words(count: int, max_len: int):
    """All nonempty reduced words over count generators and inverses."""
    letters = [(i, e) for i in range(count) for e in (1, -1)]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for word in frontier:
            for letter in letters:
                if word and word[-1] == (letter[0], -letter[1]):
                    continue
                nxt.append(word + (letter,))
        yield from nxt
        frontier = nxt


def evaluate_word(backend, generators, word):
    value = backend.identity()
    for idx, exp in word:
        elem = generators[idx] if exp > 0 else backend.inverse(generators[idx])
        value = backend.multiply(value, elem)
    return value
