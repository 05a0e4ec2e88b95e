"""Free products of finite cyclic groups in normal form, the ends of the
associated tree, cylinder sets, and exact end dynamics.

Elements are alternating words of syllables g_i^e (factor index i, exponent
e nonzero mod the factor order).  Ends are eventually periodic reduced
infinite words, stored canonically with the shortest preperiod and a
primitive period, so equality is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import EqualEnds, NotLoxodromic, ParseError, PrefixTooShallow


@dataclass(frozen=True, order=True)
class Syllable:
    factor: int  # 0-based factor index
    exp: int  # in 1 .. order-1


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables


@dataclass(frozen=True)
class End:
    """Reduced infinite word preperiod . period . period ..., canonical."""

    preperiod: tuple[Syllable, ...]
    period: tuple[Syllable, ...]

    def sort_key(self):
        return (self.preperiod, self.period)


@dataclass(frozen=True)
class Cylinder:
    """All ends whose reduced expansion starts with the given syllables."""

    prefix: tuple[Syllable, ...]

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("cylinder prefix must be nonempty")

    @property
    def depth(self) -> int:
        return len(self.prefix)


@dataclass(frozen=True)
class RegionEnds:
    """Canonical finite union of pairwise incomparable cylinders."""

    cylinders: tuple[Cylinder, ...]

    @property
    def is_empty(self) -> bool:
        return not self.cylinders


class FreeProduct:
    """Free product of k >= 2 finite cyclic groups of the given orders."""

    def __init__(self, orders):
        orders = tuple(int(m) for m in orders)
        if len(orders) < 2:
            raise ValueError("need at least two factors")
        if any(m < 2 for m in orders):
            raise ValueError("factor orders must be at least 2")
        self.orders = orders

    def __eq__(self, other):
        return isinstance(other, FreeProduct) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return f"FreeProduct{self.orders}"

    # -- words ---------------------------------------------------------

    def syllable(self, factor: int, exp: int) -> Syllable:
        if not 0 <= factor < len(self.orders):
            raise ValueError(f"factor index {factor} out of range")
        exp %= self.orders[factor]
        if exp == 0:
            raise ValueError("zero exponent is not a syllable")
        return Syllable(factor, exp)

    def reduce(self, syllables) -> Word:
        """Normal form of an arbitrary syllable sequence."""
        stack: list[Syllable] = []
        for syl in syllables:
            exp = syl.exp % self.orders[syl.factor]
            if exp == 0:
                continue
            if stack and stack[-1].factor == syl.factor:
                merged = (stack[-1].exp + exp) % self.orders[syl.factor]
                stack.pop()
                if merged:
                    stack.append(Syllable(syl.factor, merged))
            else:
                stack.append(Syllable(syl.factor, exp))
        return Word(tuple(stack))

    def word(self, pairs) -> Word:
        return self.reduce(self.syllable(f, e) for f, e in pairs)

    def multiply(self, w1: Word, w2: Word) -> Word:
        return self.reduce(list(w1.syllables) + list(w2.syllables))

    def inverse(self, w: Word) -> Word:
        return Word(
            tuple(
                Syllable(s.factor, (-s.exp) % self.orders[s.factor])
                for s in reversed(w.syllables)
            )
        )

    def power(self, w: Word, n: int) -> Word:
        if n < 0:
            return self.power(self.inverse(w), -n)
        result = Word()
        base = w
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def cyclic_reduce(self, w: Word) -> tuple[Word, Word]:
        """Split w = conjugator * core * conjugator^-1 with core cyclically reduced."""
        conj: list[Syllable] = []
        cur = list(w.syllables)
        while len(cur) >= 2 and cur[0].factor == cur[-1].factor:
            f = cur[0].factor
            m = self.orders[f]
            merged = (cur[0].exp + cur[-1].exp) % m
            if merged == 0:
                conj.append(cur[0])
                cur = cur[1:-1]
            else:
                conj.append(Syllable(f, (-cur[-1].exp) % m))
                cur = [Syllable(f, merged)] + cur[1:-1]
                break  # first and last factors now differ
        return self.reduce(conj), Word(tuple(cur))

    def classify_word(self, w: Word) -> tuple[str, int]:
        """('loxodromic', translation_length) or ('elliptic', 0).

        Translation length is the syllable count of the cyclically reduced
        core; elliptic covers the identity and factor conjugates.
        """
        _, core = self.cyclic_reduce(w)
        if len(core) >= 2:
            return "loxodromic", len(core)
        return "elliptic", 0

    def is_loxodromic(self, w: Word) -> bool:
        return self.classify_word(w)[0] == "loxodromic"

    # -- ends ----------------------------------------------------------

    def make_end(self, preperiod, period) -> End:
        """Canonical end for a reduced eventually periodic expansion."""
        pre = tuple(preperiod)
        per = tuple(period)
        if not per:
            raise ValueError("period must be nonempty")
        if per[0].factor == per[-1].factor:
            raise ValueError("period does not repeat reducedly")
        seq = pre + per
        for a, b in zip(seq, seq[1:]):
            if a.factor == b.factor:
                raise ValueError("expansion is not reduced")
        # primitive period
        n = len(per)
        for length in range(1, n + 1):
            if n % length == 0 and per[:length] * (n // length) == per:
                per = per[:length]
                break
        # shortest preperiod: absorb matching tail syllables into the rotation
        pre = list(pre)
        per = list(per)
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        return End(tuple(pre), tuple(per))

    def unroll(self, e: End, count: int) -> tuple[Syllable, ...]:
        """First `count` syllables of the reduced expansion of e."""
        out = list(e.preperiod)
        while len(out) < count:
            out.extend(e.period)
        return tuple(out[:count])

    def apply_end(self, w: Word, e: End) -> End:
        """Translate the end: cancellation touches at most len(w) syllables."""
        if not w:
            return e
        need = len(w) + 1
        pre = list(e.preperiod)
        while len(pre) < need:
            pre.extend(e.period)
        new_pre = self.multiply(w, Word(tuple(pre)))
        return self.make_end(new_pre.syllables, e.period)

    def fixed_ends(self, w: Word) -> tuple[End, End]:
        """Attracting and repelling ends of a loxodromic word."""
        conj, core = self.cyclic_reduce(w)
        if len(core) < 2:
            raise NotLoxodromic(f"{self.format_word(w)} is elliptic")
        plus = self.apply_end(conj, self.make_end((), core.syllables))
        minus = self.apply_end(conj, self.make_end((), self.inverse(core).syllables))
        return plus, minus

    def tree_gromov_product(self, x: End, y: End) -> int:
        """Syllable length of the longest common reduced prefix."""
        if x == y:
            raise EqualEnds("ends coincide")
        bound = (
            max(len(x.preperiod), len(y.preperiod))
            + lcm(len(x.period), len(y.period))
            + 1
        )
        a = self.unroll(x, bound)
        b = self.unroll(y, bound)
        for idx, (s, t) in enumerate(zip(a, b)):
            if s != t:
                return idx
        raise AssertionError("distinct canonical ends must diverge within the bound")

    # -- cylinders and regions ------------------------------------------

    def cylinder_contains(self, c: Cylinder, e: End) -> bool:
        return self.unroll(e, c.depth) == c.prefix

    def image_cylinder(self, w: Word, c: Cylinder) -> Cylinder:
        """Translate a cylinder; requires depth > len(w) so the image is one cylinder."""
        if c.depth <= len(w):
            raise PrefixTooShallow(f"cylinder depth {c.depth} needs to exceed {len(w)}")
        return self._image_cylinder_unchecked(w, c)

    def _image_cylinder_unchecked(self, w: Word, c: Cylinder) -> Cylinder:
        """Image when reduction provably leaves part of the prefix intact."""
        prod = self.multiply(w, Word(c.prefix))
        survivors = self._surviving_prefix_syllables(w, c.prefix)
        if survivors < 1:
            raise PrefixTooShallow("prefix fully cancelled; deepen the cylinder")
        return Cylinder(prod.syllables)

    def _surviving_prefix_syllables(self, w: Word, prefix: tuple[Syllable, ...]) -> int:
        """How many trailing prefix syllables the product w*prefix leaves intact
        (a merged-but-nonzero junction syllable counts as surviving)."""
        left = list(w.syllables)
        idx = 0
        n = len(prefix)
        while left and idx < n:
            tail = left[-1]
            head = prefix[idx]
            if tail.factor != head.factor:
                return n - idx
            merged = (tail.exp + head.exp) % self.orders[head.factor]
            if merged == 0:
                left.pop()
                idx += 1
            else:
                return n - idx  # junction syllable merged, not removed
        return n - idx

    def children(self, prefix: tuple[Syllable, ...]) -> list[tuple[Syllable, ...]]:
        """All reduced one-syllable extensions, in deterministic order."""
        last = prefix[-1].factor if prefix else None
        out = []
        for factor, order in enumerate(self.orders):
            if factor == last:
                continue
            for exp in range(1, order):
                out.append(prefix + (Syllable(factor, exp),))
        return out

    def deepen(self, c: Cylinder, depth: int) -> RegionEnds:
        """The same end set as a disjoint union of depth-`depth` cylinders."""
        if depth < c.depth:
            raise ValueError("cannot shrink a cylinder prefix")
        level = [c.prefix]
        for _ in range(depth - c.depth):
            level = [ext for p in level for ext in self.children(p)]
        return RegionEnds(tuple(Cylinder(p) for p in sorted(level)))

    def region(self, cylinders) -> RegionEnds:
        """Canonicalize: absorb nested cylinders, merge complete sibling families."""
        prefixes = {c.prefix for c in cylinders}
        changed = True
        while changed:
            changed = False
            # drop any prefix extending another
            drop = set()
            for p in prefixes:
                for k in range(1, len(p)):
                    if p[:k] in prefixes:
                        drop.add(p)
                        break
            if drop:
                prefixes -= drop
                changed = True
            # merge a full set of children into the parent
            by_parent: dict[tuple[Syllable, ...], set] = {}
            for p in prefixes:
                if len(p) >= 2:
                    by_parent.setdefault(p[:-1], set()).add(p)
            for parent, members in sorted(by_parent.items()):
                if len(members) == len(self.children(parent)):
                    prefixes -= members
                    prefixes.add(parent)
                    changed = True
                    break
        return RegionEnds(tuple(Cylinder(p) for p in sorted(prefixes)))

    def region_empty(self) -> RegionEnds:
        return RegionEnds(())

    def region_full(self) -> RegionEnds:
        return RegionEnds(tuple(Cylinder(p) for p in self.children(())))

    def region_contains(self, region: RegionEnds, e: End) -> bool:
        return any(self.cylinder_contains(c, e) for c in region.cylinders)

    def region_disjoint(self, r1: RegionEnds, r2: RegionEnds) -> bool:
        for a in r1.cylinders:
            for b in r2.cylinders:
                k = min(a.depth, b.depth)
                if a.prefix[:k] == b.prefix[:k]:
                    return False
        return True

    def region_complement(self, region: RegionEnds) -> RegionEnds:
        """Walk the prefix trie and collect the uncovered sibling cylinders."""
        prefixes = {c.prefix for c in region.cylinders}
        out: list[tuple[Syllable, ...]] = []

        def walk(node: tuple[Syllable, ...]):
            for child in self.children(node):
                if child in prefixes:
                    continue
                if any(p[: len(child)] == child for p in prefixes):
                    walk(child)
                else:
                    out.append(child)

        walk(())
        return self.region(Cylinder(p) for p in out)

    def region_union(self, *regions: RegionEnds) -> RegionEnds:
        return self.region(c for r in regions for c in r.cylinders)

    def region_subset(self, r1: RegionEnds, r2: RegionEnds) -> bool:
        return self.region_disjoint(r1, self.region_complement(r2))

    def region_image(self, w: Word, region: RegionEnds) -> RegionEnds:
        """Translate a region, splitting cylinders only where cancellation bites."""
        out = []
        stack = list(region.cylinders)
        while stack:
            c = stack.pop()
            try:
                out.append(self._image_cylinder_unchecked(w, c))
            except PrefixTooShallow:
                stack.extend(Cylinder(p) for p in self.children(c.prefix))
        return self.region(out)

    # -- witnesses -------------------------------------------------------

    def find_independent_loxodromics(self, generators, search_radius: int):
        """Two loxodromic products of at most `search_radius` generator letters
        (inverses allowed) with disjoint fixed-end pairs, or None."""
        if search_radius < 1:
            raise ValueError("search radius must be at least 1")
        letters = []
        for g in generators:
            for cand in (g, self.inverse(g)):
                if cand not in letters:
                    letters.append(cand)
        seen = {Word()}
        frontier = [Word()]
        loxodromics: list[tuple[Word, End, End]] = []
        for _ in range(search_radius):
            nxt = []
            for w in frontier:
                for letter in letters:
                    prod = self.multiply(w, letter)
                    if prod in seen:
                        continue
                    seen.add(prod)
                    nxt.append(prod)
                    if self.is_loxodromic(prod):
                        plus, minus = self.fixed_ends(prod)
                        for other, op, om in loxodromics:
                            if {plus, minus}.isdisjoint({op, om}):
                                return other, prod
                        loxodromics.append((prod, plus, minus))
            frontier = nxt
        return None

    # -- text formats ----------------------------------------------------

    def format_word(self, w: Word) -> str:
        if not w:
            return "e"
        parts = []
        for s in w.syllables:
            name = f"g{s.factor + 1}"
            parts.append(name if s.exp == 1 else f"{name}^{s.exp}")
        return " ".join(parts)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("e", ""):
            return Word()
        sylls = []
        for token in text.split():
            base, caret, exp_text = token.partition("^")
            if not base.startswith("g"):
                raise ParseError(f"bad syllable {token!r}: expected g<index>[^exp]")
            try:
                factor = int(base[1:]) - 1
                exp = int(exp_text) if caret else 1
            except ValueError as exc:
                raise ParseError(f"bad syllable {token!r}") from exc
            if not 0 <= factor < len(self.orders):
                raise ParseError(f"factor index out of range in {token!r}")
            sylls.append(Syllable(factor, exp))
        return self.reduce(sylls)

    def format_end(self, e: End) -> str:
        return f"{self.format_word(Word(e.preperiod))} | {self.format_word(Word(e.period))}"

    def parse_end(self, text: str) -> End:
        pre_text, sep, per_text = text.partition("|")
        if not sep:
            raise ParseError(f"bad end {text!r}: expected 'preperiod | period'")
        pre = self.parse_word(pre_text)
        per = self.parse_word(per_text)
        return self.make_end(pre.syllables, per.syllables)

    def format_region(self, region: RegionEnds) -> str:
        if region.is_empty:
            return "{}"
        return "; ".join(self.format_word(Word(c.prefix)) for c in region.cylinders)

    def parse_region(self, text: str) -> RegionEnds:
        text = text.strip()
        if text == "{}":
            return RegionEnds(())
        cylinders = []
        for part in text.split(";"):
            w = self.parse_word(part)
            if not w:
                raise ParseError("cylinder prefix must be nonempty")
            cylinders.append(Cylinder(w.syllables))
        return self.region(cylinders)


def format_presentation(p: FreeProduct) -> str:
    return "orders: " + " ".join(str(m) for m in p.orders)


def parse_presentation(text: str) -> FreeProduct:
    text = text.strip()
    if not text.startswith("orders:"):
        raise ParseError(f"bad presentation {text!r}: expected 'orders: m1 m2 ...'")
    try:
        orders = [int(t) for t in text[len("orders:") :].split()]
    except ValueError as exc:
        raise ParseError(f"bad presentation {text!r}") from exc
    try:
        return FreeProduct(orders)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
