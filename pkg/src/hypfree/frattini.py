"""Finite-group engine: subgroup lattices, maximal subgroups, Frattini
subgroups and quotients, nilpotency, non-generating elements, and
invariable generation, all by exact brute force at desk scale.

Groups are Cayley tables over 0-based element indices.  Size caps keep the
enumerations honest: 200 for lattice operations, 64 for the independent
non-generator computation, 24 for the invariable-generation criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BudgetExceeded, GroupTooLarge, ParseError

LATTICE_CAP = 200
NON_GENERATORS_CAP = 64
CRITERION_CAP = 24


class FiniteGroup:
    """A group given by its full multiplication table."""

    def __init__(self, table, labels=None, name="group", validate=True):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.n = len(self.table)
        self.name = name
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        self.labels = tuple(str(l) for l in labels)
        if validate:
            self._validate()
        self.identity = self._find_identity()
        self.inverse = tuple(self._find_inverse(i) for i in range(self.n))

    def _validate(self):
        n = self.n
        if n == 0:
            raise ValueError("empty group")
        if len(self.labels) != n:
            raise ValueError("label count mismatch")
        for row in self.table:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise ValueError("table is not n x n over 0..n-1")
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    for c in range(n):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise ValueError(f"associativity fails at ({a},{b},{c})")

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.n)):
                return e
        raise ValueError("no identity element")

    def _find_inverse(self, a: int) -> int:
        for b in range(self.n):
            if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                return b
        raise ValueError(f"element {a} has no inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.mul(self.mul(g, a), self.inv(g))

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for a in range(self.n):
            o = self.element_order(a)
            hist[o] = hist.get(o, 0) + 1
        return dict(sorted(hist.items()))

    def exponent(self) -> int:
        out = 1
        for a in range(self.n):
            o = self.element_order(a)
            out = out * o // gcd(out, o)
        return out

    def conjugacy_class(self, a: int) -> frozenset[int]:
        return frozenset(self.conj(g, a) for g in range(self.n))

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(self.n)
        )

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.n for a in range(self.n))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.n})"


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    elements: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_normal(self) -> bool:
        G = self.group
        return all(G.conj(g, a) in self.elements for g in range(G.n) for a in self.elements)

    def sorted_elements(self) -> list[int]:
        return sorted(self.elements)

    def __str__(self):
        return "{" + ",".join(str(i) for i in self.sorted_elements()) + "}"


def closure(G: FiniteGroup, seed) -> frozenset[int]:
    out = {G.identity}
    frontier = [G.identity]
    gens = sorted(set(seed))
    for g in gens:
        if g not in out:
            out.add(g)
            frontier.append(g)
    while frontier:
        a = frontier.pop()
        for g in gens:
            for prod in (G.mul(a, g), G.mul(g, a)):
                if prod not in out:
                    out.add(prod)
                    frontier.append(prod)
    return frozenset(out)


def generated_subgroup(G: FiniteGroup, seed) -> Subgroup:
    """Smallest subgroup containing the seed set (finite, so products suffice)."""
    return Subgroup(G, closure(G, seed))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Breadth-first closure over single-element extensions of known subgroups."""
    if G.n > LATTICE_CAP:
        raise GroupTooLarge(f"subgroup lattice capped at order {LATTICE_CAP}")
    trivial = frozenset({G.identity})
    known = {trivial}
    frontier = [trivial]
    while frontier:
        base = frontier.pop()
        for x in range(G.n):
            if x in base:
                continue
            ext = closure(G, set(base) | {x})
            if ext not in known:
                known.add(ext)
                frontier.append(ext)
    ordered = sorted(known, key=lambda s: (len(s), sorted(s)))
    return [Subgroup(G, s) for s in ordered]


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Proper subgroups with nothing strictly between them and the group."""
    if G.n < 2:
        raise ValueError("the trivial group has no proper subgroups")
    proper = [H.elements for H in all_subgroups(G) if len(H.elements) < G.n]
    out = []
    for h in proper:
        if not any(h < other for other in proper):
            out.append(Subgroup(G, h))
    return out


def frattini(G: FiniteGroup) -> Subgroup:
    """Intersection of all maximal subgroups; the whole group when none exist."""
    if G.n == 1:
        return Subgroup(G, frozenset({G.identity}))
    maxes = maximal_subgroups(G)
    cut = frozenset(range(G.n))
    for H in maxes:
        cut &= H.elements
    return Subgroup(G, cut)


def non_generators(G: FiniteGroup) -> frozenset[int]:
    """Elements droppable from every generating set, computed independently
    of the maximal-subgroup intersection.

    g can be dropped from every generating set iff no proper subgroup H has
    <H u {g}> = G: any witness X with <X> != G may be replaced by its
    closure, so quantifying over proper subgroups is exhaustive.
    """
    if G.n > NON_GENERATORS_CAP:
        raise GroupTooLarge(f"non-generator search capped at order {NON_GENERATORS_CAP}")
    proper = [H.elements for H in all_subgroups(G) if len(H.elements) < G.n]
    out = set()
    for g in range(G.n):
        if all(len(closure(G, set(h) | {g})) < G.n for h in proper):
            out.add(g)
    return frozenset(out)


def is_nilpotent(H: Subgroup | FiniteGroup) -> bool:
    """Lower central series inside the ambient group reaches the identity."""
    if isinstance(H, FiniteGroup):
        G, members = H, frozenset(range(H.n))
    else:
        G, members = H.group, H.elements
    current = members
    while True:
        commutators = {G.commutator(a, b) for a in current for b in members}
        nxt = closure(G, commutators)
        if nxt == current:
            return len(nxt) == 1
        if len(nxt) == 1:
            return True
        current = nxt


@dataclass
class QuotientGroup:
    group: FiniteGroup
    projection: tuple[int, ...]  # parent element index -> coset index
    kernel: Subgroup


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    """Quotient by a normal subgroup; normality is verified, not assumed."""
    if not N.is_normal():
        raise ValueError("subgroup is not normal")
    coset_of: dict[frozenset[int], int] = {}
    projection = [0] * G.n
    reps: list[int] = []
    for a in range(G.n):
        coset = frozenset(G.mul(a, h) for h in N.elements)
        if coset not in coset_of:
            coset_of[coset] = len(reps)
            reps.append(a)
        projection[a] = coset_of[coset]
    k = len(reps)
    table = [[0] * k for _ in range(k)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i][j] = projection[G.mul(a, b)]
    labels = [f"{G.labels[r]}N" for r in reps]
    Q = FiniteGroup(table, labels=labels, name=f"{G.name}/N", validate=G.n <= 64)
    return QuotientGroup(Q, tuple(projection), N)


def frattini_quotient(G: FiniteGroup) -> QuotientGroup:
    return quotient(G, frattini(G))


def all_maximals_normal(G: FiniteGroup) -> bool:
    return all(H.is_normal() for H in maximal_subgroups(G))


def invariably_generates(G: FiniteGroup, elements, budget: int = 10**6) -> bool:
    """True iff every choice of one conjugate per listed element generates G.

    Depth-first over conjugate choices with closure pruning: once the
    partial closure is the whole group, any completion generates.  The
    budget counts closure computations.
    """
    classes = [sorted(G.conjugacy_class(a)) for a in elements]
    spent = 0

    def descend(idx: int, current: frozenset[int]) -> bool:
        nonlocal spent
        if len(current) == G.n:
            return True
        if idx == len(classes):
            return False
        seen_here = set()
        for choice in classes[idx]:
            ext_seed = current | {choice}
            if choice in current:
                ext = current
            else:
                spent += 1
                if spent > budget:
                    raise BudgetExceeded("invariable-generation budget exceeded")
                ext = closure(G, ext_seed)
            if ext in seen_here:
                continue
            seen_here.add(ext)
            if not descend(idx + 1, ext):
                return False
        return True

    return descend(0, frozenset({G.identity}))


def minimal_generating_sets(G: FiniteGroup):
    """Yield the inclusion-minimal generating sets, smallest first.

    Every generating set of size < k found so far contains a minimal one
    already yielded, so skipping supersets keeps exactly the minimal sets.
    """
    from itertools import combinations

    found: list[frozenset[int]] = []
    max_size = max(1, G.n.bit_length())
    elements = list(range(G.n))
    for size in range(1, max_size + 1):
        for combo in combinations(elements, size):
            s = frozenset(combo)
            if any(known <= s for known in found):
                continue
            if len(closure(G, s)) == G.n:
                found.append(s)
                yield s


@dataclass
class CriterionReport:
    maximals_all_normal: bool
    every_generating_set_invariable: bool
    witness: frozenset[int] | None  # a generating set that fails, if any

    @property
    def agree(self) -> bool:
        return self.maximals_all_normal == self.every_generating_set_invariable


def check_invgen_criterion(G: FiniteGroup, budget: int = 10**6) -> CriterionReport:
    """Compare 'all maximal subgroups normal' against the universal statement
    'every generating set is an invariable generating set'.

    Invariability is preserved by supersets (the adversary's conjugates of
    the old members already generate), so quantifying over inclusion-minimal
    generating sets decides the universal statement.
    """
    if G.n > CRITERION_CAP:
        raise GroupTooLarge(f"criterion check capped at order {CRITERION_CAP}")
    lhs = all_maximals_normal(G)
    witness = None
    rhs = True
    for gen_set in minimal_generating_sets(G):
        if not invariably_generates(G, sorted(gen_set), budget=budget):
            rhs = False
            witness = gen_set
            break
    return CriterionReport(lhs, rhs, witness)


# -- constructions -----------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, labels=[str(i) for i in range(n)], name=f"z{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name=None) -> FiniteGroup:
    pairs = [(a, b) for a in range(A.n) for b in range(B.n)]
    index = {p: i for i, p in enumerate(pairs)}
    table = [
        [index[(A.mul(a1, a2), B.mul(b1, b2))] for (a2, b2) in pairs] for (a1, b1) in pairs
    ]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    return FiniteGroup(table, labels=labels, name=name or f"{A.name}x{B.name}")


def from_permutations(perms: list[tuple[int, ...]], name="permgroup") -> FiniteGroup:
    """Group generated by permutations given as images tuples on 0..d-1."""
    degree = len(perms[0])
    if any(len(p) != degree for p in perms):
        raise ValueError("permutations must share a degree")
    identity = tuple(range(degree))

    def compose(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(degree))

    elements = {identity}
    frontier = [identity]
    while frontier:
        cur = frontier.pop()
        for g in perms:
            for prod in (compose(cur, g), compose(g, cur)):
                if prod not in elements:
                    elements.add(prod)
                    frontier.append(prod)
    ordered = sorted(elements)
    index = {p: i for i, p in enumerate(ordered)}
    table = [[index[compose(p, q)] for q in ordered] for p in ordered]
    labels = [cycle_notation(p) for p in ordered]
    return FiniteGroup(table, labels=labels, name=name)


def cycle_notation(perm: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(v + 1) for v in cycle) + ")")
    return "".join(parts) if parts else "()"


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return cyclic(1)
    transposition = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return from_permutations([transposition, cycle], name=f"s{n}")


def alternating4() -> FiniteGroup:
    return from_permutations([(1, 0, 3, 2), (1, 2, 0, 3)], name="a4")


def dihedral(sides: int) -> FiniteGroup:
    """Symmetries of the regular polygon: order 2*sides."""
    rotation = tuple(list(range(1, sides)) + [0])
    reflection = tuple((sides - i) % sides for i in range(sides))
    return from_permutations([rotation, reflection], name=f"d{sides}")


def quaternion8() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k as (sign, axis) with axis 0 = scalar
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mult = {}
    axes = {"1": (1, ""), "-1": (-1, ""), "i": (1, "i"), "-i": (-1, "i"),
            "j": (1, "j"), "-j": (-1, "j"), "k": (1, "k"), "-k": (-1, "k")}
    pure = {("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
            ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
            ("i", "i"): (-1, ""), ("j", "j"): (-1, ""), ("k", "k"): (-1, "")}
    def mul_names(x, y):
        sx, ax = axes[x]
        sy, ay = axes[y]
        if ax == "":
            sign, axis = sx * sy, ay
        elif ay == "":
            sign, axis = sx * sy, ax
        else:
            s, axis = pure[(ax, ay)]
            sign = sx * sy * s
        return ("" if sign > 0 else "-") + (axis if axis else "1")
    index = {nm: i for i, nm in enumerate(names)}
    table = [[index[mul_names(x, y)] for y in names] for x in names]
    return FiniteGroup(table, labels=names, name="q8")


def heisenberg2() -> FiniteGroup:
    """Unitriangular 3x3 matrices over the field with two elements."""
    triples = [(a, b, c) for a in range(2) for b in range(2) for c in range(2)]
    index = {t: i for i, t in enumerate(triples)}
    table = [
        [
            index[((a1 + a2) % 2, (b1 + b2) % 2, (c1 + c2 + a1 * b2) % 2)]
            for (a2, b2, c2) in triples
        ]
        for (a1, b1, c1) in triples
    ]
    labels = [f"({a},{b},{c})" for a, b, c in triples]
    return FiniteGroup(table, labels=labels, name="heis2")


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def elementary_abelian_factor(n: int) -> FiniteGroup:
    """For n = p1^a1 ... pk^ak, the direct sum of (Z/p_i)^{a_i}: order n,
    non-cyclic with trivial Frattini subgroup whenever some a_i >= 2."""
    if n < 2:
        raise ValueError("need n >= 2")
    group = None
    for p, e in factorize(n):
        for _ in range(e):
            piece = cyclic(p)
            group = piece if group is None else direct_product(group, piece)
    group.name = f"ea{n}"
    return group


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors d1 | d2 | ... of an abelian group, largest last."""
    if not G.is_abelian():
        raise ValueError("abelian groups only")
    if G.n == 1:
        return []
    best = max(range(G.n), key=lambda a: (G.element_order(a), -a))
    m = G.element_order(best)
    if m == G.n:
        return [m]
    cyc = closure(G, {best})
    for H in all_subgroups(G):
        if H.order * m == G.n and len(H.elements & cyc) == 1:
            inner = subgroup_as_group(G, H)
            return abelian_invariants(inner) + [m]
    raise AssertionError("abelian group admits a cyclic complement decomposition")


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    members = H.sorted_elements()
    index = {a: i for i, a in enumerate(members)}
    table = [[index[G.mul(a, b)] for b in members] for a in members]
    labels = [G.labels[a] for a in members]
    return FiniteGroup(table, labels=labels, name=f"{G.name}-sub{len(members)}", validate=False)


def structure_name(G: FiniteGroup) -> str:
    """C<n> when cyclic, invariant-factor product when abelian, order tag otherwise."""
    if G.n == 1:
        return "C1"
    if G.is_cyclic():
        return f"C{G.n}"
    if G.is_abelian():
        return "x".join(f"C{d}" for d in reversed(abelian_invariants(G)))
    return f"nonabelian-order{G.n}"


def catalog() -> dict[str, FiniteGroup]:
    """The fixed desk-scale test catalog."""
    groups: dict[str, FiniteGroup] = {}
    for n in range(1, 13):
        groups[f"z{n}"] = cyclic(n)
    groups["v4"] = direct_product(cyclic(2), cyclic(2), name="v4")
    groups["e8"] = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="e8")
    groups["z4xz2"] = direct_product(cyclic(4), cyclic(2), name="z4xz2")
    groups["s3"] = symmetric(3)
    groups["d4"] = dihedral(4)
    groups["q8"] = quaternion8()
    groups["a4"] = alternating4()
    groups["d6"] = dihedral(6)
    groups["s4"] = symmetric(4)
    groups["heis2"] = heisenberg2()
    groups["v4xz3"] = direct_product(
        direct_product(cyclic(2), cyclic(2)), cyclic(3), name="v4xz3"
    )
    return groups


# -- text formats ------------------------------------------------------------


def parse_cayley(text: str) -> FiniteGroup:
    """First line n, then n rows of n zero-based indices."""
    lines = [l for l in (raw.strip() for raw in text.splitlines()) if l]
    if not lines:
        raise ParseError("empty Cayley table")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"bad order {lines[0]!r}", line=1) from exc
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}")
    table = []
    for no, line in enumerate(lines[1:], start=2):
        try:
            row = [int(v) for v in line.split()]
        except ValueError as exc:
            raise ParseError("table row must hold integers", line=no) from exc
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise ParseError(f"row must hold {n} indices in 0..{n - 1}", line=no)
        table.append(row)
    try:
        return FiniteGroup(table, name="cayley")
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_cayley(G: FiniteGroup) -> str:
    lines = [str(G.n)]
    for row in G.table:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_permutation(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Cycle notation with 1-based points, e.g. '(1 2)(3 4)'."""
    text = text.strip()
    if text in ("()", "e", ""):
        if degree is None:
            raise ParseError("identity permutation needs an explicit degree")
        return tuple(range(degree))
    if not text.startswith("(") or not text.endswith(")"):
        raise ParseError(f"bad cycle notation {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        try:
            points = [int(v) - 1 for v in chunk.replace(",", " ").split()]
        except ValueError as exc:
            raise ParseError(f"bad cycle {chunk!r}") from exc
        if len(points) < 2 or any(p < 0 for p in points) or len(set(points)) != len(points):
            raise ParseError(f"bad cycle {chunk!r}")
        cycles.append(points)
    top = max(p for cyc in cycles for p in cyc) + 1
    degree = max(degree or 0, top)
    perm = list(range(degree))
    for cyc in cycles:
        for at, p in enumerate(cyc):
            perm[p] = cyc[(at + 1) % len(cyc)]
    return tuple(perm)


def parse_permutation_group(text: str) -> FiniteGroup:
    """One generator per line, cycle notation."""
    raw = [l for l in (line.strip() for line in text.splitlines()) if l]
    if not raw:
        raise ParseError("no permutation generators")
    perms = [parse_permutation(line) for line in raw]
    degree = max(len(p) for p in perms)
    perms = [tuple(list(p) + list(range(len(p), degree))) for p in perms]
    return from_permutations(perms, name="perms")
