"""Constructive free-subgroup certificates by ping-pong on the boundary.

Given independent loxodromics f, g and arbitrary isometries x_1..x_m, the
constructor searches conjugation exponents s_i, t_i, power exponents
p_i, q_i and shrinking basic neighborhoods so that the elements
y_i = b_i x_i a_i (with a_i = (f^s_i g f^-s_i)^p_i, b_i = (f^t_i g f^-t_i)^q_i)
satisfy, for closed regions A_i+, A_i-, B_i+, B_i-:

  (a) a_i maps the complement of A_i- into A_i+ (and the three analogues),
  (b) x_i(A_i+) is disjoint from B_i-,
  (c) the attracting point of f lies outside every region,

with all 4m regions pairwise disjoint.  These conditions are re-checkable
from the certificate alone and force every nonempty reduced word in the
y_i to move the witness point, so the y_i freely generate a subgroup that
does not contain f.  The trap set of y_i is C_i = A_i- u B_i+: positive
powers push the outside into B_i+, negative powers into A_i-.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .backends import GeometryBackend, backend_from_id
from .errors import NotIndependent, NotLoxodromic, ParseError, SearchExhausted


@dataclass(frozen=True)
class ScheduleEntry:
    s: int
    t: int
    p: int
    q: int

    def __post_init__(self):
        if min(self.s, self.t, self.p, self.q) < 1:
            raise ValueError("schedule exponents must be positive")


@dataclass(frozen=True)
class Neighborhoods:
    a_plus: object
    a_minus: object
    b_plus: object
    b_minus: object

    def as_dict(self):
        return {"A+": self.a_plus, "A-": self.a_minus, "B+": self.b_plus, "B-": self.b_minus}


class PingPongInput:
    """Validated input: x_1..x_m arbitrary, f and g independent loxodromics."""

    def __init__(self, backend: GeometryBackend, x, f, g):
        self.backend = backend
        self.x = tuple(x)
        self.f = f
        self.g = g
        if not backend.is_loxodromic(f):
            raise NotLoxodromic("f is not loxodromic")
        if not backend.is_loxodromic(g):
            raise NotLoxodromic("g is not loxodromic")
        f_pair = backend.fixed_pair(f)
        g_pair = backend.fixed_pair(g)
        if any(p == q for p in f_pair for q in g_pair):
            raise NotIndependent("f and g share a boundary fixed point")
        self.f_plus, self.f_minus = f_pair


@dataclass
class PingPongCertificate:
    backend: GeometryBackend
    x: tuple
    f: object
    g: object
    schedule: tuple[ScheduleEntry, ...]
    neighborhoods: tuple[Neighborhoods, ...]
    witness: object  # the attracting fixed point of f

    def conjugated_pair(self, i: int):
        """(a_i, b_i) recomputed from f, g and the schedule."""
        be = self.backend
        entry = self.schedule[i]
        k = be.conjugate(be.power(self.f, entry.s), self.g)
        l = be.conjugate(be.power(self.f, entry.t), self.g)
        return be.power(k, entry.p), be.power(l, entry.q)

    def generator(self, i: int):
        """y_i = b_i x_i a_i."""
        a, b = self.conjugated_pair(i)
        return self.backend.multiply(self.backend.multiply(b, self.x[i]), a)

    def generators(self):
        return [self.generator(i) for i in range(len(self.x))]

    def trap_region(self, i: int):
        """C_i = A_i- u B_i+, the region capturing all nonzero powers of y_i."""
        n = self.neighborhoods[i]
        return self.backend.region_union([n.a_minus, n.b_plus])


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        if self.passed:
            out.append("VERDICT PASS: the y_i freely generate F and f lies outside F")
        else:
            out.append("VERDICT FAIL")
        return out


def construct(
    inp: PingPongInput, max_exponent: int = 64, max_depth: int = 12
) -> PingPongCertificate:
    """Run the inductive search; every returned certificate passes `verify`.

    Raises SearchExhausted when a search leaves the caller-supplied limits;
    the underlying attraction is uniform away from the repelling point, so
    sufficient limits always exist, but no effective bound is assumed.
    """
    be = inp.backend
    limits = (max_exponent, max_depth)
    f_plus = inp.f_plus
    chosen: list = []
    schedule: list[ScheduleEntry] = []
    neighborhoods: list[Neighborhoods] = []

    for i, x in enumerate(inp.x):
        avoid = be.region_union(chosen) if chosen else be.region_empty()
        free_zone = be.region_complement(avoid)
        if not be.region_contains(free_zone, f_plus):
            raise SearchExhausted(f"witness point escaped the free zone at index {i + 1}", limits)

        k = k_plus = k_minus = None
        s_i = None
        for s in range(1, max_exponent + 1):
            cand = be.conjugate(be.power(inp.f, s), inp.g)
            plus, minus = be.fixed_pair(cand)
            if plus == f_plus or minus == f_plus:
                continue
            if be.region_contains(free_zone, plus) and be.region_contains(free_zone, minus):
                k, k_plus, k_minus, s_i = cand, plus, minus, s
                break
        if k is None:
            raise SearchExhausted(f"no conjugation exponent s for index {i + 1}", limits)

        x_k_plus = be.boundary_apply(x, k_plus)
        l = l_plus = l_minus = None
        t_i = None
        for t in range(1, max_exponent + 1):
            cand = be.conjugate(be.power(inp.f, t), inp.g)
            plus, minus = be.fixed_pair(cand)
            excluded = (f_plus, k_plus, k_minus, x_k_plus)
            if plus in excluded or minus in excluded:
                continue
            if be.region_contains(free_zone, plus) and be.region_contains(free_zone, minus):
                l, l_plus, l_minus, t_i = cand, plus, minus, t
                break
        if l is None:
            raise SearchExhausted(f"no conjugation exponent t for index {i + 1}", limits)

        regions = None
        for level in range(1, max_depth + 1):
            a_plus = be.basic_region(k_plus, level)
            a_minus = be.basic_region(k_minus, level)
            b_plus = be.basic_region(l_plus, level)
            b_minus = be.basic_region(l_minus, level)
            four = [a_plus, a_minus, b_plus, b_minus]
            if not _pairwise_disjoint(be, four):
                continue
            if not all(be.region_subset(r, free_zone) for r in four):
                continue
            if any(be.region_contains(r, f_plus) for r in four):
                continue
            if not be.region_disjoint(be.region_image(x, a_plus), b_minus):
                continue
            regions = Neighborhoods(a_plus, a_minus, b_plus, b_minus)
            break
        if regions is None:
            raise SearchExhausted(f"no disjoint neighborhood level for index {i + 1}", limits)

        p_i = _attraction_exponent(be, k, regions.a_minus, regions.a_plus, max_exponent)
        if p_i is None:
            raise SearchExhausted(f"no power exponent p for index {i + 1}", limits)
        q_i = _attraction_exponent(be, l, regions.b_minus, regions.b_plus, max_exponent)
        if q_i is None:
            raise SearchExhausted(f"no power exponent q for index {i + 1}", limits)

        schedule.append(ScheduleEntry(s_i, t_i, p_i, q_i))
        neighborhoods.append(regions)
        chosen.extend([regions.a_plus, regions.a_minus, regions.b_plus, regions.b_minus])

    cert = PingPongCertificate(
        backend=be,
        x=inp.x,
        f=inp.f,
        g=inp.g,
        schedule=tuple(schedule),
        neighborhoods=tuple(neighborhoods),
        witness=f_plus,
    )
    report = verify(cert)
    if not report.passed:
        raise AssertionError("constructor postcondition violated:\n" + "\n".join(report.lines()))
    return cert


def _pairwise_disjoint(be: GeometryBackend, regions) -> bool:
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            if not be.region_disjoint(regions[i], regions[j]):
                return False
    return True


def _attraction_exponent(be, element, repelling_region, attracting_region, max_exponent):
    """Least n with element^n (complement of repelling) inside attracting,
    and the inverse power mapping the complement of attracting inside repelling."""
    outside_rep = be.region_complement(repelling_region)
    outside_att = be.region_complement(attracting_region)
    for n in range(1, max_exponent + 1):
        power = be.power(element, n)
        if not be.region_subset(be.region_image(power, outside_rep), attracting_region):
            continue
        if not be.region_subset(be.region_image(be.inverse(power), outside_att), repelling_region):
            continue
        return n
    return None


def verify(cert: PingPongCertificate) -> VerificationReport:
    """Re-check every certificate condition using only region operations.

    No search is repeated and nothing from the constructor is trusted: the
    derived elements are recomputed from f, g and the schedule, and each
    containment is tested exactly.
    """
    be = cert.backend
    report = VerificationReport()
    m = len(cert.x)

    try:
        f_pair = be.fixed_pair(cert.f)
        report.checks.append(CheckResult("input-f-loxodromic", True))
    except NotLoxodromic:
        report.checks.append(CheckResult("input-f-loxodromic", False, "f is not loxodromic"))
        return report
    try:
        g_pair = be.fixed_pair(cert.g)
        report.checks.append(CheckResult("input-g-loxodromic", True))
    except NotLoxodromic:
        report.checks.append(CheckResult("input-g-loxodromic", False, "g is not loxodromic"))
        return report

    independent = all(p != q for p in f_pair for q in g_pair)
    report.checks.append(
        CheckResult("input-independent", independent, "" if independent else "shared fixed point")
    )

    witness_ok = cert.witness == f_pair[0]
    report.checks.append(
        CheckResult(
            "witness-is-f-plus", witness_ok, "" if witness_ok else "stored witness is not f+"
        )
    )
    f_plus = f_pair[0]

    labels = []
    flat = []
    for i, n in enumerate(cert.neighborhoods):
        for tag, region in n.as_dict().items():
            labels.append(f"{tag}[{i + 1}]")
            flat.append(region)
    disjoint_ok = True
    detail = ""
    for a in range(len(flat)):
        for b in range(a + 1, len(flat)):
            if not be.region_disjoint(flat[a], flat[b]):
                disjoint_ok = False
                detail = f"{labels[a]} meets {labels[b]}"
                break
        if not disjoint_ok:
            break
    report.checks.append(CheckResult("regions-pairwise-disjoint", disjoint_ok, detail))

    for i in range(m):
        n = cert.neighborhoods[i]
        a_i, b_i = cert.conjugated_pair(i)
        containments = [
            ("a maps outside(A-) into A+", a_i, n.a_minus, n.a_plus),
            ("a^-1 maps outside(A+) into A-", be.inverse(a_i), n.a_plus, n.a_minus),
            ("b maps outside(B-) into B+", b_i, n.b_minus, n.b_plus),
            ("b^-1 maps outside(B+) into B-", be.inverse(b_i), n.b_plus, n.b_minus),
        ]
        ok = True
        detail = ""
        for text, elem, source, target in containments:
            image = be.region_image(elem, be.region_complement(source))
            if not be.region_subset(image, target):
                ok = False
                detail = text
                break
        report.checks.append(CheckResult(f"condition-a[{i + 1}]", ok, detail))

        image = be.region_image(cert.x[i], n.a_plus)
        b_ok = be.region_disjoint(image, n.b_minus)
        report.checks.append(
            CheckResult(
                f"condition-b[{i + 1}]",
                b_ok,
                "" if b_ok else "x_i(A_i+) meets B_i-",
            )
        )

        c_ok = True
        detail = ""
        for tag, region in n.as_dict().items():
            if be.region_contains(region, f_plus):
                c_ok = False
                detail = f"f+ lies in {tag}[{i + 1}]"
                break
        report.checks.append(CheckResult(f"condition-c[{i + 1}]", c_ok, detail))

    return report


@dataclass(frozen=True)
class Relation:
    """A nonempty reduced generator word evaluating to the identity."""

    letters: tuple[tuple[int, int], ...]  # (generator index, +1 or -1)

    def __str__(self):
        return " ".join(f"y{i + 1}" if e > 0 else f"y{i + 1}^-1" for i, e in self.letters)


def freeness_oracle(backend: GeometryBackend, generators, max_length: int) -> Relation | None:
    """Brute-force relation search: evaluate every nonempty reduced word of
    length <= max_length exactly; None means no relation was found."""
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    generators = list(generators)
    letters = []
    for idx, gen in enumerate(generators):
        letters.append(((idx, 1), gen))
        letters.append(((idx, -1), backend.inverse(gen)))
    frontier = [((), backend.identity())]
    for _ in range(max_length):
        nxt = []
        for word, value in frontier:
            for letter, elem in letters:
                if word and word[-1] == (letter[0], -letter[1]):
                    continue  # free reduction
                new_word = word + (letter,)
                new_value = backend.multiply(value, elem)
                if backend.is_identity(new_value):
                    return Relation(new_word)
                nxt.append((new_word, new_value))
        frontier = nxt
    return None


def sample_limit_set(backend: GeometryBackend, generators, radius: int):
    """Fixed points of every loxodromic product of at most `radius` letters
    (generators and inverses); at least 3 points witness non-elementarity."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    letters = []
    for g in generators:
        for cand in (g, backend.inverse(g)):
            if cand not in letters:
                letters.append(cand)
    seen = {backend.identity()}
    frontier = [backend.identity()]
    points = []
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for letter in letters:
                prod = backend.multiply(w, letter)
                if prod in seen:
                    continue
                seen.add(prod)
                nxt.append(prod)
                if backend.is_loxodromic(prod):
                    for pt in backend.fixed_pair(prod):
                        if pt not in points:
                            points.append(pt)
        frontier = nxt
    return sorted(points, key=backend.format_point)


@dataclass
class Demo:
    certificate: PingPongCertificate
    report: VerificationReport
    conclusion: list[str]


def demo_main0(
    backend: GeometryBackend, x, f, g, max_exponent: int = 64, max_depth: int = 12
) -> Demo:
    """Mechanize the bounded-orbit contradiction on a concrete input.

    Machine-checked: the certificate conditions (hence freeness of
    F = <y_1, ..., y_m> and f not in F) and that each a_i, b_i is a word in
    f and g (so <f, g, x_i...> = <f, g, y_i...>).  Cited, not checked: a
    Frattini subgroup consists of non-generating elements, which is what
    turns the generation identity into the contradiction for infinite
    groups acting on the space.
    """
    inp = PingPongInput(backend, x, f, g)
    cert = construct(inp, max_exponent=max_exponent, max_depth=max_depth)
    report = verify(cert)
    m = len(cert.x)
    lines = [
        f"[checked] certificate with m={m} verified: conditions (a), (b), (c) and disjointness",
        "[checked] every nonempty reduced word in the y_i moves the witness f+ into its "
        "first-letter trap region, so F = <y_1..y_m> is free and f lies outside F",
        "[checked] each a_i, b_i is a power of a conjugate of g by a power of f, "
        "so adjoining {f, g} to {x_i} or to {y_i} generates the same subgroup",
        "[cited] non-generating elements can be dropped from any generating set; "
        "applied to f, g this contradicts unbounded orbits of the subgroup they witness",
    ]
    return Demo(cert, report, lines)


# -- certificate text format -------------------------------------------------

_REGION_TAGS = ("A+", "A-", "B+", "B-")


def serialize_certificate(cert: PingPongCertificate) -> str:
    be = cert.backend
    lines = ["pingpong-certificate v1", "INPUT", f"backend {be.name}"]
    lines.append(f"f {be.format_isometry(cert.f)}")
    lines.append(f"g {be.format_isometry(cert.g)}")
    for x in cert.x:
        lines.append(f"x {be.format_isometry(x)}")
    lines.append("SCHEDULE")
    for i, entry in enumerate(cert.schedule):
        lines.append(f"{i + 1} {entry.s} {entry.t} {entry.p} {entry.q}")
    lines.append("REGIONS")
    for i, n in enumerate(cert.neighborhoods):
        for tag, region in zip(_REGION_TAGS, (n.a_plus, n.a_minus, n.b_plus, n.b_minus)):
            lines.append(f"{i + 1} {tag} {be.format_region(region)}")
    lines.append("WITNESS")
    lines.append(be.format_point(cert.witness))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> PingPongCertificate:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "pingpong-certificate v1":
        raise ParseError("missing certificate header 'pingpong-certificate v1'", line=1)

    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for no, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped in ("INPUT", "SCHEDULE", "REGIONS", "WITNESS"):
            if stripped in sections:
                raise ParseError(f"duplicate section {stripped}", line=no)
            current = stripped
            sections[current] = []
            continue
        if current is None:
            raise ParseError("content before first section", line=no)
        sections[current].append((no, stripped))

    for needed in ("INPUT", "SCHEDULE", "REGIONS", "WITNESS"):
        if needed not in sections:
            raise ParseError(f"missing section {needed}")

    backend = None
    f = g = None
    xs = []
    for no, line in sections["INPUT"]:
        head, _, rest = line.partition(" ")
        if head == "backend":
            try:
                backend = backend_from_id(rest)
            except ParseError as exc:
                raise ParseError(str(exc), line=no) from exc
            continue
        if backend is None:
            raise ParseError("backend line must come first in INPUT", line=no)
        try:
            value = backend.parse_isometry(rest)
        except ParseError as exc:
            raise ParseError(str(exc), line=no) from exc
        if head == "f":
            f = value
        elif head == "g":
            g = value
        elif head == "x":
            xs.append(value)
        else:
            raise ParseError(f"unknown INPUT entry {head!r}", line=no)
    if backend is None or f is None or g is None:
        raise ParseError("INPUT must define backend, f and g")

    schedule: dict[int, ScheduleEntry] = {}
    for no, line in sections["SCHEDULE"]:
        parts = line.split()
        if len(parts) != 5:
            raise ParseError("schedule line needs 'index s t p q'", line=no)
        try:
            idx, s, t, p, q = (int(v) for v in parts)
            entry = ScheduleEntry(s, t, p, q)
        except ValueError as exc:
            raise ParseError(str(exc), line=no) from exc
        schedule[idx] = entry

    regions: dict[tuple[int, str], object] = {}
    for no, line in sections["REGIONS"]:
        parts = line.split(None, 2)
        if len(parts) != 3 or parts[1] not in _REGION_TAGS:
            raise ParseError("region line needs 'index tag region'", line=no)
        try:
            idx = int(parts[0])
            regions[(idx, parts[1])] = backend.parse_region(parts[2])
        except (ValueError, ParseError) as exc:
            raise ParseError(str(exc), line=no) from exc

    m = len(xs)
    if sorted(schedule) != list(range(1, m + 1)):
        raise ParseError(f"schedule must cover indices 1..{m}")
    neighborhoods = []
    for i in range(1, m + 1):
        try:
            neighborhoods.append(Neighborhoods(*(regions[(i, tag)] for tag in _REGION_TAGS)))
        except KeyError as exc:
            raise ParseError(f"missing region {exc.args[0]}") from exc

    witness_lines = sections["WITNESS"]
    if len(witness_lines) != 1:
        raise ParseError("WITNESS must hold exactly one point")
    no, line = witness_lines[0]
    try:
        witness = backend.parse_point(line)
    except ParseError as exc:
        raise ParseError(str(exc), line=no) from exc

    return PingPongCertificate(
        backend=backend,
        x=tuple(xs),
        f=f,
        g=g,
        schedule=tuple(schedule[i] for i in range(1, m + 1)),
        neighborhoods=tuple(neighborhoods),
        witness=witness,
    )
