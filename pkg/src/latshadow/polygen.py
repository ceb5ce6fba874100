"""Seeded generators for the polytope families used in the experiments.

Randomness comes from xorshift64* (Vigna 2014) seeded through one round of
splitmix64, so the same :class:`GenSpec` yields the same polytope on any
platform and in any language that implements the two generators:

    splitmix64:  z = (s + 0x9E3779B97F4A7C15) mod 2^64
                 z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
                 z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
                 state = z ^ (z >> 31)          (replaced by 1 if zero)
    xorshift64*: x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27  (mod 2^64)
                 output = x * 0x2545F4914F6CDD1D mod 2^64

Bounded integers use rejection sampling on the top bits.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import product

from .exactgeom import DegenerateInputError, Polytope, facet_enumeration, polytope_from_hrep

MASK = (1 << 64) - 1
MAX_RETRIES = 32
FAMILIES = (
    "cube",
    "simplex",
    "cross_polytope",
    "dilated_01_hull",
    "lattice_hull",
    "half_integral_hull",
    "order_polytope",
    "polygon",
)


def splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        bits = max(1, (n - 1).bit_length())
        while True:
            r = self.next_u64() >> (64 - bits)
            if r < n:
                return r

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def signed_permutation(self, n: int):
        from .pivotcore import SignedPermutation

        ranks = list(range(1, n + 1))
        self.shuffle(ranks)
        return SignedPermutation(tuple(r if self.randbelow(2) else -r for r in ranks))


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    k: int = 1
    points: int = 0
    seed: int = 0
    variant: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 1 <= self.n <= 6:
            raise ValueError("n must be in 1..6")
        if not 0 <= self.k <= 4:
            raise ValueError("k must be in 0..4")
        if not 0 <= self.points <= 40:
            raise ValueError("points must be in 0..40")

    def to_string(self) -> str:
        parts = [f"family={self.family}"]
        for f in fields(self)[1:]:
            val = getattr(self, f.name)
            if val != f.default:
                parts.append(f"{f.name}={val}")
        return ",".join(parts)

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        kv = {}
        for part in text.strip().split(","):
            if not part.strip():
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise ValueError(f"malformed field {part!r}")
            kv[key.strip()] = val.strip()
        if "family" not in kv:
            raise ValueError("missing family")
        known = {f.name for f in fields(cls)}
        extra = set(kv) - known
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)}")
        ints = {k: int(v) for k, v in kv.items() if k not in ("family", "variant")}
        return cls(kv["family"], variant=kv.get("variant", ""), **ints)

    @property
    def ident(self) -> str:
        return self.to_string().replace("family=", "").replace(",", "_").replace("=", "")


def poset_random(n: int, seed: int) -> frozenset[tuple[int, int]]:
    """Transitively closed random relation ``{(i, j) : i < j in the poset}`` on ``range(n)``."""
    rng = XorShift64Star(seed)
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.randbelow(2)}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


def order_polytope(n: int, relations: frozenset[tuple[int, int]]) -> Polytope:
    """``{0 <= x <= 1, x_i <= x_j for i < j}`` using only cover relations."""
    covers = {(a, b) for a, b in relations if not any((a, c) in relations and (c, b) in relations for c in range(n))}
    rows = []
    for i in range(n):
        e = [0] * n
        if not any((j, i) in relations for j in range(n)):
            e[i] = -1
            rows.append((tuple(e), 0))
        e = [0] * n
        if not any((i, j) in relations for j in range(n)):
            e[i] = 1
            rows.append((tuple(e), 1))
    for a, b in covers:
        e = [0] * n
        e[a], e[b] = 1, -1
        rows.append((tuple(e), 0))
    return polytope_from_hrep(rows, n)


def _cube(n: int, k: int) -> Polytope:
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append((tuple(e), k))
        rows.append((tuple(-x for x in e), 0))
    return polytope_from_hrep(rows, n)


def _simplex(n: int, k: int) -> Polytope:
    rows = [((1,) * n, k)]
    for i in range(n):
        e = [0] * n
        e[i] = -1
        rows.append((tuple(e), 0))
    return polytope_from_hrep(rows, n)


def _cross(n: int, variant: str) -> Polytope:
    """``conv{+-e_i}``; ``shifted`` moves it to ``conv{1 +- e_i}``, ``half`` to ``conv{(1 +- e_i)/2}``."""
    if variant not in ("", "centered", "shifted", "half"):
        raise ValueError(f"unknown cross_polytope variant {variant!r}")
    scale = 2 if variant == "half" else 1
    shift = 0 if variant in ("", "centered") else 1
    rows = [(tuple(scale * s for s in signs), 1 + shift * sum(signs)) for signs in product((1, -1), repeat=n)]
    return polytope_from_hrep(rows, n)


def _sample_points(spec: GenSpec, rng: XorShift64Star) -> list[tuple]:
    n, k = spec.n, spec.k
    count = spec.points
    if spec.family == "dilated_01_hull":
        return [tuple(k * rng.randbelow(2) for _ in range(n)) for _ in range(count)]
    if spec.family == "lattice_hull":
        return [tuple(rng.randint(0, k) for _ in range(n)) for _ in range(count)]
    half = (Fraction(0), Fraction(1, 2), Fraction(1))
    return [tuple(half[rng.randbelow(3)] for _ in range(n)) for _ in range(count)]


def _polygon(spec: GenSpec, rng: XorShift64Star) -> list[tuple]:
    if spec.variant == "p5":
        return [(0, 0), (2, 0), (0, 2), (2, 1), (1, 2)]
    return [(rng.randint(0, spec.k), rng.randint(0, spec.k)) for _ in range(spec.points)]


def generate(spec: GenSpec) -> Polytope:
    """Build the polytope described by ``spec``; hull families redraw degenerate samples."""
    fam = spec.family
    if fam == "cube":
        return _cube(spec.n, spec.k)
    if fam == "simplex":
        return _simplex(spec.n, spec.k)
    if fam == "cross_polytope":
        return _cross(spec.n, spec.variant)
    if fam == "order_polytope":
        return order_polytope(spec.n, poset_random(spec.n, spec.seed))
    for attempt in range(MAX_RETRIES):
        rng = XorShift64Star(spec.seed + attempt * 0x10000)
        pts = _polygon(spec, rng) if fam == "polygon" else _sample_points(spec, rng)
        try:
            return facet_enumeration(pts)
        except DegenerateInputError:
            continue
    raise DegenerateInputError(f"no full sample after {MAX_RETRIES} draws for {spec.to_string()}")
