"""Numerical invariants of a finite arrangement and the closed rank formulas.

From the enumerated orbit classes this module derives nu, the Euler
characteristic by counting ascending chains of relative orbit classes, the
exterior-power span ranks entering the codimension-2 and -3 formulas, the
cohomology ranks D_p (codimension <= 3), and the K-group ranks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .linalg import wedge_span_rank
from .model import ProjectionData
from .orbits import Arrangement, Engine, InfiniteArrangement, SingularClass


class InternalConsistencyError(Exception):
    """Two independent computations disagree: an orbit-counting bug."""


class UnsupportedCodimension(Exception):
    def __init__(self, report: "InvariantReport"):
        self.report = report
        super().__init__(f"no closed rank formulas for dim V = {report.m} > 3")


def binom(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass
class InvariantReport:
    name: str
    field_kind: str
    field_D: int | None
    m: int
    n: int
    d: int
    nu: Fraction
    finite: bool
    status: str  # finite | infinite | unsupported_codimension
    L: list[int] | None = None          # ascending: L_0 .. L_{m-1}
    tilde_L1: int | None = None
    e: int | None = None
    r: list[int] | None = None          # m = 2: r_1 .. r_{d+1}
    R: list[int] | None = None          # m = 3: R_1 .. R_{d+1}
    D: list[int] | None = None          # D_0 .. D_d
    H: list[int] | None = None          # rank H^0 .. rank H^d
    K: tuple[int, int] | None = None
    diagnostics: dict = dc_field(default_factory=dict)
    arrangement: Arrangement | None = None  # not serialized


def compute_nu(data: ProjectionData, arrangement: Arrangement) -> int:
    """nu = rank Gamma / dim V; checks integrality and the stabilizer rank
    law rank(stab) = nu * dim on every class.  Violations contradict a
    finite arrangement and are internal-consistency errors."""
    n, m = data.n, data.m
    if n % m != 0:
        raise InternalConsistencyError(
            f"finite arrangement but nu = {n}/{m} is not integral")
    nu = n // m
    for level, classes in arrangement.levels.items():
        for cls in classes:
            if cls.stabilizer.rank != nu * level:
                raise InternalConsistencyError(
                    f"stabilizer rank {cls.stabilizer.rank} != nu*dim = "
                    f"{nu * level} for class {cls.id} at level {level}")
    return nu


class _RelativeData:
    """Per-class relative enumerations, chain-count values, and global
    identification of relative classes, computed lazily and memoized."""

    def __init__(self, engine: Engine, arrangement: Arrangement):
        self.engine = engine
        self.arr = arrangement
        self.hclasses = arrangement.levels[engine.m - 1]
        self._rel: dict[int, dict[int, list[SingularClass]]] = {}
        self._g: dict[tuple[int, int], int] = {}

    def _key(self, level: int, cls: SingularClass) -> tuple[int, int]:
        return (level, cls.id)

    def relative(self, level: int, cls: SingularClass):
        key = self._key(level, cls)
        if key not in self._rel:
            self._rel[key] = self.engine.relative_levels(
                cls.direction, cls.point, cls.stabilizer, self.hclasses)
        return self._rel[key]

    def identify(self, level: int, rel_cls: SingularClass) -> SingularClass:
        """Global class of a relative class (match under the full group)."""
        for cls in self.arr.levels[level]:
            if cls.direction == rel_cls.direction and self.engine.same_orbit(
                    (cls.direction, cls.point),
                    (rel_cls.direction, rel_cls.point), self.engine.full):
                return cls
        raise InternalConsistencyError(
            f"relative class at level {level} matches no global class")

    def gval(self, level: int, cls: SingularClass) -> int:
        """Signed chain count sum over ascending chains ending at this class."""
        if level == 0:
            return -1
        key = self._key(level, cls)
        if key in self._g:
            return self._g[key]
        total = 0
        rel = self.relative(level, cls)
        for sub_level in range(level):
            for psi in rel[sub_level]:
                if sub_level == 0:
                    total += -1
                else:
                    total += self.gval(sub_level, self.identify(sub_level, psi))
        self._g[key] = -total
        return -total


def euler_characteristic(engine: Engine, arrangement: Arrangement,
                         rel: _RelativeData | None = None) -> int:
    """Euler characteristic by chain counting over relative orbit classes."""
    rel = rel or _RelativeData(engine, arrangement)
    total = 0
    for level, classes in arrangement.levels.items():
        for cls in classes:
            total += rel.gval(level, cls)
    return total if engine.m % 2 == 0 else -total


def _wedge_quantities(engine: Engine, arrangement: Arrangement,
                      rel: _RelativeData, d: int):
    """r_p (m = 2) or (R_p, tilde_L1) (m = 3), for p = 1 .. d+1."""
    m = engine.m
    if m == 2:
        stabs = [c.stabilizer for c in arrangement.levels[1]]
        return [wedge_span_rank(stabs, p + 1) for p in range(1, d + 2)], None
    # m == 3
    plane_stabs = [c.stabilizer for c in arrangement.levels[2]]
    line_stabs = [c.stabilizer for c in arrangement.levels[1]]
    per_plane_line_stabs = []
    tilde = -len(arrangement.levels[1])
    for alpha in arrangement.levels[2]:
        rel_lines = rel.relative(2, alpha)[1]
        tilde += len(rel_lines)
        uniq = list(dict.fromkeys(c.stabilizer for c in rel_lines))
        per_plane_line_stabs.append(uniq)
    big_r = []
    for p in range(1, d + 2):
        t1 = wedge_span_rank(plane_stabs, p + 2)
        t2 = wedge_span_rank(line_stabs, p + 1)
        t3 = sum(wedge_span_rank(u, p + 1) for u in per_plane_line_stabs)
        big_r.append(t1 - t2 + t3)
    return big_r, tilde


def rank_formulas(m: int, nu: int, d: int, e: int, L: list[int],
                  tilde_L1: int | None, wedges: list[int] | None) -> list[int]:
    """Closed formulas for D_0 .. D_d per codimension block.

    `wedges` is r_1..r_{d+1} for m = 2 and R_1..R_{d+1} for m = 3."""

    def wp(p: int) -> int:
        if wedges is None or p < 1:
            raise InternalConsistencyError("wedge rank index out of range")
        return wedges[p - 1] if p - 1 < len(wedges) else 0

    out = []
    if m == 1:
        out.append((nu - 1) + e)
        for p in range(1, d + 1):
            out.append(binom(nu, p + 1))
    elif m == 2:
        out.append(binom(2 * nu, 2) - 2 * nu + 1 + L[1] * (nu - 1) + e - wp(1))
        for p in range(1, d + 1):
            out.append(binom(2 * nu, p + 2) + L[1] * binom(nu, p + 1)
                       - wp(p + 1) - wp(p))
    elif m == 3:
        assert tilde_L1 is not None
        d0 = sum((-1) ** j * binom(3 * nu, 3 - j) for j in range(4))
        d0 += L[2] * sum((-1) ** j * binom(2 * nu, 2 - j) for j in range(3))
        d0 += tilde_L1 * sum((-1) ** j * binom(nu, 1 - j) for j in range(2))
        d0 += e - wp(1)
        out.append(d0)
        for p in range(1, d + 1):
            out.append(binom(3 * nu, p + 3) + L[2] * binom(2 * nu, p + 2)
                       + tilde_L1 * binom(nu, p + 1) - wp(p) - wp(p + 1))
    else:
        raise ValueError(f"no rank formulas for m = {m}")
    return out


def k_ranks(h_ranks: list[int], d: int) -> tuple[int, int]:
    """Ranks of K_0 and K_1 of the crossed product, by parity bookkeeping:
    rank K_i = sum of rank H^q over q = i - d (mod 2)."""
    k0 = sum(h for q, h in enumerate(h_ranks) if (q - d) % 2 == 0)
    k1 = sum(h for q, h in enumerate(h_ranks) if (q - d) % 2 == 1)
    return k0, k1


def analyze(data: ProjectionData, max_classes: int | None = None) -> InvariantReport:
    """Full pipeline on validated data: enumerate, count, evaluate formulas.

    Returns an InvariantReport with status finite, infinite, or
    unsupported_codimension (m > 3: L-tables, nu and e still computed)."""
    kwargs = {} if max_classes is None else {"max_classes": max_classes}
    engine = Engine(data, **kwargs)
    n, m = data.n, data.m
    d = n - m
    report = InvariantReport(
        name=data.name, field_kind=data.field.kind, field_D=data.field.D,
        m=m, n=n, d=d, nu=Fraction(n, m), finite=False, status="infinite")
    try:
        arrangement = engine.enumerate_arrangement()
    except InfiniteArrangement as exc:
        report.diagnostics = {
            "witness_level": exc.witness_level,
            "witness_pair": list(exc.witness_pair),
            "deficient_subgroup_rank": exc.deficient_subgroup_rank,
            "full_rank": exc.full_rank,
            "message": "L_0 is infinite: H^d(Z^d, C(X,Z)) is infinitely generated",
        }
        return report
    report.finite = True
    report.arrangement = arrangement
    nu = compute_nu(data, arrangement)
    report.nu = Fraction(nu)
    report.L = arrangement.counts()
    rel = _RelativeData(engine, arrangement)
    report.e = euler_characteristic(engine, arrangement, rel)
    if m > 3:
        report.status = "unsupported_codimension"
        return report
    report.status = "finite"
    wedges = None
    if m == 2:
        wedges, _ = _wedge_quantities(engine, arrangement, rel, d)
        report.r = wedges
    elif m == 3:
        wedges, tilde = _wedge_quantities(engine, arrangement, rel, d)
        report.R = wedges
        report.tilde_L1 = tilde
    report.D = rank_formulas(m, nu, d, report.e, report.L, report.tilde_L1, wedges)
    alt_sum = sum((-1) ** p * dp for p, dp in enumerate(report.D))
    if alt_sum != report.e:
        raise InternalConsistencyError(
            f"Euler identity violated: sum (-1)^p D_p = {alt_sum} != e = {report.e}")
    report.H = list(reversed(report.D))
    report.K = k_ranks(report.H, d)
    return report
