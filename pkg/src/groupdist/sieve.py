"""Elimination of parameter quadruples ``(n, h, k, m)`` for 23 <= n <= 50.

A quadruple survives a stage when the stage's certified lower bound on
``dist`` does not exceed the threshold ``delta0(n)``. The later stages
work with the profit ``pi = dist - ((k-h)m + (n-k)q)``, ``q = ceil(n/3)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .errors import InvalidOrder, MissingMu
from .metrics import ceil_div, delta0_n

N_MIN, N_MAX = 23, 50

# orders in the range with the cyclic group as the only group
CYCLIC_ONLY = (23, 29, 31, 33, 35)

# m' lower bounds supported by the cyclic row search: d=3 (and d=4 for
# n=23) never reaches a distance below delta0(n)
DEFAULT_MPRIME = {23: 5, 29: 4, 31: 4, 33: 4, 35: 4}


@dataclass(frozen=True, order=True)
class Quadruple:
    n: int
    h: int
    k: int
    m: int

    def __str__(self):
        return f"({self.n},{self.h},{self.k},{self.m})"


def phi(n: int) -> int:
    out = n
    p, x = 2, n
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            out -= out // p
        p += 1
    if x > 1:
        out -= out // x
    return out


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def is_valid(qd: Quadruple) -> bool:
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    if not (N_MIN <= n <= N_MAX and 1 <= h < n and n % h == 0 and k % h == 0):
        return False
    if not (h <= k and 4 * k <= 3 * n):
        return False
    if m < (2 if n % 2 == 0 else 3):
        return False
    if h < k:
        return 3 * m < n
    return n <= 3 * m <= 3 * n


def enumerate_quadruples() -> list[Quadruple]:
    out = []
    for n in range(N_MIN, N_MAX + 1):
        for h in range(1, n):
            if n % h:
                continue
            for k in range(h, 3 * n // 4 + 1, h):
                for m in range(2, n + 1):
                    qd = Quadruple(n, h, k, m)
                    if is_valid(qd):
                        out.append(qd)
    return out


# -- the inequality chain ----------------------------------------------------


def bound_i4(qd):
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    return (n - k) * ceil_div(n, 3) + (k - h) * m


def bound_i2(qd):
    n, h, m = qd.n, qd.h, qd.m
    return h * ceil_div(n - m, 2) + (n - 2 * h) * m


def bound_i3(qd):
    return qd.n * qd.n // 4 if 2 * qd.h == qd.n else 0


def bound_i5(qd):
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    if n - k >= 2 * h:
        return 0
    return h * (n - m) + (n - k - h) * ceil_div(n, 3) + (k - 2 * h) * m


def bound_i6(qd):
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    return h * (n - m) + (n - k - 2 * h) * ceil_div(n, 3) + (k - h) * m


def bound_i7(qd):
    if qd.m != 2:
        return 0
    return bound_i6(qd) + qd.k - qd.h - 2 * phi(qd.n // 2)


def bound_n32(qd):
    # every group of order 32 has its nearest neighbour among transposition isomorphs
    return delta0_n(32) + 1 if qd.n == 32 else 0


CHAIN = (
    ("I4", bound_i4),
    ("I2", bound_i2),
    ("I3", bound_i3),
    ("I5", bound_i5),
    ("I6", bound_i6),
    ("I7", bound_i7),
    ("N32", bound_n32),
)


@dataclass
class StageResult:
    label: str
    survivors: list
    eliminated: list = field(default_factory=list)

    @property
    def count(self):
        return len(self.survivors)


def apply_inequality_chain(quads) -> list[StageResult]:
    """Stage-by-stage survivors; I4 is applied to the raw enumeration."""
    cur = list(quads)
    out = []
    for label, fn in CHAIN:
        keep = [q for q in cur if fn(q) <= delta0_n(q.n)]
        gone = [q for q in cur if fn(q) > delta0_n(q.n)]
        out.append(StageResult(label, keep, gone))
        cur = keep
    return out


def m2_stage(quads, m2_distance=None):
    """Drop m=2 quadruples whose nearest m=2 group is beyond delta0(n).

    ``m2_distance(n)`` gives the least distance between ``C_n`` and a
    group at row distance 2 from it; the closed form from the two-cell
    search is used by default.
    """
    if m2_distance is None:
        m2_distance = lambda n: n * n // 4 - (0 if n % 4 == 0 else 1)  # noqa: E731
    keep, gone = [], []
    for q in quads:
        if q.m == 2 and m2_distance(q.n) > delta0_n(q.n):
            gone.append(q)
        else:
            keep.append(q)
    return StageResult("M2", keep, gone)


def ig_bound(qd: Quadruple, m_prime: int) -> int:
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    f = phi(n)
    return (h * (n - m) + (n - k - 2 * h) * ceil_div(n, 3)
            + (f - (n - k)) * m_prime + (n - f - h) * m)


def apply_ig(qd: Quadruple, m_prime_lower_bound: int) -> bool:
    """True when the generator-refined bound exceeds delta0(n)."""
    return ig_bound(qd, m_prime_lower_bound) > delta0_n(qd.n)


def ig_stage(quads, m_prime=None):
    m_prime = DEFAULT_MPRIME if m_prime is None else m_prime
    keep, gone = [], []
    for q in quads:
        if q.n in m_prime and apply_ig(q, m_prime[q.n]):
            gone.append(q)
        else:
            keep.append(q)
    return StageResult("IG", keep, gone)


def h_stage(quads):
    """Drop h > 1 quadruples.

    The class-distance search restricted to subgroups of order >= h
    rules these out; that run is far beyond desk scale and is taken as
    established here.
    """
    keep = [q for q in quads if q.h == 1]
    gone = [q for q in quads if q.h != 1]
    return StageResult("H", keep, gone)


# -- Lemma 2p ------------------------------------------------------------------


@dataclass
class TwoPBound:
    p: int
    mismatch: int  # (p-1)p from the mismatched involutions
    refined: int | None  # p = 11: min over the two branches
    threshold: int  # 12p - 20
    holds: bool


def lemma_2p_bound(n: int) -> TwoPBound:
    if n % 2 or not _is_prime(n // 2) or n // 2 < 11:
        raise InvalidOrder("need n = 2p with p prime, p >= 11")
    p = n // 2
    base = (p - 1) * p
    thr = 12 * p - 20
    refined = None
    if p == 11:
        refined = min(base + 2 * (p - 1), 2 * p * p)
        holds = refined > thr
    else:
        holds = base > thr
    return TwoPBound(p, base, refined, thr, holds)


# -- profit pipeline ------------------------------------------------------------


def default_mu(ell: int, v: int) -> int | None:
    """Rainbow thresholds known in closed form or from the tabulated run."""
    if v < 2:
        return None
    if ell == 1:
        return 1
    if ell == 2:
        if v <= 3:
            return {2: 2, 3: 4}[v]
        if 4 <= v <= 6:
            return 7
        if v >= 7:
            return v
        return None
    return {6: 13, 7: 15, 8: 15, 9: 16, 10: 18}.get(v) if ell == 3 else None


@dataclass
class BoundState:
    quad: Quadruple
    q: int
    delta0n: int
    baseCount: int
    neededProfit: int
    rMax: int
    sMax: int
    tMax: int
    uMin: int
    eliminatedBy: str = "NONE"
    matchingEll: int = 0
    notes: list = field(default_factory=list)

    def to_json(self):
        d = asdict(self)
        d["quad"] = [self.quad.n, self.quad.h, self.quad.k, self.quad.m]
        return d

    def line(self):
        return f"{self.quad}: r<={self.rMax}, s<={self.sMax}, t<={self.tMax}, u>={self.uMin}"


def _least_ell(f, need, limit):
    """Least ``1 <= l <= limit`` with ``f(l) >= need``, else None."""
    for ell in range(1, limit + 1):
        if f(ell) >= need:
            return ell
    return None


def bound_pipeline(qd: Quadruple, mu=None) -> BoundState:
    """Bounds on ``r, s, t, u`` and the resulting elimination, if any.

    ``mu`` maps ``(ell, v)`` to the rainbow threshold; a callable is
    also accepted.
    """
    n, h, k, m = qd.n, qd.h, qd.k, qd.m
    q = ceil_div(n, 3)
    d0 = delta0_n(n)
    base = (k - h) * m + (n - k) * q
    need = d0 - base + 1
    notes = []
    step = n - 2 * q - m + 1  # profit from one diagonal difference
    big = 2 * (n - q - 2 * m)  # profit from a 2-matching of S or T

    # r: Lemma R with distinct squares (any l for odd n, l <= 2 otherwise)
    r_max = k - h
    ell = _least_ell(lambda l: l * step, need, (k - h + 1) if n % 2 else 2)
    if ell is not None and ell - 1 < r_max:
        r_max = ell - 1
        notes.append(f"R l={ell}")
    if r_max > 3 and min(big, 3 * step) >= need:
        r_max = 3
        notes.append("LARGE_R")
    if n % 2 == 0 and _is_prime(n // 2):
        ell = _least_ell(lambda l: l * step, need, k - h + 1)
        if ell is not None and 2 * ell - 2 < r_max:
            r_max = 2 * ell - 2
            notes.append(f"2P_R l={ell}")

    # s and t: one row holding l differences, then the 7-element cap
    def row_cap(default):
        cap = default
        ell = _least_ell(lambda l: l * step + q - m - 1, need, k)
        if ell is not None and (ell - 1) * (k - h) < cap:
            cap = (ell - 1) * (k - h)
        if cap > 6 and big >= need:
            cap = 6
        return cap

    s_max = row_cap((k - 1) * (k - h))
    t_max = row_cap((n - k) * (k - h))
    u_min = max(0, 3 * (k - h) - r_max - s_max - t_max)
    st = BoundState(qd, q, d0, base, need, r_max, s_max, t_max, u_min, notes=notes)

    if u_min > (n - k) * (n - k - 1):
        st.eliminatedBy = "U_CAPACITY"
        return st
    edges = ceil_div(u_min, 2)
    if mu is None:
        lookup = default_mu
    elif callable(mu):
        lookup = mu
    else:
        lookup = lambda l, v: mu.get((l, v))  # noqa: E731
    best_ell = 0
    for ell in (1, 2, 3):
        val = lookup(ell, n - k)
        if val is None:
            if edges > 0 and ell * (n - 2 * q - m) >= need:
                raise MissingMu(f"mu({ell},{n - k}) is not available")
            break
        if edges >= val:
            best_ell = ell
        else:
            break
    st.matchingEll = best_ell
    if best_ell and best_ell * (n - 2 * q - m) >= need:
        st.eliminatedBy = "MATCHING"
    return st


# -- bounds used in the stubborn cases ------------------------------------------


@dataclass
class Section10Bounds:
    u_minus_R: int
    u_minus_ST: int
    u_minus_pair: int
    u_minus_pair_S3: int
    s3_profit: int
    t3_profit: int
    u_capacity: int


def section10_bounds(qd: Quadruple, u: int) -> Section10Bounds:
    """Lower bounds on ``U`` minus cells clashing with one or two other cells."""
    n, k, m = qd.n, qd.k, qd.m
    q = ceil_div(n, 3)
    p3 = 2 * n - 3 * q - 3 * m + 1
    return Section10Bounds(
        u_minus_R=u - (2 * n - 2 * k + 1),
        u_minus_ST=u - (2 * n - 2 * k + 4),
        u_minus_pair=u - (4 * n - 4 * k + 8),
        u_minus_pair_S3=u - (4 * n - 4 * k + 5),
        s3_profit=p3,
        t3_profit=p3,
        u_capacity=(n - k) * (n - k - 1),
    )


# -- full run --------------------------------------------------------------------


@dataclass
class SieveRun:
    stages: list
    pipeline: list  # BoundState for every input of the profit stage

    @property
    def counts(self):
        return {s.label: s.count for s in self.stages}

    def survivors(self, label=None):
        if label is None:
            return [b.quad for b in self.pipeline if b.eliminatedBy == "NONE"]
        return next(s.survivors for s in self.stages if s.label == label)


def run_sieve(m_prime=None, mu=None, m2_distance=None) -> SieveRun:
    stages = apply_inequality_chain(enumerate_quadruples())
    cur = stages[-1].survivors
    for st in (m2_stage(cur, m2_distance),):
        stages.append(st)
        cur = st.survivors
    st = ig_stage(cur, m_prime)
    stages.append(st)
    st = h_stage(st.survivors)
    stages.append(st)
    pipe = [bound_pipeline(q, mu) for q in st.survivors]
    stages.append(StageResult("PIPELINE", [b.quad for b in pipe if b.eliminatedBy == "NONE"],
                              [b.quad for b in pipe if b.eliminatedBy != "NONE"]))
    return SieveRun(stages, pipe)


STAGE_LABELS = ("I4", "I2", "I3", "I5", "I6", "I7", "N32", "M2", "IG", "H", "PIPELINE")
