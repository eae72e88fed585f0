"""Exact colorability search for small van der Waerden numbers.

Method: backtracking over positions 1..N with branching left to right and
colors tried in ascending order, plus forced-position propagation.  Each
color class is a bitmask over positions; for every color c a "forbidden"
bitmask records the positions where assigning c would complete a
monochromatic k-AP (an AP all of whose other members already carry c).
After every assignment the forbidden masks are refreshed from the APs
through that position; a position with every color forbidden fails the
branch at once, and a position with exactly one color left is assigned
without branching, cascading until a fixpoint.

Branch decisions are taken in canonical color order (a branch may introduce
at most one color index beyond those already used), which is sound and
complete for SAT/UNSAT because AP-freeness is invariant under color
permutation; forced assignments are exempt, so the explored space sits
between the canonical colorings and the full space.

Parallel mode partitions the decision tree near the root into several
subtrees per worker and fans them over a process pool; SAT short-circuits
the rest, UNSAT requires every subtree to be exhausted.  The SAT/UNSAT
answer is identical across worker counts; certificates may differ in
parallel mode but always verify.

W(r, 2) = r + 1 by pigeonhole; the engine only accepts k >= 3.
"""

from __future__ import annotations

import json
import multiprocessing
import threading
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .bounds import VdwInstance, n_range
from .errors import (
    BudgetExhausted,
    ConfigError,
    DomainError,
    IntegrityError,
)

# Instances whose exact value is reproducible at desk scale.  Anything else
# (W(2,6) = 1132, W(3,4) = 293, and beyond) needs force=True and may time out.
FEASIBLE_INSTANCES = frozenset({(2, 3), (2, 4), (2, 5), (3, 3), (4, 3)})

_CHECK_MASK = 1023  # consult the clock / stop flag every 1024 branch nodes


class SearchStatus(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    TIMEOUT = "TIMEOUT"


@dataclass(frozen=True)
class Budget:
    """Node and wall-time limits for one search call."""

    max_nodes: int = 10**9
    max_seconds: float = 600.0

    def __post_init__(self):
        if not isinstance(self.max_nodes, int) or self.max_nodes < 1:
            raise ConfigError(f"max_nodes must be a positive integer, got {self.max_nodes!r}")
        if not self.max_seconds > 0:
            raise ConfigError(f"max_seconds must be positive, got {self.max_seconds!r}")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    seconds: float

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "seconds": self.seconds}


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors 0..r-1 to positions 1..N (colors[i-1] is position i)."""

    N: int
    r: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if self.r < 2:
            raise DomainError(f"r must be >= 2, got {self.r}")
        colors = tuple(self.colors)
        object.__setattr__(self, "colors", colors)
        if len(colors) != self.N:
            raise DomainError(f"expected {self.N} colors, got {len(colors)}")
        for c in colors:
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < self.r:
                raise DomainError(f"color {c!r} outside [0, {self.r - 1}]")

    def color_of(self, position: int) -> int:
        return self.colors[position - 1]

    def to_dict(self, k: int | None = None) -> dict:
        out: dict = {"r": self.r}
        if k is not None:
            out["k"] = k
        out["N"] = self.N
        out["colors"] = list(self.colors)
        return out


@dataclass(frozen=True)
class APWitness:
    """Monochromatic AP a, a+d, ..., a+(k-1)d, all carrying `color`."""

    a: int
    d: int
    color: int

    def positions(self, k: int) -> list[int]:
        return [self.a + j * self.d for j in range(k)]

    def to_dict(self) -> dict:
        return {"a": self.a, "d": self.d, "color": self.color}


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    certificate: Coloring | None
    stats: SearchStats

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "stats": self.stats.to_dict(),
        }


@dataclass(frozen=True)
class ComputeWResult:
    instance: VdwInstance
    value: int
    certificate: Coloring  # AP-free coloring of [1, value - 1]
    stats: SearchStats

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "value": self.value,
            "certificate": self.certificate.to_dict(),
            "stats": self.stats.to_dict(),
        }


@dataclass(frozen=True)
class PlannedInterval:
    """One candidate bracket [r**n, r**(n+1)), with its cumulative form [1, r**(n+1)]."""

    n: int
    low: int
    high: int
    cumulative_high: int
    hinted: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "low": self.low,
            "high": self.high,
            "cumulative": [1, self.cumulative_high],
            "hinted": self.hinted,
        }


def find_mono_ap(coloring: Coloring, k: int) -> APWitness | None:
    """First monochromatic k-AP in (d, a)-lexicographic order, or None."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 3:
        raise DomainError(f"k must be an integer >= 3, got {k!r}")
    N = coloring.N
    colors = coloring.colors
    for d in range(1, (N - 1) // (k - 1) + 1):
        span = (k - 1) * d
        for a in range(1, N - span + 1):
            c0 = colors[a - 1]
            for j in range(1, k):
                if colors[a + j * d - 1] != c0:
                    break
            else:
                witness = APWitness(a=a, d=d, color=c0)
                for p in witness.positions(k):
                    if not 1 <= p <= N or colors[p - 1] != c0:
                        raise IntegrityError(f"witness re-check failed at position {p}")
                return witness
    return None


def verify_certificate(coloring: Coloring, k: int) -> bool:
    """True iff the coloring contains no monochromatic k-AP."""
    return find_mono_ap(coloring, k) is None


@lru_cache(maxsize=None)
def _ap_other_masks(k: int, p: int) -> tuple[int, ...]:
    """Bitmasks of the first k-1 members of every k-AP whose last member is p."""
    out = []
    for d in range(1, (p - 1) // (k - 1) + 1):
        a = p - (k - 1) * d
        m = 0
        for j in range(k - 1):
            m |= 1 << (a + j * d)
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=128)
def _aps_through(k: int, N: int) -> tuple[tuple[int, ...], ...]:
    """For each position p, the full masks of every k-AP in [1, N] containing p."""
    masks = []
    for d in range(1, (N - 1) // (k - 1) + 1):
        for a in range(1, N - (k - 1) * d + 1):
            m = 0
            for j in range(k):
                m |= 1 << (a + j * d)
            masks.append(m)
    per: list[list[int]] = [[] for _ in range(N + 1)]
    for m in masks:
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            per[low.bit_length() - 1].append(m)
    return tuple(tuple(lst) for lst in per)


@lru_cache(maxsize=8)
def _pair_threats(N: int) -> tuple[tuple[int, ...], ...]:
    """k = 3 only: table[u][v] masks the positions completing a 3-AP with u, v.

    Two same-colored positions u != v threaten 2v-u, 2u-v, and (u+v)/2 when
    the gap is even; nothing else can complete a 3-term AP through both.
    """
    table = [(0,) * (N + 1)]
    for u in range(1, N + 1):
        row = [0]
        for v in range(1, N + 1):
            m = 0
            if v != u:
                for t in (2 * v - u, 2 * u - v):
                    if 1 <= t <= N:
                        m |= 1 << t
                if (u + v) % 2 == 0:
                    mid = (u + v) // 2
                    if mid not in (u, v):
                        m |= 1 << mid
            row.append(m)
        table.append(tuple(row))
    return tuple(table)


def _assign_prop(cm, fb, un, used, p, c, aps_through, r, pair_table=None):
    """Assign color c to position p, then propagate forced positions.

    Mutates cm (class masks) and fb (forbidden masks).  Returns
    (ok, un, used, count) where count is the number of assignments made;
    ok is False on conflict (a dead position or a completed mono AP).
    When pair_table is given (k = 3) threats come from the pair table
    instead of scanning APs.
    """
    pending = [(p, c)]
    count = 0
    while pending:
        q, qc = pending.pop()
        bit = 1 << q
        if not un & bit:
            if cm[qc] & bit:
                continue  # forced twice with the same color
            return False, un, used, count
        if fb[qc] & bit:
            return False, un, used, count
        cm[qc] |= bit
        un &= ~bit
        if qc >= used:
            used = qc + 1
        count += 1
        cmq = cm[qc]
        new_threats = 0
        if pair_table is not None:
            row = pair_table[q]
            mm = cmq & ~bit
            while mm:
                lowb = mm & -mm
                mm ^= lowb
                new_threats |= row[lowb.bit_length() - 1]
        else:
            ncm = ~cmq
            hits = [
                rem for am in aps_through[q]
                if (rem := am & ncm) & (rem - 1) == 0
            ]
            for rem in hits:
                if rem == 0:
                    return False, un, used, count  # monochromatic AP completed
                new_threats |= rem
        new_threats &= ~fb[qc]
        if not new_threats:
            continue
        fb[qc] |= new_threats
        hit = new_threats & un  # only these positions can change status
        if not hit:
            continue
        dead = hit
        for c3 in range(r):
            dead &= fb[c3]
            if not dead:
                break
        if dead:
            return False, un, used, count
        for c2 in range(r):
            if c2 == qc:
                continue  # fb[qc] was just set on every hit position
            forced = hit & ~fb[c2]
            if not forced:
                continue
            for c3 in range(r):
                if c3 != c2:
                    forced &= fb[c3]
                    if not forced:
                        break
            while forced:
                low = forced & -forced
                forced ^= low
                pending.append((low.bit_length() - 1, c2))
    return True, un, used, count


def _run_tree_r2(N, aps_through, cm0, cm1, fb0, fb1, un, max_nodes, deadline, stop, charge):
    """Two-color engine on scalar bitmasks; canonical form fixes position 1.

    Same contract as _run_tree; the caller pre-assigns nothing, symmetry is
    realized by offering only color 0 while no position is colored yet.
    """
    nodes = 0
    charged = 0
    branches = 0
    monotonic = time.monotonic
    frames = []  # [cands, idx, bit, cm0, cm1, fb0, fb1, un]
    while True:
        if un == 0:
            return "SAT", [cm0, cm1], nodes
        low = un & -un
        cands = []
        if not fb0 & low:
            cands.append(0)
        if not fb1 & low and (cm0 or cm1):  # color 1 only once something is colored
            cands.append(1)
        frames.append([cands, 0, low, cm0, cm1, fb0, fb1, un])
        while True:
            if not frames:
                return "UNSAT", None, nodes
            frame = frames[-1]
            cands, idx, low, s0, s1, f0, f1, su = frame
            if idx == len(cands):
                frames.pop()
                continue
            frame[1] = idx + 1
            cm0, cm1, fb0, fb1, un = s0, s1, f0, f1, su
            branches += 1
            if branches & _CHECK_MASK == 0:
                if deadline is not None and monotonic() >= deadline:
                    return "TIMEOUT", None, nodes
                if stop is not None and stop.is_set():
                    return "ABORTED", None, nodes
                if charge is not None:
                    if not charge(nodes - charged):
                        return "TIMEOUT", None, nodes
                    charged = nodes
            # inline assign + propagate
            pend_bit = [low]
            pend_col = [cands[idx]]
            ok = True
            while pend_bit:
                qbit = pend_bit.pop()
                qc = pend_col.pop()
                if not un & qbit:
                    if (cm0 if qc == 0 else cm1) & qbit:
                        continue
                    ok = False
                    break
                un &= ~qbit
                nodes += 1
                q = qbit.bit_length() - 1
                if qc == 0:
                    if fb0 & qbit:
                        ok = False
                        break
                    cm0 |= qbit
                    ncm = ~cm0
                    hits = [
                        rem for am in aps_through[q]
                        if (rem := am & ncm) & (rem - 1) == 0
                    ]
                    nt = 0
                    for rem in hits:
                        if rem == 0:
                            ok = False
                            break
                        nt |= rem
                    if not ok:
                        break
                    nt &= ~fb0
                    if nt:
                        fb0 |= nt
                        hit = nt & un
                        if hit:
                            if hit & fb1:
                                ok = False  # some position has both colors forbidden
                                break
                            while hit:  # every hit position is forced to color 1
                                b = hit & -hit
                                hit ^= b
                                pend_bit.append(b)
                                pend_col.append(1)
                else:
                    if fb1 & qbit:
                        ok = False
                        break
                    cm1 |= qbit
                    ncm = ~cm1
                    hits = [
                        rem for am in aps_through[q]
                        if (rem := am & ncm) & (rem - 1) == 0
                    ]
                    nt = 0
                    for rem in hits:
                        if rem == 0:
                            ok = False
                            break
                        nt |= rem
                    if not ok:
                        break
                    nt &= ~fb1
                    if nt:
                        fb1 |= nt
                        hit = nt & un
                        if hit:
                            if hit & fb0:
                                ok = False
                                break
                            while hit:
                                b = hit & -hit
                                hit ^= b
                                pend_bit.append(b)
                                pend_col.append(0)
            if nodes >= max_nodes:
                return "TIMEOUT", None, nodes
            if ok:
                break


def _run_tree(N, r, aps_through, cm, fb, un, used, max_nodes, deadline, stop, charge, symmetry, pair_table=None):
    """Backtrack from the given state (mutated in place) until decided.

    Returns (status, class_masks_or_None, nodes) with status in
    {"SAT", "UNSAT", "TIMEOUT", "ABORTED"}.
    """
    if r == 2 and symmetry:
        return _run_tree_r2(
            N, aps_through, cm[0], cm[1], fb[0], fb[1], un,
            max_nodes, deadline, stop, charge,
        )
    nodes = 0
    charged = 0
    branches = 0
    monotonic = time.monotonic
    # frames: [candidate_colors, next_index, position, cm0, fb0, un0, used0]
    frames = []
    while True:
        if un == 0:
            return "SAT", list(cm), nodes
        low = un & -un
        p = low.bit_length() - 1
        limit = used + 1 if symmetry else r
        if limit > r:
            limit = r
        cands = [c for c in range(limit) if not fb[c] & low]
        frames.append([cands, 0, p, tuple(cm), tuple(fb), un, used])
        while True:
            if not frames:
                return "UNSAT", None, nodes
            frame = frames[-1]
            cands, idx, p, cm0, fb0, un0, used0 = frame
            if idx == len(cands):
                frames.pop()
                continue
            frame[1] = idx + 1
            cm[:] = cm0
            fb[:] = fb0
            branches += 1
            if branches & _CHECK_MASK == 0:
                if deadline is not None and monotonic() >= deadline:
                    return "TIMEOUT", None, nodes
                if stop is not None and stop.is_set():
                    return "ABORTED", None, nodes
                if charge is not None:
                    if not charge(nodes - charged):
                        return "TIMEOUT", None, nodes
                    charged = nodes
            ok, un, used, made = _assign_prop(cm, fb, un0, used0, p, cands[idx], aps_through, r, pair_table)
            nodes += made
            if nodes >= max_nodes:
                return "TIMEOUT", None, nodes
            if ok:
                break


def _masks_to_coloring(masks, N, r) -> Coloring:
    colors = []
    for p in range(1, N + 1):
        bit = 1 << p
        for c in range(r):
            if masks[c] & bit:
                colors.append(c)
                break
        else:
            raise IntegrityError(f"certificate leaves position {p} uncolored")
    return Coloring(N=N, r=r, colors=tuple(colors))


def _full_mask(N: int) -> int:
    return ((1 << N) - 1) << 1  # bits 1..N


def _split_prefixes(N, r, aps_through, threads, symmetry, pair_table=None):
    """Partition the decision tree near the root into >= threads leaves.

    Returns ("leaves", [...]) with states (cm, fb, un, used), or an immediate
    ("SAT", masks) / ("UNSAT", None) when the prefix tree settles the answer.
    """
    leaves = [([0] * r, [0] * r, _full_mask(N), 0)]
    rounds = 0
    while len(leaves) < threads and rounds < 24:
        rounds += 1
        grown = []
        for cm, fb, un, used in leaves:
            if un == 0:
                return "SAT", cm
            low = un & -un
            p = low.bit_length() - 1
            limit = min(used + 1, r) if symmetry else r
            for c in range(limit):
                if fb[c] & low:
                    continue
                cm2, fb2 = list(cm), list(fb)
                ok, un2, used2, _made = _assign_prop(cm2, fb2, un, used, p, c, aps_through, r, pair_table)
                if not ok:
                    continue
                if un2 == 0:
                    return "SAT", cm2
                grown.append((cm2, fb2, un2, used2))
        if not grown:
            return "UNSAT", None
        leaves = grown
    return "leaves", leaves


_PAR_STOP = None
_PAR_SPENT = None


def _parallel_init(stop, spent):
    global _PAR_STOP, _PAR_SPENT
    _PAR_STOP = stop
    _PAR_SPENT = spent


def _parallel_worker(args):
    # deadline is absolute CLOCK_MONOTONIC time, shared across forked workers
    N, r, k, leaf, max_nodes, deadline, symmetry = args
    cm, fb, un, used = leaf
    aps = _aps_through(k, N)
    pair_table = _pair_threats(N) if k == 3 and r > 2 else None
    stop = _PAR_STOP
    spent = _PAR_SPENT

    def charge(delta: int) -> bool:
        with spent.get_lock():
            spent.value += delta
            if spent.value > max_nodes:
                stop.set()
                return False
        return True

    return _run_tree(
        N, r, aps, list(cm), list(fb), un, used,
        max_nodes, deadline, stop, charge, symmetry, pair_table,
    )


def _run_parallel(N, r, k, aps_through, threads, max_nodes, deadline, symmetry, pair_table=None):
    """Fan the subtree roots out over a process pool (thread pool if fork is
    unavailable); SAT short-circuits, UNSAT needs every subtree exhausted."""
    kind, payload = _split_prefixes(N, r, aps_through, threads * 8, symmetry, pair_table)
    if kind == "SAT":
        return "SAT", payload, 0
    if kind == "UNSAT":
        return "UNSAT", None, 0
    leaves = payload
    jobs = [(N, r, k, leaf, max_nodes, deadline, symmetry) for leaf in leaves]

    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        ctx = None

    total_nodes = 0
    sat_masks = None
    timed_out = False
    aborted = False

    if ctx is not None:
        stop = ctx.Event()
        spent = ctx.Value("q", 0)
        executor = ProcessPoolExecutor(
            max_workers=threads,
            mp_context=ctx,
            initializer=_parallel_init,
            initargs=(stop, spent),
        )
    else:  # pragma: no cover - exercised only on fork-less platforms
        stop = threading.Event()
        lock = threading.Lock()
        box = {"nodes": 0}

        class _Spent:
            def get_lock(self):
                return lock

            @property
            def value(self):
                return box["nodes"]

            @value.setter
            def value(self, v):
                box["nodes"] = v

        _parallel_init(stop, _Spent())
        executor = ThreadPoolExecutor(max_workers=threads)

    with executor as pool:
        futures = [pool.submit(_parallel_worker, job) for job in jobs]
        for fut in as_completed(futures):
            status, masks, nodes = fut.result()
            total_nodes += nodes
            if status == "SAT":
                if sat_masks is None:
                    sat_masks = masks
                stop.set()
            elif status == "TIMEOUT":
                timed_out = True
                stop.set()
            elif status == "ABORTED":
                aborted = True
    if sat_masks is not None:
        return "SAT", sat_masks, total_nodes
    if timed_out or aborted:
        return "TIMEOUT", None, total_nodes
    return "UNSAT", None, total_nodes


def decide_colorability(
    N: int,
    inst: VdwInstance,
    budget: Budget | None = None,
    threads: int = 1,
    symmetry_breaking: bool = True,
) -> SearchOutcome:
    """Decide whether [1, N] admits an r-coloring with no monochromatic k-AP.

    SAT outcomes carry a verified certificate; UNSAT means the search space
    was exhausted; TIMEOUT carries partial node statistics.  Sequential mode
    is deterministic: branch positions left to right, colors ascending,
    forced positions propagated.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if not isinstance(threads, int) or threads < 1:
        raise ConfigError(f"threads must be a positive integer, got {threads!r}")
    if budget is None:
        budget = Budget()
    r, k = inst.r, inst.k
    started = time.perf_counter()
    deadline = time.monotonic() + budget.max_seconds
    aps = _aps_through(k, N)
    pair_table = _pair_threats(N) if k == 3 and r > 2 else None
    if threads == 1:
        status, masks, nodes = _run_tree(
            N, r, aps, [0] * r, [0] * r, _full_mask(N), 0,
            budget.max_nodes, deadline, None, None, symmetry_breaking, pair_table,
        )
    else:
        status, masks, nodes = _run_parallel(
            N, r, k, aps, threads, budget.max_nodes, deadline,
            symmetry_breaking, pair_table,
        )
    stats = SearchStats(nodes=nodes, seconds=time.perf_counter() - started)
    if status == "SAT":
        certificate = _masks_to_coloring(masks, N, r)
        if not verify_certificate(certificate, k):
            raise IntegrityError("search produced a certificate that fails verification")
        return SearchOutcome(SearchStatus.SAT, certificate, stats)
    if status == "UNSAT":
        return SearchOutcome(SearchStatus.UNSAT, None, stats)
    return SearchOutcome(SearchStatus.TIMEOUT, None, stats)


def _extend_certificate(cert: Coloring, k: int) -> Coloring | None:
    """Try to append one position to an AP-free coloring; None if no color fits."""
    new_n = cert.N + 1
    masks = [0] * cert.r
    for p, c in enumerate(cert.colors, start=1):
        masks[c] |= 1 << p
    apl = _ap_other_masks(k, new_n)
    for c in range(cert.r):
        cm = masks[c]
        if any(m & cm == m for m in apl):
            continue
        return Coloring(N=new_n, r=cert.r, colors=cert.colors + (c,))
    return None


def _seed_state(N, r, aps_through, seed_colors, prefix_len, pair_table=None):
    """Assign the first prefix_len seed colors and propagate; None on conflict."""
    cm = [0] * r
    fb = [0] * r
    un = _full_mask(N)
    used = 0
    for p in range(1, prefix_len + 1):
        c = seed_colors[p - 1]
        bit = 1 << p
        if not un & bit:
            if cm[c] & bit:
                continue  # already forced to the seed color
            return None
        ok, un, used, _made = _assign_prop(cm, fb, un, used, p, c, aps_through, r, pair_table)
        if not ok:
            return None
    return cm, fb, un, used


def _decide_seeded(N, inst, seed, budget, threads):
    """decide_colorability for a SAT-leaning N, retrying around a known seed.

    Searches the subspace that keeps a long prefix of the previous
    certificate, widening the re-searched suffix exponentially; a subspace
    UNSAT only escalates, never concludes.  The final fallback is the full
    search, so the outcome equals decide_colorability's.
    """
    r, k = inst.r, inst.k
    started = time.perf_counter()
    deadline = time.monotonic() + budget.max_seconds
    nodes_left = budget.max_nodes
    total = 0
    aps = _aps_through(k, N)
    pair_table = _pair_threats(N) if k == 3 and r > 2 else None
    backoff = 8
    while backoff <= 32 and len(seed) - backoff > 0:
        state = _seed_state(N, r, aps, seed, len(seed) - backoff, pair_table)
        if state is not None:
            cm, fb, un, used = state
            if un == 0:
                status, masks, nodes = "SAT", cm, 0
            else:
                # symmetry stays on: with a non-empty prefix the two-color
                # engine is unrestricted anyway, and for r > 2 a too-narrow
                # subspace merely escalates the backoff
                status, masks, nodes = _run_tree(
                    N, r, aps, cm, fb, un, used,
                    max(nodes_left, 1), deadline, None, None, True, pair_table,
                )
            total += nodes
            nodes_left -= nodes
            if status == "SAT":
                stats = SearchStats(total, time.perf_counter() - started)
                certificate = _masks_to_coloring(masks, N, r)
                if not verify_certificate(certificate, k):
                    raise IntegrityError("seeded search produced an invalid certificate")
                return SearchOutcome(SearchStatus.SAT, certificate, stats)
            if status == "TIMEOUT":
                return SearchOutcome(
                    SearchStatus.TIMEOUT, None,
                    SearchStats(total, time.perf_counter() - started),
                )
        backoff *= 4
    # escalation exhausted; fall through to the authoritative full search
    remaining = Budget(
        max_nodes=max(nodes_left, 1),
        max_seconds=max(deadline - time.monotonic(), 1e-3),
    )
    outcome = decide_colorability(N, inst, remaining, threads=threads)
    return SearchOutcome(
        outcome.status,
        outcome.certificate,
        SearchStats(total + outcome.stats.nodes, time.perf_counter() - started),
    )


def compute_W(
    inst: VdwInstance,
    budget: Budget | None = None,
    threads: int = 1,
    force: bool = False,
) -> ComputeWResult:
    """Least N such that every r-coloring of [1, N] has a monochromatic k-AP.

    Searches upward from N = k, reusing each SAT certificate as a seed for
    the next N (monotonicity).  Budget exhaustion raises BudgetExhausted with
    the best proven bracket [last_SAT + 1, infinity).
    """
    if budget is None:
        budget = Budget()
    if inst.key not in FEASIBLE_INSTANCES and not force:
        raise DomainError(
            f"(r={inst.r}, k={inst.k}) is outside the desk-scale allowlist "
            f"{sorted(FEASIBLE_INSTANCES)}; pass force=True to run it anyway "
            "with honest timeout semantics"
        )
    started = time.perf_counter()
    deadline = time.monotonic() + budget.max_seconds
    nodes_left = budget.max_nodes
    total_nodes = 0
    prev_cert: Coloring | None = None
    N = inst.k
    while True:
        now = time.monotonic()
        if now >= deadline or nodes_left < 1:
            raise BudgetExhausted(
                f"budget exhausted before deciding N={N}; W({inst.r},{inst.k}) >= {N}",
                lower_bound=N,
                nodes=total_nodes,
                seconds=time.perf_counter() - started,
            )
        if prev_cert is not None:
            extended = _extend_certificate(prev_cert, inst.k)
            if extended is not None:
                prev_cert = extended
                N += 1
                continue
        sub_budget = Budget(max_nodes=nodes_left, max_seconds=max(deadline - now, 1e-3))
        if prev_cert is not None:
            outcome = _decide_seeded(N, inst, prev_cert.colors, sub_budget, threads)
        else:
            outcome = decide_colorability(N, inst, sub_budget, threads=threads)
        total_nodes += outcome.stats.nodes
        nodes_left -= outcome.stats.nodes
        if outcome.status is SearchStatus.SAT:
            prev_cert = outcome.certificate
            N += 1
            continue
        if outcome.status is SearchStatus.UNSAT:
            if prev_cert is None:
                raise IntegrityError(
                    f"N={N} reported UNSAT with no smaller SAT point; "
                    "impossible for r >= 2"
                )
            return ComputeWResult(
                instance=inst,
                value=N,
                certificate=prev_cert,
                stats=SearchStats(total_nodes, time.perf_counter() - started),
            )
        raise BudgetExhausted(
            f"search timed out at N={N}; W({inst.r},{inst.k}) >= {N}",
            lower_bound=N,
            nodes=total_nodes,
            seconds=time.perf_counter() - started,
        )


def plan_intervals(
    inst: VdwInstance,
    lower_bound: int,
    hint: tuple[int, int] | None = None,
) -> tuple[PlannedInterval, ...]:
    """Candidate brackets [r**n, r**(n+1)) for every n the lower bound allows.

    Ordered ascending; each carries its cumulative form [1, r**(n+1)].  The
    optional hint window marks brackets as favored; it is caller-supplied
    guesswork, never a default.
    """
    window = n_range(inst, lower_bound)
    out = []
    for n in window:
        hinted = hint is not None and hint[0] <= n <= hint[1]
        low = inst.r**n
        high = low * inst.r
        out.append(
            PlannedInterval(n=n, low=low, high=high, cumulative_high=high, hinted=hinted)
        )
    return tuple(out)


def certificate_to_json(cert: Coloring, k: int) -> str:
    """Serialize a certificate: {"r":..., "k":..., "N":..., "colors":[...]}."""
    return json.dumps(cert.to_dict(k=k))


def certificate_from_json(text: str) -> tuple[Coloring, int | None]:
    """Parse certificate JSON; returns the coloring and the embedded k, if any."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid certificate JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError("certificate JSON must be an object")
    for field in ("r", "N", "colors"):
        if field not in data:
            raise DomainError(f"certificate JSON is missing {field!r}")
    if not isinstance(data["colors"], list):
        raise DomainError("certificate 'colors' must be a list")
    coloring = Coloring(N=data["N"], r=data["r"], colors=tuple(data["colors"]))
    k = data.get("k")
    if k is not None and (not isinstance(k, int) or isinstance(k, bool) or k < 3):
        raise DomainError(f"certificate 'k' must be an integer >= 3, got {k!r}")
    return coloring, k
