"""Census of mixed-degree WLP algebras and of the rules that detect them.

For every degree tuple in a box the survey records whether the WLP holds and
sorts the WLP algebras outside the reach of the ``max(p, d_i) > (t+1)/2``
criterion (set A) by which further result explains them:

* B: lowering the two largest degrees by ``b p^a`` (all other degrees at most
  ``p^a``, reduced degrees allowed to reach 1) gives a WLP tuple that also
  meets the extra hypothesis making the two WLP statements equivalent.
* C: the largest degree equals, or is one less than, the sum of ``d_i - 1``
  over the others, with the corresponding multinomial prime to p.
* D: some degree is 2 and the tuple without it has the WLP. In ``strict``
  mode the smaller tuple must also have odd socle degree; ``caption`` mode
  drops that requirement.

WLP of every tuple (including the smaller tuples used by B and D) is decided
by the same engine: the sufficient criterion above when it applies, otherwise
the chosen method (``jordan`` block counting or the ``rank`` oracle).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import os
import random
import re
import time
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterable

from .algebra import normalize
from .classify import (
    family_reductions,
    multinomial_form,
    multinomial_nondivisible,
    wlp_limit_applies,
    _shape_b_good,
)
from .errors import DimensionCap
from .jordan import wlp_by_jordan_type
from .oracle import DIMENSION_CAP, verify_wlp

log = logging.getLogger(__name__)

SET_DEFS = ("strict", "caption")
METHODS = ("jordan", "rank")
CSV_HEADER = "n,d_min,d_max,p,partition,set_defs,A,B,C,D,remainder,skipped"
JOBS_ENV = "LEFSCHETZ_JOBS"

Key = tuple[int, ...]


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# --- partitions ---------------------------------------------------------

_PARTITION_RE = re.compile(r"^\s*d1\s*(=|==|>=|<=|>|<)\s*(\d+)\s*$")
_OPS: dict[str, Callable[[int, int], bool]] = {
    "=": lambda a, b: a == b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
}


@dataclass(frozen=True)
class Partition:
    """Filter on d1, the *smallest* degree of an ascending tuple."""

    expr: str

    def __post_init__(self):
        if self.expr != "all" and not _PARTITION_RE.match(self.expr):
            raise ValueError(f"bad partition {self.expr!r}; use e.g. d1=2, d1>=3 or all")

    def __call__(self, ascending: tuple[int, ...]) -> bool:
        if self.expr == "all":
            return True
        op, bound = _PARTITION_RE.match(self.expr).groups()
        return _OPS[op](ascending[0], int(bound))

    @property
    def label(self) -> str:
        return self.expr.replace(" ", "").replace("==", "=")


def universe(n: int, d_min: int, d_max: int, partition: Partition) -> list[tuple[int, ...]]:
    """Descending degree tuples with ``d_min <= d_i <= d_max`` in the partition."""
    out = []
    for asc in itertools.combinations_with_replacement(range(d_min, d_max + 1), n):
        if partition(asc):
            out.append(tuple(reversed(asc)))
    return out


# --- per-tuple decisions and the cache -------------------------------------


def canonical(degrees: Iterable[int]) -> Key:
    return tuple(sorted((d for d in degrees if d > 1), reverse=True))


def decide_wlp(task: tuple[Key, int, str, int]) -> tuple[Key, bool | None, str]:
    """``(degrees, wlp, rule)``; wlp is None when the tuple hit the dimension cap."""
    degrees, p, method, cap = task
    if len(degrees) <= 2:
        return degrees, True, "R4.4"
    if wlp_limit_applies(degrees, p):
        return degrees, True, "T4.5"
    ci = normalize(degrees, p)
    if method == "jordan":
        return degrees, wlp_by_jordan_type(ci), "jordan"
    try:
        return degrees, verify_wlp(ci, fast=True, cap=cap), "rank"
    except DimensionCap:
        return degrees, None, "skipped"


class VerdictCache:
    """Append-only text cache with lines ``d1,...,dn;p;wlp|nowlp;rule``."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self.entries: dict[tuple[Key, int], tuple[bool, str]] = {}
        if self.path and self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    degs, p, flag, rule = line.split(";")
                    key = canonical(int(x) for x in degs.split(",") if x)
                    if flag not in ("wlp", "nowlp") or not key:
                        raise ValueError(flag)
                    self.entries[(key, int(p))] = (flag == "wlp", rule)
                except ValueError:
                    log.warning("%s:%d: skipping corrupt cache line %r", self.path, lineno, line)

    def get(self, degrees: Key, p: int) -> tuple[bool, str] | None:
        return self.entries.get((degrees, p))

    def add_many(self, p: int, results: list[tuple[Key, bool | None, str]]) -> None:
        lines = []
        for degrees, wlp, rule in results:
            if wlp is None:
                continue
            self.entries[(degrees, p)] = (wlp, rule)
            lines.append(f"{','.join(map(str, degrees))};{p};{'wlp' if wlp else 'nowlp'};{rule}\n")
        if self.path and lines:
            with self.path.open("a") as fh:
                fh.writelines(lines)


def _resolve(
    keys: Iterable[Key], p: int, method: str, cap: int, jobs: int, cache: VerdictCache
) -> dict[Key, bool | None]:
    known: dict[Key, bool | None] = {}
    todo = []
    for key in dict.fromkeys(keys):
        hit = cache.get(key, p)
        if hit is not None:
            known[key] = hit[0]
        else:
            todo.append((key, p, method, cap))
    log.info("p=%d: %d tuples cached, %d to decide with %d job(s)", p, len(known), len(todo), jobs)
    random.Random(0).shuffle(todo)  # load balance only; results are order-free
    if jobs > 1 and len(todo) > 1:
        with Pool(jobs) as pool:
            results = []
            for res in pool.imap_unordered(decide_wlp, todo, chunksize=16):
                results.append(res)
                if len(results) >= 256:
                    cache.add_many(p, results)
                    known.update((k, w) for k, w, _ in results)
                    results = []
            cache.add_many(p, results)
            known.update((k, w) for k, w, _ in results)
    else:
        for task in todo:
            res = decide_wlp(task)
            cache.add_many(p, [res])
            known[res[0]] = res[1]
    return known


# --- the survey ----------------------------------------------------------


@dataclass
class SurveyRow:
    n: int
    d_min: int
    d_max: int
    p: int
    partition: str
    set_defs: str
    A: int
    B: int
    C: int
    D: int
    remainder: int
    tuples_total: int
    tuples_skipped: int
    method: str = "jordan"
    metadata: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def csv_line(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [self.n, self.d_min, self.d_max, self.p, self.partition, self.set_defs,
             self.A, self.B, self.C, self.D, self.remainder, self.tuples_skipped]
        )
        return buf.getvalue()

    def to_dict(self, timings: bool = True) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("wall_time")
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class Membership:
    B: bool
    C: bool
    D: bool


def _b_candidates(degrees: Key, p: int) -> list[Key]:
    return [canonical(r) for r, _a, _b, iff in family_reductions(degrees, p) if iff]


def _d_candidate(degrees: Key, strict: bool) -> Key | None:
    if 2 not in degrees:
        return None
    rest = list(degrees)
    rest.remove(2)
    if strict and sum(x - 1 for x in rest) % 2 == 0:
        return None
    return tuple(rest)


def _in_c(degrees: Key, p: int) -> bool:
    form = multinomial_form(degrees, p)
    if form == "A":
        return multinomial_nondivisible(degrees, p)
    return form == "B" and _shape_b_good(degrees, p)


def survey(
    n: int,
    d_min: int,
    d_max: int,
    p: int,
    partition: str | Partition = "all",
    set_defs: str = "strict",
    *,
    method: str = "jordan",
    jobs: int = 1,
    cache: str | Path | None = None,
    cap: int = DIMENSION_CAP,
    members: dict | None = None,
) -> SurveyRow:
    """Count the sets A, B, C, D for one parameter box.

    Pass a dict as ``members`` to receive the per-tuple classification.
    """
    if not 2 <= d_min <= d_max or n < 2:
        raise ValueError("need n >= 2 and 2 <= d_min <= d_max")
    if set_defs not in SET_DEFS:
        raise ValueError(f"set_defs must be one of {SET_DEFS}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    part = partition if isinstance(partition, Partition) else Partition(partition)
    start = time.perf_counter()
    store = VerdictCache(cache)
    strict = set_defs == "strict"

    tuples = universe(n, d_min, d_max, part)
    open_tuples = [d for d in tuples if not wlp_limit_applies(d, p)]
    wlp = _resolve(open_tuples, p, method, cap, jobs, store)
    skipped = sum(1 for d in open_tuples if wlp[d] is None)
    in_a = [d for d in open_tuples if wlp[d]]

    aux = []
    for d in in_a:
        aux.extend(_b_candidates(d, p))
        prefix = _d_candidate(d, strict)
        if prefix is not None:
            aux.append(prefix)
    wlp.update(_resolve([k for k in aux if k not in wlp], p, method, cap, jobs, store))

    counts = {"B": 0, "C": 0, "D": 0, "union": 0}
    for d in in_a:
        prefix = _d_candidate(d, strict)
        m = Membership(
            B=any(wlp.get(k) for k in _b_candidates(d, p)),
            C=_in_c(d, p),
            D=prefix is not None and bool(wlp.get(prefix)),
        )
        counts["B"] += m.B
        counts["C"] += m.C
        counts["D"] += m.D
        counts["union"] += m.B or m.C or m.D
        if members is not None:
            members[d] = m
    size_a = len(in_a)
    remainder = size_a - counts["union"]
    assert max(counts["B"], counts["C"], counts["D"]) <= size_a
    assert 0 <= remainder <= size_a

    return SurveyRow(
        n=n,
        d_min=d_min,
        d_max=d_max,
        p=p,
        partition=part.label,
        set_defs=set_defs,
        A=size_a,
        B=counts["B"],
        C=counts["C"],
        D=counts["D"],
        remainder=remainder,
        tuples_total=len(tuples),
        tuples_skipped=skipped,
        method=method,
        metadata={
            "partition_variable": "d1 is the smallest degree",
            "base_wlp": "same engine as the survey tuples (criterion shortcut, then method)",
            "reduction_closure": "all a, b >= 1; reduced degrees may reach 1",
            "d_parity": "odd socle degree of the smaller tuple required" if strict else "none",
        },
        wall_time=round(time.perf_counter() - start, 3),
    )
