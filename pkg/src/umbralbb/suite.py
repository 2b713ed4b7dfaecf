"""Run every identity checker over parameter ranges and collect the reports."""
from __future__ import annotations

import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from . import identities as ids
from .umbral import DEFAULT_MOMENTS, MomentProvider


@dataclass(frozen=True)
class SuiteRanges:
    """Inclusive (lo, hi) bounds for each parameter; lo > hi means empty.

    ``N`` is the self-duality sequence length; only its upper bound is used,
    since one check at length N covers every shorter prefix.
    """

    m: tuple = (0, 6)
    l: tuple = (0, 6)
    n: tuple = (1, 4)
    N: tuple = (0, 10)
    p: tuple = (1, 8)
    r: tuple = (0, 7)

    @classmethod
    def empty(cls) -> "SuiteRanges":
        return cls(**{f.name: (0, -1) for f in fields(cls)})

    def span(self, key: str) -> range:
        lo, hi = getattr(self, key)
        return range(lo, hi + 1)

    def override(self, **bounds) -> "SuiteRanges":
        return replace(self, **{k: v for k, v in bounds.items() if v is not None})


_RANGE_RE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$")
RANGE_KEYS = tuple(f.name for f in fields(SuiteRanges))


def parse_bound(text: str) -> tuple:
    """'3' -> (3, 3); '0..6' -> (0, 6)."""
    m = _RANGE_RE.match(text)
    if m is None:
        raise ValueError(f"bad range {text!r}; expected 'lo..hi' or a single integer")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    return (lo, hi)


def parse_ranges(text: str, base: SuiteRanges | None = None) -> SuiteRanges:
    """Parse 'm=0..6,n=1..4' on top of ``base`` (defaults if omitted)."""
    base = base or SuiteRanges()
    bounds = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in RANGE_KEYS:
            raise ValueError(f"bad range item {item!r}; keys are {', '.join(RANGE_KEYS)}")
        bounds[key] = parse_bound(value)
    return base.override(**bounds)


def read_config(path) -> SuiteRanges:
    """Ranges from a 'key = value' text file; '#' starts a comment."""
    bounds = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in RANGE_KEYS:
                raise ValueError(f"{path}:{lineno}: expected '<range key> = <value>'")
            bounds[key] = parse_bound(value)
    return SuiteRanges().override(**bounds)


# --------------------------------------------------------------------------
# registry: identity id -> (checker call, parameter generator)

def _mn(r: SuiteRanges, m_min=0):
    return [{"m": m, "n": n} for m in r.span("m") if m >= m_min for n in r.span("n") if n >= 1]


def _self_dual_params(r):
    Ns = r.span("N")
    return [{"N": Ns[-1], "n": n} for n in r.span("n") if n >= 1] if Ns else []


def _lmn(r):
    return [{"l": l, "m": m, "n": n}
            for l in r.span("l") for m in r.span("m") for n in r.span("n") if n >= 1]


def _main_params(r):
    return [{"m": m, "n": n} for m in r.span("m") if m >= 1 and m % 2
            for n in r.span("n") if n >= 3]


def _palindromic_params(r, seed):
    out = []
    for m in r.span("m"):
        if m % 2 == 0:
            continue
        for n in r.span("n"):
            if n < 1:
                continue
            rng = random.Random(f"{seed}:{m}:{n}")
            families = [ids.PalindromicWeights.ones(n)]
            if n >= 4:
                families.append(ids.PalindromicWeights.main_identity(n))
            families.append(ids.PalindromicWeights.random(n, rng))
            out += [{"weights": w, "m": m} for w in families]
    return out


def _norlund_params(r):
    return [{"r": rr, "p": p, "form": form}
            for p in r.span("p") if p >= 1 for rr in r.span("r") if rr < p and rr >= 0
            for form in (1, 2)]


CHECKERS = {
    "difference_formula": (ids.check_difference_formula, lambda r, s: _mn(r)),
    "reflection": (ids.check_reflection, lambda r, s: _mn(r)),
    "general_expansion": (ids.check_general_expansion, lambda r, s: _mn(r)),
    "shift_negation": (ids.check_shift_equals_negation, lambda r, s: _mn(r)),
    "uniform_ftc": (ids.check_uniform_ftc, lambda r, s: [{"m": m} for m in r.span("m")]),
    "multi_uniform_difference": (ids.check_multi_uniform_difference, lambda r, s: _mn(r)),
    "self_dual": (ids.check_self_dual, lambda r, s: _self_dual_params(r)),
    "symmetry_1": (ids.check_symmetry_1, lambda r, s: _lmn(r)),
    "symmetry_2": (ids.check_symmetry_2, lambda r, s: _lmn(r)),
    "odd_recurrence": (ids.check_odd_recurrence, lambda r, s: _mn(r)),
    "even_recurrence": (ids.check_even_recurrence, lambda r, s: _mn(r, m_min=1)),
    "main_identity": (ids.check_main_identity, lambda r, s: _main_params(r)),
    "palindromic_general": (ids.check_palindromic_general, _palindromic_params),
    "norlund_recurrence": (ids.check_norlund_recurrence, lambda r, s: _norlund_params(r)),
}

# checkers with no parameter vector a have no numeric spot instances
_NO_SPOT = {"norlund_recurrence"}


def _random_vector(n: int, rng: random.Random) -> tuple:
    while True:
        vals = tuple(Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]), rng.randint(1, 4))
                     for _ in range(n))
        if sum(vals) != 0:
            return vals


def _spot_tasks(identity_id: str, symbolic: list, count: int, rng: random.Random) -> list:
    if identity_id in _NO_SPOT or not symbolic or count <= 0:
        return []
    tasks = []
    for kwargs in rng.sample(symbolic, min(count, len(symbolic))):
        kwargs = dict(kwargs)
        if identity_id == "uniform_ftc":
            kwargs["step"] = _random_vector(1, rng)[0]
        else:
            n = kwargs["weights"].n if "weights" in kwargs else kwargs["n"]
            kwargs["values"] = _random_vector(n, rng)
        tasks.append(kwargs)
    return tasks


def build_tasks(ranges: SuiteRanges, identities=None, seed: int = 0, spot_checks: int = 3) -> list:
    selected = list(CHECKERS) if identities is None else list(identities)
    unknown = [i for i in selected if i not in CHECKERS]
    if unknown:
        raise KeyError(f"unknown identity id(s): {', '.join(unknown)}")
    rng = random.Random(seed)
    tasks = []
    for identity_id in sorted(selected):
        _, gen = CHECKERS[identity_id]
        symbolic = gen(ranges, seed)
        tasks += [(identity_id, kw) for kw in symbolic]
        tasks += [(identity_id, kw) for kw in _spot_tasks(identity_id, symbolic, spot_checks, rng)]
    return tasks


def run_task(task, provider: MomentProvider = DEFAULT_MOMENTS) -> ids.IdentityReport:
    identity_id, kwargs = task
    checker, _ = CHECKERS[identity_id]
    return checker(**kwargs, provider=provider)


def _run_chunk(args):
    tasks, provider = args
    return [run_task(t, provider) for t in tasks]


def run_suite(ranges: SuiteRanges | None = None, provider: MomentProvider = DEFAULT_MOMENTS, *,
              identities=None, seed: int = 0, spot_checks: int = 3, workers: int = 1) -> list:
    """Every selected checker over the ranges plus seeded numeric spot checks.

    Never stops at a failure.  Reports come back sorted by identity id, then
    symbolic before numeric, then parameters, whatever the worker count.
    """
    ranges = SuiteRanges() if ranges is None else ranges
    tasks = build_tasks(ranges, identities, seed, spot_checks)
    if workers <= 1 or len(tasks) < 2:
        reports = [run_task(t, provider) for t in tasks]
    else:
        # interleave so that expensive high-degree tasks are spread out
        chunks = [tasks[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = [r for chunk in pool.map(_run_chunk, [(c, provider) for c in chunks])
                       for r in chunk]
    return sorted(reports, key=lambda rep: rep.sort_key())
