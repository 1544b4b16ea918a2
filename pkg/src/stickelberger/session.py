"""Per-prime result cache and the subgroup scan.

Cache layout: one JSON file per prime, ``l{l}.v{FORMAT_VERSION}.json``,
holding ``format_version``, ``l``, ``l_theta`` and whatever has been
computed so far: ``minus_ideal`` (basis), ``minus_index``, ``ideal``
(basis) and ``projections`` keyed by subgroup order.  Files are replaced
atomically; stale or malformed files are ignored.
"""
import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .core import (ProjectionReport, StickelbergerData, minus_index,
                   projected_index, theta)
from .cyclic import make_context, primes_between, subgroup_of_order, subgroup_orders
from .lattice import IntegerLattice

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
SLOW_TIER = 199


def default_cache_dir():
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "stickelberger"


class ResultCache:
    def __init__(self, directory):
        self.dir = Path(directory) if directory is not None else None

    def path(self, l):
        return self.dir / f"l{l}.v{FORMAT_VERSION}.json"

    def load(self, l):
        if self.dir is None:
            return {}
        p = self.path(l)
        try:
            data = json.loads(p.read_text())
        except FileNotFoundError:
            return {}
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", p, exc)
            return {}
        if data.get("format_version") != FORMAT_VERSION or data.get("l") != l:
            return {}
        return data

    def store(self, l, data):
        if self.dir is None:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        data = dict(data, format_version=FORMAT_VERSION, l=l)
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=f".l{l}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, sort_keys=True)
            os.replace(tmp, self.path(l))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


class PrimeSession:
    """Lazily computed, cache-backed results for one prime."""

    def __init__(self, l, cache=None):
        self.ctx = make_context(l)
        self.cache = cache or ResultCache(None)
        self.data = self.cache.load(l)
        self._dirty = False
        sd = StickelbergerData(self.ctx, theta(self.ctx))
        if "minus_ideal" in self.data:
            sd._minus_ideal = IntegerLattice.from_json(self.data["minus_ideal"])
        if "ideal" in self.data:
            sd._ideal = IntegerLattice.from_json(self.data["ideal"])
        self.stick = sd

    @property
    def l(self):
        return self.ctx.l

    def _set(self, key, value):
        self.data[key] = value
        self._dirty = True

    def ideal(self):
        if "ideal" not in self.data:
            self._set("ideal", self.stick.ideal.to_json())
        return self.stick.ideal

    def minus_index(self):
        if "minus_index" not in self.data:
            idx = minus_index(self.ctx, self.stick)
            if self.l > 2:
                self._set("minus_ideal", self.stick.minus_ideal.to_json())
            self._set("minus_index", idx)
        return self.data["minus_index"]

    def projection(self, d):
        projections = self.data.setdefault("projections", {})
        key = str(d)
        if key not in projections:
            rep = projected_index(self.ctx, subgroup_of_order(self.ctx, d))
            projections[key] = rep.to_json()
            self._dirty = True
        j = projections[key]
        return ProjectionReport(j["l"], j["subgroup_order"], j["parity"], j["index"],
                                j["n_H"], j["smallest_integer_annihilator"],
                                j["in_half_norm_ideal"], j["closed_under_rho"])

    def flush(self):
        if self._dirty:
            self.data["l_theta"] = list(self.stick.l_theta.coeffs)
            self.cache.store(self.l, self.data)
            self._dirty = False


# scan

CSV_COLUMNS = ("l", "subgroup_order", "parity", "index", "n_H",
               "divides_h_minus", "smallest_integer_annihilator")


@dataclass(frozen=True)
class ScanRow:
    l: int
    subgroup_order: int
    parity: str
    index: int | None
    n_H: int | None
    divides_h_minus: bool
    smallest_integer_annihilator: int | None
    elapsed_ms: float = 0.0

    @property
    def value(self):
        return self.index if self.parity == "odd" else self.n_H

    def to_json(self):
        return asdict(self)

    def key(self):
        """All fields except the wall-clock one."""
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


def scan_orders(l, odd_only=False, proper_only=False):
    ctx = make_context(l)
    out = []
    for d in subgroup_orders(ctx):
        if odd_only and d % 2 == 0:
            continue
        if proper_only and not 2 * d < ctx.order:
            continue
        out.append(d)
    return out


def scan_prime(l, odd_only=False, proper_only=False, cache_dir=None):
    session = PrimeSession(l, ResultCache(cache_dir))
    rows = []
    for d in scan_orders(l, odd_only, proper_only):
        t0 = time.perf_counter()
        rep = session.projection(d)
        value = rep.value
        if value is None:
            raise ArithmeticError(f"no index for l={l}, d={d}")
        # 1 divides everything; only compute h_l^- when it matters
        divides = value == 1 or session.minus_index() % value == 0
        elapsed = (time.perf_counter() - t0) * 1000.0
        rows.append(ScanRow(l, d, rep.parity, rep.index, rep.n_H, divides,
                            rep.smallest_integer, round(elapsed, 3)))
    session.flush()
    return rows


def scan(lmin, lmax, odd_only=False, proper_only=False, cache_dir=None, jobs=1):
    primes = [p for p in primes_between(max(lmin, 2), lmax)] if lmin <= lmax else []
    args = [(p, odd_only, proper_only, cache_dir) for p in primes]
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # largest primes first keeps the pool busy
            futures = {p: pool.submit(scan_prime, *a)
                       for p, a in sorted(zip(primes, args), reverse=True)}
            results = [futures[p].result() for p in primes]
    else:
        results = [scan_prime(*a) for a in args]
    return [row for rows in results for row in rows]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_csv(rows, fh):
    import csv
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_cell(getattr(r, c)) for c in CSV_COLUMNS])


def read_csv(fh):
    import csv
    rd = csv.DictReader(fh)
    if tuple(rd.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {rd.fieldnames}")
    opt = lambda s: int(s) if s != "" else None
    return [ScanRow(int(r["l"]), int(r["subgroup_order"]), r["parity"],
                    opt(r["index"]), opt(r["n_H"]), r["divides_h_minus"] == "true",
                    opt(r["smallest_integer_annihilator"]))
            for r in rd]


def write_json(rows, fh):
    json.dump({"format_version": FORMAT_VERSION,
               "rows": [r.to_json() for r in rows]}, fh, indent=1)
    fh.write("\n")


def read_json(fh):
    data = json.load(fh)
    return [ScanRow(**r) for r in data["rows"]]
