"""Breadth-first enumeration of Cayley balls of BS(1,k) over {a, t}.

The oracle is the ground truth for everything else in the package: it
records exact sphere sizes and, for every conjugacy class met inside the
ball, the first radius at which a member appears.  That radius is the
class length because the ball of radius n holds every element of length
at most n.

Neighbours of an element on sphere n lie on spheres n-1, n or n+1, so
only three spheres are ever held in memory.
"""
from __future__ import annotations

import hashlib
import logging
import os
from dataclasses import dataclass, field
from itertools import accumulate
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .conjugacy import ConjKey, raw_key

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CACHE_MAGIC = "bsgrowth-sphere-table"
DEFAULT_MAX_ELEMENTS = 6_000_000

Triple = Tuple[int, int, int]


class OracleResourceError(RuntimeError):
    """The ball outgrew the element budget before reaching the target radius."""

    def __init__(self, k: int, target: int, reached: int, elements: int):
        self.k, self.target, self.reached, self.elements = k, target, reached, elements
        super().__init__(
            f"BS(1,{k}) ball: element budget exhausted after completing radius "
            f"{reached} of {target} ({elements} elements held)"
        )


class CacheError(ValueError):
    """A cache file is corrupt, from another format version, or for other (k, N)."""


@dataclass(frozen=True)
class SphereTable:
    k: int
    radius: int
    sphere_sizes: Tuple[int, ...]
    class_first_seen: Dict[ConjKey, int] = field(compare=True, repr=False)

    def ball_sizes(self) -> List[int]:
        return list(accumulate(self.sphere_sizes))

    def conjugacy_growth(self) -> List[int]:
        """Strict counts c(0..radius)."""
        counts = [0] * (self.radius + 1)
        for n in self.class_first_seen.values():
            counts[n] += 1
        return counts

    def split_growth(self) -> Tuple[List[int], List[int]]:
        """Strict counts for classes with ``m == 0`` and with ``m != 0``."""
        abelian = [0] * (self.radius + 1)
        other = [0] * (self.radius + 1)
        for key, n in self.class_first_seen.items():
            (abelian if key.m == 0 else other)[n] += 1
        return abelian, other

    def truncate(self, radius: int) -> "SphereTable":
        if radius > self.radius:
            raise ValueError(f"table only reaches radius {self.radius}")
        return SphereTable(
            self.k,
            radius,
            self.sphere_sizes[: radius + 1],
            {c: n for c, n in self.class_first_seen.items() if n <= radius},
        )


def _times_generator(g: Triple, s: int, k: int) -> Triple:
    """``g * a^s`` for ``s = +-1`` on raw ``(num, exp, m)`` triples."""
    p, e, m = g
    if m + e >= 0:
        p += s * k ** (m + e)
    else:
        p = p * k ** (-m - e) + s
        e = -m
    if p == 0:
        return (0, 0, m)
    while e > 0 and p % k == 0:
        p //= k
        e -= 1
    return (p, e, m)


def _neighbours(g, k):
    p, e, m = g
    yield _times_generator(g, 1, k)
    yield _times_generator(g, -1, k)
    yield (p, e, m + 1)
    yield (p, e, m - 1)


def sphere_elements(k: int, N: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Iterator[Set[Triple]]:
    """Yield the spheres ``0..N`` as sets of raw ``(num, exp, m)`` triples.

    Only two consecutive spheres are held at a time; the budget counts
    those plus the sphere being built.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if N < 0:
        raise ValueError("radius must be non-negative")
    previous: Set[Triple] = set()
    current: Set[Triple] = {(0, 0, 0)}
    yield current
    for n in range(1, N + 1):
        nxt = set()
        for g in current:
            for h in _neighbours(g, k):
                if h not in current and h not in previous:
                    nxt.add(h)
        held = len(previous) + len(current) + len(nxt)
        if held > max_elements:
            raise OracleResourceError(k, N, n - 1, held)
        log.debug("BS(1,%d) sphere %d: %d elements", k, n, len(nxt))
        yield nxt
        previous, current = current, nxt


def bfs_ball(k: int, N: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> SphereTable:
    sizes = []
    first: Dict[Tuple[int, int], int] = {}
    for n, sphere in enumerate(sphere_elements(k, N, max_elements)):
        sizes.append(len(sphere))
        for p, e, m in sphere:
            key = raw_key(p, e, m, k)
            if key not in first:
                first[key] = n
    return SphereTable(k, N, tuple(sizes), {ConjKey(*key): n for key, n in first.items()})


def conjugacy_growth_strict(k: int, N: int, **kwargs) -> List[int]:
    return bfs_ball(k, N, **kwargs).conjugacy_growth()


def conjugacy_growth_cumulative(k: int, N: int, **kwargs) -> List[int]:
    return list(accumulate(conjugacy_growth_strict(k, N, **kwargs)))


# ---------------------------------------------------------------------------
# cache
#
# Text format, one record per line:
#
#   bsgrowth-sphere-table
#   version 1
#   k <k>
#   radius <N>
#   spheres <s0> <s1> ... <sN>
#   classes <count>
#   <m> <value> <first_seen>          (count lines, sorted by key)
#   sha256 <hex digest of every preceding byte>


def _serialize(table: SphereTable) -> str:
    lines = [
        CACHE_MAGIC,
        f"version {CACHE_VERSION}",
        f"k {table.k}",
        f"radius {table.radius}",
        "spheres " + " ".join(map(str, table.sphere_sizes)),
        f"classes {len(table.class_first_seen)}",
    ]
    for key in sorted(table.class_first_seen):
        lines.append(f"{key.m} {key.value} {table.class_first_seen[key]}")
    body = "\n".join(lines) + "\n"
    return body + f"sha256 {hashlib.sha256(body.encode()).hexdigest()}\n"


def save_cache(table: SphereTable, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(_serialize(table))
    os.replace(tmp, path)
    return path


def _field(line: str, name: str) -> str:
    head, _, rest = line.partition(" ")
    if head != name:
        raise CacheError(f"expected '{name}' record, found {line[:40]!r}")
    return rest


def load_cache(path, k: Optional[int] = None, radius: Optional[int] = None) -> SphereTable:
    """Read a table; ``k`` / ``radius``, when given, must match the file."""
    text = Path(path).read_text()
    body, sep, trailer = text.rpartition("sha256 ")
    if not sep or not body.endswith("\n"):
        raise CacheError(f"{path}: missing checksum (truncated file?)")
    if hashlib.sha256(body.encode()).hexdigest() != trailer.strip():
        raise CacheError(f"{path}: checksum mismatch")
    lines = body.splitlines()
    try:
        if lines[0] != CACHE_MAGIC:
            raise CacheError(f"{path}: not a sphere-table cache")
        version = int(_field(lines[1], "version"))
        if version != CACHE_VERSION:
            raise CacheError(f"{path}: format version {version}, expected {CACHE_VERSION}")
        file_k = int(_field(lines[2], "k"))
        file_radius = int(_field(lines[3], "radius"))
        spheres = tuple(int(s) for s in _field(lines[4], "spheres").split())
        count = int(_field(lines[5], "classes"))
        first = {}
        for line in lines[6 : 6 + count]:
            m, value, n = map(int, line.split())
            first[ConjKey(m, value)] = n
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CacheError):
            raise
        raise CacheError(f"{path}: malformed record ({exc})") from exc
    if len(first) != count or len(lines) != 6 + count or len(spheres) != file_radius + 1:
        raise CacheError(f"{path}: record counts do not match header")
    if k is not None and file_k != k:
        raise CacheError(f"{path}: cache is for k={file_k}, requested k={k}")
    if radius is not None and file_radius != radius:
        raise CacheError(f"{path}: cache has radius {file_radius}, requested {radius}")
    return SphereTable(file_k, file_radius, spheres, first)


def cache_path(cache_dir, k: int, N: int) -> Path:
    return Path(cache_dir) / f"bs1_{k}_r{N}_v{CACHE_VERSION}.txt"


def cached_ball(k: int, N: int, cache_dir=None, **kwargs) -> SphereTable:
    """``bfs_ball`` backed by a cache directory.

    A cached table for the same ``k`` and a radius of at least ``N`` is
    reused (truncated if larger).  Corrupt cache files raise
    :class:`CacheError`; they are never silently replaced.
    """
    if cache_dir is None:
        return bfs_ball(k, N, **kwargs)
    cache_dir = Path(cache_dir)
    exact = cache_path(cache_dir, k, N)
    if exact.exists():
        return load_cache(exact, k=k, radius=N)
    larger = []
    for candidate in cache_dir.glob(f"bs1_{k}_r*_v{CACHE_VERSION}.txt"):
        try:
            r = int(candidate.stem.split("_")[2][1:])
        except (IndexError, ValueError):
            continue
        if r > N:
            larger.append((r, candidate))
    if larger:
        r, candidate = min(larger)
        return load_cache(candidate, k=k, radius=r).truncate(N)
    table = bfs_ball(k, N, **kwargs)
    save_cache(table, exact)
    return table
