"""The simplex category as data: monotone maps between finite ordinals,
faces, degeneracies, unique epi-mono factorization, surjection enumeration,
and the correspondence between jointly monic surjection pairs and shuffles.

The canonical surjection order used everywhere downstream (block layouts,
serialized block indices) is: target size ascending, and within a fixed
target the value sequences in descending lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import DomainError, ShapeError


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map [source_top] -> [target_top], stored as the
    full sequence of its n+1 values."""

    source_top: int
    target_top: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        n, m = self.source_top, self.target_top
        if n < 0 or m < 0:
            raise ValueError("ordinals must be nonnegative")
        if len(self.values) != n + 1:
            raise ValueError(f"expected {n + 1} values")
        if any(v < 0 or v > m for v in self.values):
            raise ValueError(f"values must lie in [0, {m}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be weakly increasing")

    def __call__(self, k: int) -> int:
        return self.values[k]

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_top + 1))

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)


def identity_map(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def face(n: int, i: int) -> MonotoneMap:
    """The injective map [n-1] -> [n] that misses i."""
    if n < 1:
        raise IndexError("face requires n >= 1")
    if not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for n={n}")
    return MonotoneMap(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def degeneracy(n: int, i: int) -> MonotoneMap:
    """The surjective map [n+1] -> [n] that hits i twice."""
    if n < 0:
        raise IndexError("degeneracy requires n >= 0")
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range for n={n}")
    return MonotoneMap(n + 1, n, tuple(k if k <= i else k - 1 for k in range(n + 2)))


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.target_top != g.source_top:
        raise ShapeError(
            f"cannot compose [{f.source_top}]->[{f.target_top}] with "
            f"[{g.source_top}]->[{g.target_top}]"
        )
    return MonotoneMap(f.source_top, g.target_top, tuple(g.values[v] for v in f.values))


def epi_mono_factorize(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """The unique factorization f = mono o epi through the image ordinal."""
    image = sorted(set(f.values))
    rank = {v: r for r, v in enumerate(image)}
    k = len(image) - 1
    epi = MonotoneMap(f.source_top, k, tuple(rank[v] for v in f.values))
    mono = MonotoneMap(k, f.target_top, tuple(image))
    return mono, epi


def enumerate_surjections(n: int, k: int) -> list[MonotoneMap]:
    """All surjective monotone maps [n] -> [k] in the canonical order
    (descending lexicographic on value sequences); comb(n, k) of them."""
    if k > n or k < 0 or n < 0:
        return []
    maps = []
    for repeats in itertools.combinations(range(n), n - k):
        rep = set(repeats)
        values = [0]
        for j in range(n):
            values.append(values[-1] if j in rep else values[-1] + 1)
        maps.append(MonotoneMap(n, k, tuple(values)))
    maps.sort(key=lambda f: f.values, reverse=True)
    return maps


def degeneracy_set(f: MonotoneMap) -> tuple[int, ...]:
    """The positions j with f(j) = f(j+1); determines a surjection uniquely."""
    if not f.is_surjective:
        raise DomainError("degeneracy_set needs a surjective map")
    return tuple(
        j for j in range(f.source_top) if f.values[j] == f.values[j + 1]
    )


def surjection_with_degeneracy_set(n: int, repeats: tuple[int, ...]) -> MonotoneMap:
    """The surjection [n] -> [n - len(repeats)] whose degeneracy set is given."""
    rep = set(repeats)
    values = [0]
    for j in range(n):
        values.append(values[-1] if j in rep else values[-1] + 1)
    return MonotoneMap(n, n - len(rep), tuple(values))


def enumerate_jointly_monic_pairs(
    n: int, xtop: int, ytop: int
) -> list[tuple[MonotoneMap, MonotoneMap]]:
    """Pairs of surjections (f: [n]->>[k], g: [n]->>[l]) that are jointly
    monic (disjoint degeneracy sets), with k <= xtop and l <= ytop, ordered
    f-major then g-minor in the canonical surjection order."""
    pairs = []
    for k in range(min(n, xtop) + 1):
        for f in enumerate_surjections(n, k):
            fset = set(degeneracy_set(f))
            for l in range(min(n, ytop) + 1):
                for g in enumerate_surjections(n, l):
                    if fset.isdisjoint(degeneracy_set(g)):
                        pairs.append((f, g))
    return pairs


@dataclass(frozen=True)
class Shuffle:
    """A (p,q)-shuffle: a permutation of {1..p+q} increasing on the first p
    and on the last q positions, stored as the value sequence."""

    p: int
    q: int
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.p + self.q
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError("perm must be a permutation of 1..p+q")
        if any(
            self.perm[i] > self.perm[i + 1]
            for i in range(self.p - 1)
        ) or any(
            self.perm[self.p + i] > self.perm[self.p + i + 1]
            for i in range(self.q - 1)
        ):
            raise ValueError("perm must increase on both blocks")

    def sign(self) -> int:
        """(-1) to the number of cross-block inversions."""
        inversions = sum(
            1
            for a in self.perm[: self.p]
            for b in self.perm[self.p :]
            if a > b
        )
        return -1 if inversions % 2 else 1


def shuffle_sign(nu: Shuffle) -> int:
    return nu.sign()


def shuffle_count(p: int, q: int) -> int:
    return comb(p + q, p)


def enumerate_shuffles(p: int, q: int) -> list[Shuffle]:
    """All (p,q)-shuffles, ordered by the first block's value set."""
    out = []
    universe = range(1, p + q + 1)
    for first in itertools.combinations(universe, p):
        rest = tuple(sorted(set(universe) - set(first)))
        out.append(Shuffle(p, q, first + rest))
    return out


def shuffle_of_pair(f: MonotoneMap, g: MonotoneMap) -> Shuffle:
    """The shuffle corresponding to a jointly monic pair of surjections with
    complementary targets (k + l = n): position a <= k goes to i_a + 1 where
    the i's are g's degeneracy set, position k + b goes to j_b + 1 where the
    j's are f's."""
    n = f.source_top
    if g.source_top != n:
        raise ShapeError("pair must share a source")
    k, l = f.target_top, g.target_top
    if k + l != n:
        raise DomainError(f"targets {k} + {l} must sum to the source {n}")
    f_set = degeneracy_set(f)
    g_set = degeneracy_set(g)
    if set(f_set) & set(g_set):
        raise DomainError("pair is not jointly monic")
    perm = tuple(i + 1 for i in g_set) + tuple(j + 1 for j in f_set)
    return Shuffle(k, l, perm)


def pair_of_shuffle(nu: Shuffle) -> tuple[MonotoneMap, MonotoneMap]:
    """Inverse of shuffle_of_pair: surjections out of [p+q] whose degeneracy
    sets are the two blocks of the shuffle, shifted down by one."""
    n = nu.p + nu.q
    f = surjection_with_degeneracy_set(
        n, tuple(v - 1 for v in nu.perm[nu.p :])
    )
    g = surjection_with_degeneracy_set(
        n, tuple(v - 1 for v in nu.perm[: nu.p])
    )
    return f, g


def monotone_to_json(f: MonotoneMap) -> dict:
    return {
        "source": f.source_top,
        "target": f.target_top,
        "values": list(f.values),
    }


def monotone_from_json(obj, path: str = "map") -> MonotoneMap:
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: expected an object")
    for key in ("source", "target", "values"):
        if key not in obj:
            raise ValueError(f"{path}.{key}: missing")
    values = obj["values"]
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ValueError(f"{path}.values: expected a list of naturals")
    try:
        return MonotoneMap(obj["source"], obj["target"], tuple(values))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: {exc}") from exc
