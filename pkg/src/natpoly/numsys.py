"""Primes, exponent vectors and the subsets of naturals that get a polytope."""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np

from .arith import affine_rank

SIEVE_LIMIT = 10_000

KINDS = (
    "naturals",
    "one-and-primes",
    "one-evens-odd-primes",
    "two-and-odds",
    "squares",
    "cubes",
    "explicit-list",
)


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


@lru_cache(maxsize=None)
def _sieve(limit: int) -> tuple[int, ...]:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return tuple(int(p) for p in np.flatnonzero(is_p))


def _check(N: int) -> None:
    if N > SIEVE_LIMIT:
        raise DomainError(f"{N} exceeds the sieve bound {SIEVE_LIMIT}")


def primes_up_to(N: int) -> list[int]:
    _check(N)
    primes = _sieve(SIEVE_LIMIT)
    return list(primes[: bisect.bisect_right(primes, N)])


def prime_count(N: int) -> int:
    """pi(N), the number of primes <= N."""
    _check(N)
    return bisect.bisect_right(_sieve(SIEVE_LIMIT), N)


def is_prime(M: int) -> bool:
    _check(M)
    primes = _sieve(SIEVE_LIMIT)
    i = bisect.bisect_left(primes, M)
    return i < len(primes) and primes[i] == M


def factorize(M: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}; empty for 1."""
    if M < 1:
        raise DomainError(f"cannot factor {M}")
    return dict(_factor_items(M))


@lru_cache(maxsize=1 << 16)
def _factor_items(M: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in _sieve(SIEVE_LIMIT):
        if p * p > M:
            break
        while M % p == 0:
            out[p] = out.get(p, 0) + 1
            M //= p
    if M > 1:
        if M > SIEVE_LIMIT**2:
            raise DomainError(f"cannot certify cofactor {M} with sieve bound {SIEVE_LIMIT}")
        out[M] = out.get(M, 0) + 1
    return tuple(out.items())


def exponent_vector(M: int, n: int, basis: list[int] | None = None) -> tuple[int, ...]:
    """Exponents of ``M`` over the first ``n`` primes (or over ``basis``)."""
    if basis is None:
        basis = primes_up_to(SIEVE_LIMIT)[:n]
    index = {p: i for i, p in enumerate(basis)}
    coords = [0] * len(basis)
    for p, e in factorize(M).items():
        if p not in index:
            raise DomainError(f"{M} has prime factor {p} outside the first {len(basis)} primes")
        coords[index[p]] = e
    return tuple(coords)


@dataclass(frozen=True)
class SubsetSpec:
    kind: str = "naturals"
    members: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown subset kind {self.kind!r}")
        if self.kind == "explicit-list":
            if self.members is None:
                raise DomainError("explicit-list subset needs members")
            m = tuple(self.members)
            if any(x < 1 for x in m):
                raise DomainError("explicit-list members must be >= 1")
            if len(set(m)) != len(m):
                raise DomainError("explicit-list members must be distinct")
            object.__setattr__(self, "members", tuple(sorted(m)))

    @classmethod
    def from_file(cls, path: str | Path) -> "SubsetSpec":
        vals = [int(line) for line in Path(path).read_text().split() if line.strip()]
        return cls("explicit-list", tuple(vals))

    def contains(self, M: int) -> bool:
        k = self.kind
        if k == "naturals":
            return M >= 1
        if k == "one-and-primes":
            return M == 1 or is_prime(M)
        if k == "one-evens-odd-primes":
            return M == 1 or M % 2 == 0 or is_prime(M)
        if k == "two-and-odds":
            return M == 2 or M % 2 == 1
        if k == "squares":
            return _is_power(M, 2)
        if k == "cubes":
            return _is_power(M, 3)
        return M in self.members

    def members_upto(self, N: int) -> list[int]:
        if self.kind == "explicit-list":
            return [m for m in self.members if m <= N]
        if self.kind == "squares":
            return [k * k for k in range(1, _iroot(N, 2) + 1)]
        if self.kind == "cubes":
            return [k**3 for k in range(1, _iroot(N, 3) + 1)]
        return [M for M in range(1, N + 1) if self.contains(M)]


def _iroot(N: int, k: int) -> int:
    r = int(round(N ** (1 / k)))
    while r**k > N:
        r -= 1
    while (r + 1) ** k <= N:
        r += 1
    return r


def _is_power(M: int, k: int) -> bool:
    return M >= 1 and _iroot(M, k) ** k == M


@dataclass
class PointCloud:
    members: list[int]
    points: list[tuple[int, ...]]
    basis: list[int] = field(default_factory=list)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.members)


def support_primes(members: Iterable[int]) -> list[int]:
    """Sorted primes dividing at least one of ``members``."""
    ps: set[int] = set()
    for M in members:
        ps.update(factorize(M))
    return sorted(ps)


def member_points(subset: SubsetSpec | str, N: int) -> PointCloud:
    """Lattice points of the subset members up to ``N``.

    The ambient coordinates are the primes dividing some member; for the
    naturals that is every prime <= N. Primes past the sieve bound are rejected.
    """
    if isinstance(subset, str):
        subset = SubsetSpec(subset)
    if N < 1:
        raise DomainError("N must be >= 1")
    members = subset.members_upto(N)
    basis = support_primes(members)
    if basis and basis[-1] > SIEVE_LIMIT:
        raise DomainError(f"prime {basis[-1]} is beyond the sieve bound {SIEVE_LIMIT}")
    index = {p: i for i, p in enumerate(basis)}
    points = []
    for M in members:
        coords = [0] * len(basis)
        for p, e in _factor_items(M):
            coords[index[p]] = e
        points.append(tuple(coords))
    if subset.kind == "explicit-list" and len(points) > 1:
        if affine_rank(points) < len(basis):
            raise DomainError(f"members {members} do not span their {len(basis)} primes")
    return PointCloud(members, points, basis)
