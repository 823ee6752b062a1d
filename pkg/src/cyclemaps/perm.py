"""Permutations of {1, ..., n}, their cycle structure, and cyclic shifts.

All public indices are 1-based: a ``Permutation`` with ``images == (3, 1, 2)``
sends 1 to 3, 2 to 1 and 3 to 2.  Cycle decompositions are canonical: every
cycle is rotated to start at its smallest element and cycles are sorted by
that element, so equal permutations always decompose identically.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n} stored as its tuple of images.

    >>> s = Permutation((3, 1, 2))
    >>> s(1), s(2), s(3)
    (3, 1, 2)
    >>> s.inverse()(3)
    1
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise ParameterError("permutation needs degree >= 1 (got empty images)")
        if any(not isinstance(i, int) for i in images):
            raise ParameterError(f"permutation images must be integers (got {images!r})")
        if sorted(images) != list(range(1, n + 1)):
            raise ParameterError(
                f"images {images!r} are not a bijection of {{1, ..., {n}}}"
            )

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ParameterError(f"index {i} outside {{1, ..., {self.n}}}")
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: ``(self.compose(other))(i) == self(other(i))``."""
        if other.n != self.n:
            raise ParameterError(
                f"cannot compose permutations of degrees {self.n} and {other.n}"
            )
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles of a permutation, in canonical order.

    ``cycles`` includes fixed points as 1-cycles, so the lengths always sum
    to ``n``.
    """

    n: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def l_min(self) -> int:
        return min(self.lengths)

    @property
    def l_max(self) -> int:
        return max(self.lengths)


def identity(n: int) -> Permutation:
    """The identity permutation of {1, ..., n}."""
    if n < 1:
        raise ParameterError(f"degree must be >= 1 (got n={n})")
    return Permutation(tuple(range(1, n + 1)))


def tau(n: int, k: int) -> Permutation:
    """The cyclic shift i -> i + k reduced mod n into {1, ..., n}.

    >>> tau(3, 2).images
    (3, 1, 2)
    >>> tau(6, 4).images
    (5, 6, 1, 2, 3, 4)
    """
    if n < 1:
        raise ParameterError(f"degree must be >= 1 (got n={n})")
    if not 1 <= k <= n:
        raise ParameterError(f"shift k must satisfy 1 <= k <= n (got k={k}, n={n})")
    return Permutation(tuple((i + k - 1) % n + 1 for i in range(1, n + 1)))


def cycle_decompose(sigma: Permutation) -> CycleDecomposition:
    """Canonical disjoint-cycle decomposition.

    >>> cycle_decompose(tau(3, 2)).cycles
    ((1, 3, 2),)
    >>> cycle_decompose(tau(6, 3)).cycles
    ((1, 4), (2, 5), (3, 6))
    """
    seen = [False] * sigma.n
    cycles: list[tuple[int, ...]] = []
    for start in range(1, sigma.n + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        j = sigma(start)
        while j != start:
            cycle.append(j)
            seen[j - 1] = True
            j = sigma(j)
        cycles.append(tuple(cycle))
    return CycleDecomposition(n=sigma.n, cycles=tuple(cycles))


def from_cycles(n: int, cycles: tuple[tuple[int, ...], ...]) -> Permutation:
    """Rebuild a permutation of {1, ..., n} from disjoint cycles."""
    images = [0] * n
    for cycle in cycles:
        for pos, i in enumerate(cycle):
            if not 1 <= i <= n:
                raise ParameterError(f"cycle entry {i} outside {{1, ..., {n}}}")
            if images[i - 1]:
                raise ParameterError(f"cycles are not disjoint at element {i}")
            images[i - 1] = cycle[(pos + 1) % len(cycle)]
    if 0 in images:
        missing = images.index(0) + 1
        raise ParameterError(f"element {missing} missing from the cycle list")
    return Permutation(tuple(images))


def min_max_cycle_length(sigma: Permutation) -> tuple[int, int]:
    """Shortest and longest cycle length of ``sigma``."""
    dec = cycle_decompose(sigma)
    return dec.l_min, dec.l_max


def is_involution(sigma: Permutation) -> bool:
    """True when sigma composed with itself is the identity."""
    return all(sigma(sigma(i)) == i for i in range(1, sigma.n + 1))


def is_single_cycle(sigma: Permutation) -> bool:
    """True when sigma is one cycle through all n points."""
    return len(cycle_decompose(sigma).cycles) == 1


def fixed_points(sigma: Permutation) -> frozenset[int]:
    """The set {i : sigma(i) = i}."""
    return frozenset(i for i in range(1, sigma.n + 1) if sigma(i) == i)


def parse_permutation(text: str) -> Permutation:
    """Parse the textual permutation formats used at tool boundaries.

    Three formats are accepted:

    * ``"tau:n:k"``    -- the cyclic shift ``tau(n, k)``
    * ``"id:n"``       -- the identity of degree n
    * ``"images:3,1,2"`` -- explicit 1-based image list

    >>> parse_permutation("tau:3:2").images
    (3, 1, 2)
    >>> parse_permutation("images:2,1,4,3").images
    (2, 1, 4, 3)
    """
    if not isinstance(text, str):
        raise ParameterError(f"sigma must be a string (got {type(text).__name__})")
    head, _, rest = text.partition(":")
    try:
        if head == "tau":
            n_text, _, k_text = rest.partition(":")
            return tau(int(n_text), int(k_text))
        if head == "id":
            return identity(int(rest))
        if head == "images":
            return Permutation(tuple(int(part) for part in rest.split(",")))
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"sigma {text!r} has a non-integer component") from exc
    raise ParameterError(
        f"unrecognized sigma format {text!r}: expected 'tau:n:k', 'id:n' or 'images:i1,i2,...'"
    )


def format_permutation(sigma: Permutation) -> str:
    """Canonical textual form, round-trippable through parse_permutation."""
    return "images:" + ",".join(str(i) for i in sigma.images)
