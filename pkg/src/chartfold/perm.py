"""Exact arithmetic in the symmetric group and on words of adjacent transpositions.

Conventions used throughout the package:

* ``Permutation`` acts on ``{1..n}``; ``compose(p, q)`` applies ``q`` first
  (function composition, ``p(q(i))``).
* A transposition word ``[j1, j2, ...]`` lists the generators ``t_j = (j, j+1)``
  in application order: ``j1`` acts first.  Hence ``[1, 2, 3, 4]`` evaluates
  to ``t4 t3 t2 t1 = (1 5 4 3 2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_DEGREE = 16


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}`` stored as the tuple of images of ``1..n``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise ValueError("degree must be positive")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a bijection of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ValueError(f"bad transposition ({a} {b}) in degree {n}")
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint-or-not cycles, composed right to left."""
        result = cls.identity(n)
        for cyc in reversed(list(cycles)):
            images = list(range(1, n + 1))
            seen = set()
            for i, a in enumerate(cyc):
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} in degree {n}")
                seen.add(a)
                images[a - 1] = cyc[(i + 1) % len(cyc)]
            result = compose(cls(tuple(images)), result)
        return result

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(a == i for i, a in enumerate(self.images, 1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def inversions(self) -> int:
        im = self.images
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if im[i] > im[j])

    def __str__(self) -> str:
        return format_cycles(self)


def _check_same_degree(*perms: Permutation) -> int:
    degrees = {p.n for p in perms}
    if len(degrees) > 1:
        raise ValueError(f"degree mismatch: {sorted(degrees)}")
    return degrees.pop()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``: apply ``q`` first, then ``p``."""
    _check_same_degree(p, q)
    return Permutation(tuple(p(q(i)) for i in range(1, p.n + 1)))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, a in enumerate(p.images, 1):
        images[a - 1] = i
    return Permutation(tuple(images))


def power(p: Permutation, k: int) -> Permutation:
    base = p if k >= 0 else inverse(p)
    result = Permutation.identity(p.n)
    for _ in range(abs(k)):
        result = compose(base, result)
    return result


def cycle_count(p: Permutation) -> int:
    """Number of cycles, fixed points included."""
    return len(p.cycles(include_fixed=True))


def orbits(generators: Sequence[Permutation], n: int | None = None) -> list[frozenset[int]]:
    """Finest partition of ``{1..n}`` closed under every generator.

    Blocks are sorted by their smallest element.
    """
    if n is None:
        if not generators:
            raise ValueError("degree required when no generators are given")
        n = generators[0].n
    if generators:
        if _check_same_degree(*generators) != n:
            raise ValueError("degree mismatch")
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        for i in range(1, n + 1):
            ra, rb = find(i), find(g(i))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[int, set[int]] = {}
    for i in range(1, n + 1):
        blocks.setdefault(find(i), set()).add(i)
    return [frozenset(b) for _, b in sorted(blocks.items())]


def restrict(p: Permutation, block: Iterable[int]) -> list[tuple[int, ...]]:
    """Cycles (fixed points included) of ``p`` that lie in ``block``."""
    block = set(block)
    return [c for c in p.cycles(include_fixed=True) if c[0] in block]


# -- transposition words ----------------------------------------------------


def check_word(n: int, letters: Sequence[int]) -> tuple[int, ...]:
    if n < 1 or n > MAX_DEGREE:
        raise ValueError(f"degree {n} out of supported range 1..{MAX_DEGREE}")
    for j in letters:
        if not isinstance(j, int) or not 1 <= j <= n - 1:
            raise ValueError(f"letter {j!r} out of range 1..{n - 1}")
    return tuple(letters)


def adjacent(n: int, j: int) -> Permutation:
    return Permutation.transposition(n, j, j + 1)


def evaluate_word(n: int, letters: Sequence[int]) -> Permutation:
    """Product of adjacent transpositions, first letter applied first."""
    check_word(n, letters)
    images = list(range(1, n + 1))
    # images[i] tracks where i+1 ends up; applying t_j swaps values j, j+1
    for j in letters:
        for i, a in enumerate(images):
            if a == j:
                images[i] = j + 1
            elif a == j + 1:
                images[i] = j
    return Permutation(tuple(images))


def is_reduced(n: int, letters: Sequence[int]) -> bool:
    return len(letters) == evaluate_word(n, letters).inversions()


def normal_form(p: Permutation) -> tuple[int, ...]:
    """Canonical reduced word of ``p`` (insertion-sort normal form).

    The word is a concatenation of descending runs ``B_1 B_2 ... B_{n-1}``
    with ``B_k = [k, k-1, ..., k-c_k+1]`` and ``0 <= c_k <= k``.  Its length
    equals the number of inversions of ``p``.
    """
    blocks = _blocks_of(p)
    return tuple(j for k in range(1, p.n) for j in range(k, k - blocks[k], -1))


def _blocks_of(p: Permutation) -> list[int]:
    # Reading the word left to right moves items between positions. After
    # B_1..B_k the first k+1 positions hold their final relative order;
    # c_k is the distance item k+1 travels down.  Recover c_k by peeling.
    n = p.n
    # position of item i after applying the word: the slice word acts on
    # positions, so track the arrangement pos -> item.
    arrangement = [0] * n
    for i in range(1, n + 1):
        arrangement[p(i) - 1] = i
    # arrangement[q] = item that ends at position q+1
    counts = [0] * n
    items = list(arrangement)
    for k in range(n - 1, 0, -1):
        # item k+1 (1-based) must be inserted last among the first k+1 items
        rank = [x for x in items if x <= k + 1]
        pos = rank.index(k + 1)
        counts[k] = k - pos
        items = [x for x in items if x != k + 1]
    return counts


def reduce_word(n: int, letters: Sequence[int]) -> tuple[int, ...]:
    """Coxeter-reduced canonical word evaluating to the same permutation."""
    return normal_form(evaluate_word(n, letters))


# -- text forms -------------------------------------------------------------


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(a) for a in c) + ")" for c in cyc)


def format_compact(p: Permutation) -> str:
    """Cycle notation without separators, e.g. ``(13)(45)``; degree < 10 only."""
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + "".join(str(a) for a in c) + ")" for c in cyc)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(n: int, text: str) -> Permutation:
    """Parse ``"(1 3)(4 5)"``, ``"(1,3)(4,5)"`` or compact ``"(13)(45)"``.

    Cycles are composed right to left, so products of overlapping cycles
    are accepted too.
    """
    text = text.strip()
    if text in ("", "()", "id"):
        return Permutation.identity(n)
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            cyc = [int(tok) for tok in re.split(r"[\s,]+", body) if tok]
        else:
            cyc = [int(ch) for ch in body]
        cycles.append(cyc)
    return Permutation.from_cycles(n, cycles)


def format_word(letters: Sequence[int]) -> str:
    return "[" + ",".join(str(j) for j in letters) + "]"


def parse_word(n: int, text: str) -> tuple[int, ...]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"word must be bracketed: {text!r}")
    body = text[1:-1].strip()
    letters = [int(tok) for tok in re.split(r"[\s,]+", body) if tok] if body else []
    return check_word(n, letters)


def product_text(letters: Sequence[int]) -> str:
    """Write a word as a product of transpositions, rightmost factor first.

    ``[1, 2, 3, 4]`` becomes ``"(45)(34)(23)(12)"``.
    """
    return "".join(f"({j}{j + 1})" for j in reversed(letters))


def parse_product(text: str) -> tuple[int, ...]:
    """Inverse of :func:`product_text` for adjacent transpositions."""
    letters = []
    for body in _CYCLE.findall(text):
        a, b = (int(ch) for ch in body.replace(" ", "").replace(",", ""))
        lo, hi = sorted((a, b))
        if hi != lo + 1:
            raise ValueError(f"({body}) is not an adjacent transposition")
        letters.append(lo)
    return tuple(reversed(letters))
