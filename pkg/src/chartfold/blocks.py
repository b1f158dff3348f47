"""Event blocks that rewrite one slice word into another.

A *fragment* is an open chart: it starts at a source word and ends at a
target word.  :func:`normalize` turns any transposition word into its
insertion-sort normal form using only Crossing, White and Cap events, so two
words with equal evaluation are joined by ``normalize(u)`` followed by the
reverse of ``normalize(v)``.  The dihedral version does the same with
relator vertices and caps.
"""

from __future__ import annotations

from typing import Sequence

from . import dihedral, perm
from .chart import Chart, ChartError, Event, cap, crossing, relator, white


def invert_events(events: Sequence[Event]) -> tuple[Event, ...]:
    """Events undoing ``events``: reversed order, each inverted."""
    return tuple(ev.inverse() for ev in reversed(events))


def shift_events(events: Sequence[Event], delta: int) -> tuple[Event, ...]:
    return tuple(ev.shifted(delta) for ev in events)


def invert_fragment(c: Chart) -> Chart:
    return Chart(c.degree, c.alphabet, invert_events(c.events), c.target, c.source)


# -- permutation words ----------------------------------------------------------


def _insert_letter(blocks: list[list[int]], s: int, out: list[Event], base: int) -> None:
    # The slice holds base letters, then B_1..B_{n-1}, then the new letter s.
    # Walk s leftward block by block; ``at`` is its 1-based slice position.
    at = base + sum(len(b) for b in blocks) + 1
    for k in range(len(blocks) - 1, 0, -1):
        blk = blocks[k]
        start = at - len(blk)  # position of the block's first letter
        m = blk[-1] if blk else k + 1
        if s < m - 1:
            for i in range(len(blk) - 1, -1, -1):
                out.append(crossing(start + i, blk[i], s))
            at = start
            continue
        if s == m - 1:
            blk.append(s)
            return
        if s == m:
            out.append(cap(at - 1, s))
            blk.pop()
            return
        # m < s <= k: the block reads k..s, s-1..m; B_k s = (s-1) B_k
        i_s = blk.index(s)
        for i in range(len(blk) - 1, i_s + 1, -1):
            out.append(crossing(start + i, blk[i], s))
        out.append(white(start + i_s, s, s - 1))
        s -= 1
        for i in range(i_s - 1, -1, -1):
            out.append(crossing(start + i, blk[i], s))
        at = start
    raise AssertionError("letter fell through the normal form")


def normalize(n: int, word: Sequence[int], base: int = 0) -> tuple[tuple[Event, ...], tuple[int, ...]]:
    """Events rewriting ``word`` into :func:`perm.normal_form` of its value.

    ``base`` letters are assumed to sit below the word; event positions are
    shifted accordingly.  Returns ``(events, normal_word)``.
    """
    perm.check_word(n, word)
    blocks: list[list[int]] = [[] for _ in range(n)]
    out: list[Event] = []
    for s in word:
        _insert_letter(blocks, s, out, base)
    nf = tuple(j for b in blocks[1:] for j in b)
    assert nf == perm.reduce_word(n, word)
    return tuple(out), nf


def normalize_fragment(n: int, word: Sequence[int]) -> Chart:
    events, nf = normalize(n, word)
    return Chart(n, "perm", events, tuple(word), nf)


# -- dihedral words -------------------------------------------------------------


def dihedral_normalize(n: int, word: Sequence[str], base: int = 0) -> tuple[tuple[Event, ...], tuple[str, ...]]:
    """Relator and Cap events rewriting ``word`` into ``x^b r^a`` (slice order)."""
    dihedral.check_parameter(n)
    dihedral.check_dihedral_word(word)
    b, a = 0, 0
    out: list[Event] = []
    for letter in word:
        at = base + b + a + 1  # position of the incoming letter
        if letter in ("R", "r"):
            if letter == "R":
                out.append(relator(at, ("R",), ("r",)))
            if a:
                out.append(relator(at - 1, ("r", "r"), ()))
                a = 0
            else:
                a = 1
            continue
        if a:
            flip = "X" if letter == "x" else "x"
            out.append(relator(at - 1, ("r", letter), (flip, "r")))
            letter = flip
            at -= 1
        if letter == "X":
            if b:
                out.append(cap(at - 1, "x"))
                b -= 1
            else:
                out.append(relator(at, ("X",), ("x",) * (n - 1)))
                b = n - 1
        else:
            b += 1
            if b == n:
                out.append(relator(at - n + 1, ("x",) * n, ()))
                b = 0
    nf = ("x",) * b + ("r",) * a
    assert nf == dihedral.normal_word(dihedral.evaluate(n, word))
    return tuple(out), nf


# -- generic ---------------------------------------------------------------------


def normalize_any(alphabet: str, n: int, word: Sequence, base: int = 0):
    if alphabet == "perm":
        return normalize(n, word, base)
    return dihedral_normalize(n, word, base)


def rewrite_events(alphabet: str, n: int, u: Sequence, v: Sequence, base: int = 0) -> tuple[Event, ...]:
    """Invariant-preserving events turning slice word ``u`` into ``v``.

    Raises ChartError when the words evaluate differently.
    """
    eu, nu = normalize_any(alphabet, n, u, base)
    ev, nv = normalize_any(alphabet, n, v, base)
    if nu != nv:
        raise ChartError(f"{list(u)} and {list(v)} evaluate differently")
    return eu + invert_events(ev)


def rewrite_block(alphabet: str, n: int, u: Sequence, v: Sequence) -> Chart:
    return Chart(n, alphabet, rewrite_events(alphabet, n, u, v), tuple(u), tuple(v))


def trivializing_events(alphabet: str, n: int, word: Sequence, base: int = 0) -> tuple[Event, ...]:
    """Events deleting a word that evaluates to the identity."""
    return rewrite_events(alphabet, n, word, (), base)
