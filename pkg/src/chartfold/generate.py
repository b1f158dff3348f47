"""Random valid charts for property tests and oracle comparisons."""

from __future__ import annotations

import random
from typing import Sequence

from . import dihedral
from .blocks import dihedral_normalize, normalize
from .chart import (Chart, Event, black, branch, cap, crossing, cup, fire, is_relator_pair,
                    make_alphabet, relator, white)


def _local_options(alpha, s: tuple) -> list[Event]:
    """Every Crossing/White/Cap/Relator event that fires on ``s``."""
    opts = []
    for i in range(len(s) - 1):
        a, b = s[i], s[i + 1]
        if b == alpha.inv(a):
            opts.append(cap(i + 1, a))
        if alpha.name == "perm":
            if abs(a - b) > 1:
                opts.append(crossing(i + 1, a, b))
            if i + 2 < len(s) and s[i + 2] == a and abs(a - b) == 1:
                opts.append(white(i + 1, a, b))
        else:
            if a.lower() == "r" and b.lower() == "x":
                flip = dihedral.INVERSE_LETTER[b]
                if is_relator_pair(alpha.n, (a, b), (flip, a)):
                    opts.append(relator(i + 1, (a, b), (flip, a)))
    if alpha.name == "dihedral":
        for i, a in enumerate(s):
            if a in "RX":
                after = ("r",) if a == "R" else ("x",) * (alpha.n - 1)
                opts.append(relator(i + 1, (a,), after))
    return opts


def random_word(rng: random.Random, alpha, length: int) -> tuple:
    if alpha.name == "perm":
        return tuple(rng.randint(1, alpha.n - 1) for _ in range(length))
    return tuple(rng.choice(dihedral.LETTERS) for _ in range(length))


def random_chart(rng: random.Random, n: int, alphabet: str = "perm", steps: int = 12,
                 max_width: int = 8, branch_weight: float = 0.3) -> Chart:
    """A random closed chart: a random walk on slices, then a closing block."""
    alpha = make_alphabet(alphabet, n)
    s: tuple = ()
    events: list[Event] = []
    for _ in range(steps):
        opts = _local_options(alpha, s)
        roll = rng.random()
        if roll < branch_weight and len(s) < max_width:
            pos = rng.randint(1, len(s) + 1)
            if rng.random() < 0.6:
                ev = black(pos, random_word(rng, alpha, 1)[0])
            else:
                ev = branch(pos, random_word(rng, alpha, rng.randint(2, 4)))
        elif roll < branch_weight + 0.25 and len(s) + 2 <= max_width:
            ev = cup(rng.randint(1, len(s) + 1), random_word(rng, alpha, 1)[0])
        elif opts:
            ev = rng.choice(opts)
        else:
            continue
        if len(fire(alpha, ev, s)) > max_width + 4:
            continue
        events.append(ev)
        s = fire(alpha, ev, s)
    events.extend(_closing(rng, alpha, s))
    return Chart(n, alphabet, tuple(events))


def _closing(rng: random.Random, alpha, s: tuple) -> list[Event]:
    if not s:
        return []
    mode = rng.randrange(3)
    if mode == 0:
        return [branch(1, s, "-")] if len(s) > 1 else [black(1, s[0], "-")]
    if mode == 1:
        return [black(i, s[i - 1], "-") for i in range(len(s), 0, -1)]
    norm = normalize if alpha.name == "perm" else dihedral_normalize
    evs, nf = norm(alpha.n, s)
    tail = [black(i, nf[i - 1], "-") for i in range(len(nf), 0, -1)]
    return list(evs) + tail


def random_charts(seed: int, count: int, degrees: Sequence[int] = (2, 3, 4, 5, 6),
                  alphabet: str = "perm", **kw) -> list[Chart]:
    rng = random.Random(seed)
    return [random_chart(rng, rng.choice(list(degrees)), alphabet, rng.randint(0, 16), **kw)
            for _ in range(count)]
