"""The dihedral group D_n (n odd) in normal form ``r^a x^b`` and its
permutation representation into the symmetric group.

``r`` is the generating reflection ``r_k = (k-1,k+1)(k-2,k+2)...(1,n-2)(n-1,n)``
for ``n = 2k+1``; ``x`` is the rotation ``(1, n, n-1, ..., 2)``.  Products
are written rightmost-first, matching :func:`chartfold.perm.compose`.

Dihedral words (chart slices) use the letters ``r, R, x, X`` where capitals
denote inverses.  As with transposition words, the first letter of a slice
word is applied first, so the word ``[a, b]`` evaluates to ``b * a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import perm
from .perm import Permutation

LETTERS = ("r", "R", "x", "X")
INVERSE_LETTER = {"r": "R", "R": "r", "x": "X", "X": "x"}


def check_parameter(n: int) -> int:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"D_n requires odd n >= 3, got {n!r}")
    if n > perm.MAX_DEGREE:
        raise ValueError(f"n={n} exceeds supported degree {perm.MAX_DEGREE}")
    return n


@dataclass(frozen=True)
class DihedralElement:
    """``r^refl x^rot`` in D_n."""

    n: int
    refl: bool = False
    rot: int = 0

    def __post_init__(self):
        check_parameter(self.n)
        object.__setattr__(self, "refl", bool(self.refl))
        object.__setattr__(self, "rot", self.rot % self.n)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(n)

    @classmethod
    def r(cls, n: int) -> "DihedralElement":
        return cls(n, True, 0)

    @classmethod
    def x(cls, n: int, power: int = 1) -> "DihedralElement":
        return cls(n, False, power)

    @property
    def is_reflection(self) -> bool:
        return self.refl

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_element(self)


def multiply(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    """Group product ``a * b`` in normal form.

    Uses ``x^m r = r x^{-m}``: ``(r^p x^q)(r^s x^t) = r^{p+s} x^{(-1)^s q + t}``.
    """
    if a.n != b.n:
        raise ValueError(f"parameter mismatch: D_{a.n} vs D_{b.n}")
    rot = (-a.rot if b.refl else a.rot) + b.rot
    return DihedralElement(a.n, a.refl != b.refl, rot)


def inverse(a: DihedralElement) -> DihedralElement:
    if a.refl:
        return a
    return DihedralElement(a.n, False, -a.rot)


def power(a: DihedralElement, k: int) -> DihedralElement:
    base = a if k >= 0 else inverse(a)
    result = DihedralElement.identity(a.n)
    for _ in range(abs(k)):
        result = multiply(result, base)
    return result


def elements(n: int) -> list[DihedralElement]:
    check_parameter(n)
    return [DihedralElement(n, refl, rot) for refl in (False, True) for rot in range(n)]


# -- permutation representation ---------------------------------------------


def generating_reflection(n: int) -> Permutation:
    """``r_k`` for ``n = 2k + 1``; it fixes the vertex ``k``."""
    check_parameter(n)
    k = (n - 1) // 2
    pairs = [(k - i, k + i) for i in range(1, k)] + [(n - 1, n)]
    return Permutation.from_cycles(n, pairs)


def generating_rotation(n: int) -> Permutation:
    """``(1, n, n-1, ..., 2)``."""
    check_parameter(n)
    return Permutation.from_cycles(n, [[1] + list(range(n, 1, -1))])


def psi(e: DihedralElement) -> Permutation:
    """Permutation image ``psi(r)^a o psi(x)^b``."""
    result = perm.power(generating_rotation(e.n), e.rot)
    if e.refl:
        result = perm.compose(generating_reflection(e.n), result)
    return result


def fixed_vertex(e: DihedralElement) -> int:
    if not e.refl:
        raise ValueError(f"{e} is not a reflection")
    image = psi(e)
    fixed = [i for i in range(1, e.n + 1) if image(i) == i]
    assert len(fixed) == 1
    return fixed[0]


def reflection_fixing_vertex(n: int, v: int) -> DihedralElement:
    """The reflection written ``[v]``: the unique one whose image fixes ``v``."""
    check_parameter(n)
    if not 1 <= v <= n:
        raise ValueError(f"vertex {v} out of range 1..{n}")
    for rot in range(n):
        e = DihedralElement(n, True, rot)
        if fixed_vertex(e) == v:
            return e
    raise AssertionError("unreachable")


def conjugate_reflection(n: int, j: int) -> DihedralElement:
    """``x^{-j} r x^{j}``."""
    x = DihedralElement.x(n)
    return multiply(multiply(power(x, -j), DihedralElement.r(n)), power(x, j))


def reflection_color(e: DihedralElement) -> int:
    """Inverse of :func:`conjugate_reflection`: the ``j`` (mod n) with
    ``x^{-j} r x^{j} = e``."""
    if not e.refl:
        raise ValueError(f"{e} is not a reflection")
    # x^{-j} r x^{j} = r x^{2j}
    half = pow(2, -1, e.n)
    return (e.rot * half) % e.n


# -- words ------------------------------------------------------------------


def check_dihedral_word(letters: Sequence[str]) -> tuple[str, ...]:
    for a in letters:
        if a not in LETTERS:
            raise ValueError(f"letter {a!r} not in {LETTERS}")
    return tuple(letters)


def letter_element(n: int, a: str) -> DihedralElement:
    return {
        "r": DihedralElement.r(n),
        "R": DihedralElement.r(n),
        "x": DihedralElement.x(n, 1),
        "X": DihedralElement.x(n, -1),
    }[a]


def evaluate(n: int, letters: Sequence[str]) -> DihedralElement:
    """Group element of a slice word, first letter applied first."""
    result = DihedralElement.identity(n)
    for a in check_dihedral_word(letters):
        result = multiply(letter_element(n, a), result)
    return result


def invert_word(letters: Sequence[str]) -> tuple[str, ...]:
    return tuple(INVERSE_LETTER[a] for a in reversed(letters))


def element_word(e: DihedralElement) -> tuple[str, ...]:
    """Shortest-exponent word in the letters for ``e`` (slice order).

    The rotation exponent is taken in ``[-k, k]``.
    """
    k = (e.n - 1) // 2
    b = e.rot if e.rot <= k else e.rot - e.n
    rot = ("x",) * b if b >= 0 else ("X",) * (-b)
    return rot + (("r",) if e.refl else ())


def normal_word(e: DihedralElement) -> tuple[str, ...]:
    """Slice word ``x^b r^a`` with ``0 <= b < n``; evaluates to ``r^a x^b``."""
    return ("x",) * e.rot + (("r",) if e.refl else ())


@lru_cache(maxsize=None)
def reflection_word(n: int) -> tuple[int, ...]:
    """Unreduced transposition word for ``r_k``: concatenated factor words."""
    k = (n - 1) // 2
    pairs = [(k - i, k + i) for i in range(1, k)] + [(n - 1, n)]
    word: list[int] = []
    for a, b in pairs:
        word.extend(list(range(a, b)) + list(range(b - 2, a - 1, -1)))
    return tuple(word)


@lru_cache(maxsize=None)
def letter_psi_word(n: int, a: str, reduced: bool = True) -> tuple[int, ...]:
    """Transposition word representing a single dihedral letter.

    Inverse letters are the reversed words, so a cup ``a a^{-1}`` compiles
    to a nest of transposition cups.
    """
    if a in ("r", "R"):
        base = reflection_word(n)
        if reduced:
            base = perm.reduce_word(n, base)
    else:
        base = tuple(range(1, n))
    if a in ("R", "X"):
        return tuple(reversed(base))
    return base


def psi_word(arg: DihedralElement | Sequence[str], n: int | None = None,
             reduced: bool = False) -> tuple[int, ...]:
    """Transposition word evaluating to ``psi`` of an element or word.

    For a word, the letters' words are concatenated in slice order.  With
    ``reduced`` the result is Coxeter-reduced.
    """
    if isinstance(arg, DihedralElement):
        n = arg.n
        letters: Sequence[str] = ("x",) * arg.rot + (("r",) if arg.refl else ())
    else:
        if n is None:
            raise ValueError("n required for a word")
        letters = check_dihedral_word(arg)
    word: list[int] = []
    for a in letters:
        word.extend(letter_psi_word(n, a, reduced=False))
    if reduced:
        return perm.reduce_word(n, word)
    return tuple(word)


# -- text forms ---------------------------------------------------------------


def format_element(e: DihedralElement) -> str:
    parts = []
    if e.refl:
        parts.append("r")
    if e.rot == 1:
        parts.append("x")
    elif e.rot > 1:
        parts.append(f"x^{e.rot}")
    return " ".join(parts) if parts else "1"


def parse_element(n: int, text: str) -> DihedralElement:
    """Parse ``"r"``, ``"x^3"``, ``"r x^2"``, ``"x^-1 r x"`` or ``"[v]"``."""
    text = text.strip()
    m = re.fullmatch(r"\[(\d+)\]", text)
    if m:
        return reflection_fixing_vertex(n, int(m.group(1)))
    if text in ("1", "id", ""):
        return DihedralElement.identity(n)
    result = DihedralElement.identity(n)
    for tok in re.findall(r"[rx](?:\^-?\d+)?|\S", text.replace("*", " ")):
        m = re.fullmatch(r"([rx])(?:\^(-?\d+))?", tok)
        if not m:
            raise ValueError(f"cannot parse dihedral element {text!r}")
        exp = int(m.group(2)) if m.group(2) else 1
        gen = DihedralElement.r(n) if m.group(1) == "r" else DihedralElement.x(n)
        result = multiply(result, power(gen, exp))
    return result
