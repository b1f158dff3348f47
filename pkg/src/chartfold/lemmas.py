"""Machine-checked certificates for the invertibility lemmas and the relator blocks.

A certificate is a start chart, a list of moves and the chart they must
reach.  The identity certificates begin at a chart with no events and
create the events of a block, together with their inverses, pair by pair
from the outside in; the middle slice of the result is the block's far
boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import perm
from .blocks import invert_events, rewrite_events
from .chart import Chart, Event, chart_from_json, chart_to_json, require_valid, slices, validate
from .moves import (MoveInstance, dihedral_presentation, moves_from_json, moves_to_json, pair_create,
                    psi_letter_map, relator_block, verify_sequence)

DATA = Path(__file__).with_name("data")
LEMMA_DIR = DATA / "lemmas"
RELATOR_DIR = DATA / "relators"

# t4 t3 t2 t1 three times, as a slice word: the first letter acts first
LEMMA1_BOUNDARY = perm.parse_product("(45)(34)(23)(12)" * 3)
LEMMA1_CENTER_TEXT = "(12)(23)(34)(45)(12)(23)(34)(45)"
LEMMA1_CENTER = perm.parse_product(LEMMA1_CENTER_TEXT)

EXAMPLE_LINES = (
    "(45)(12)(23)(12)(45)(34)(23)(12)(45)(12)(23)(12)(12)(23)(34)(45)",
    "(12)(23)(12)(45)(45)(34)(23)(45)(12)(12)(34)(45)",
    "(12)(23)(12)(34)(23)(45)(34)(45)",
    "(23)(12)(23)(34)(23)(34)(45)(34)",
    "(23)(12)(34)(23)(34)(34)(45)(34)",
    "(23)(12)(34)(23)(45)(34)",
)


@dataclass
class Certificate:
    name: str
    start: Chart
    moves: list[MoveInstance]
    end: Chart

    def check(self) -> tuple[bool, str]:
        res = verify_sequence(self.start, self.moves)
        if not res.ok:
            return False, f"move {res.index}: {res.reason}"
        if res.chart != self.end:
            return False, "the moves end at a different chart"
        return True, ""

    def to_json(self) -> dict:
        return {"name": self.name, "start": chart_to_json(self.start),
                "moves": moves_to_json(self.moves), "end": chart_to_json(self.end)}

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(d["name"], chart_from_json(d["start"]), moves_from_json(d["moves"]),
                   chart_from_json(d["end"]))


def identity_certificate(name: str, n: int, alphabet: str, word: Sequence,
                         block: Sequence[Event]) -> Certificate:
    """From the identity on ``word`` to ``block`` followed by its inverse."""
    start = Chart(n, alphabet, (), tuple(word), tuple(word))
    moves = [pair_create(i, ev) for i, ev in enumerate(block)]
    end = Chart(n, alphabet, tuple(block) + invert_events(block), tuple(word), tuple(word))
    return Certificate(name, start, moves, end)


def middle_slice(c: Chart) -> tuple:
    return slices(c)[c.p // 2]


def lemma1_certificate() -> Certificate:
    """(t4 t3 t2 t1)^3 is carried to (t1 t2 t3 t4)^2 and back."""
    block = rewrite_events("perm", 5, LEMMA1_BOUNDARY, LEMMA1_CENTER)
    return identity_certificate("lemma1", 5, "perm", LEMMA1_BOUNDARY, block)


def _psi(n: int, word: Sequence[str]) -> tuple[int, ...]:
    f = psi_letter_map(n)
    return tuple(j for a in word for j in f(a))


def relator_certificates(name: str, n: int, relator: Sequence[str]) -> list[Certificate]:
    """Both composites of a relator block with its inverse reduce to identities."""
    block = relator_block(dihedral_presentation(n), psi_letter_map(n), relator, n)
    image = _psi(n, relator)
    inverse = invert_events(block.events)
    return [identity_certificate(f"{name}:block-then-inverse", n, "perm", image, block.events),
            identity_certificate(f"{name}:inverse-then-block", n, "perm", (), inverse)]


def corollary1_certificates() -> list[Certificate]:
    return relator_certificates("corollary1", 5, ("x",) * 5)


def lemma2_certificates() -> list[Certificate]:
    return relator_certificates("lemma2", 5, ("r", "x", "r", "x"))


def example_chain() -> Chart:
    """One fragment rewriting each displayed line of the example into the next."""
    words = [perm.parse_product(t) for t in EXAMPLE_LINES]
    events: list[Event] = []
    for a, b in zip(words, words[1:]):
        events.extend(rewrite_events("perm", 5, a, b))
    c = Chart(5, "perm", tuple(events), words[0], words[-1])
    require_valid(c)
    return c


def example_line_values() -> list[perm.Permutation]:
    return [perm.evaluate_word(5, perm.parse_product(t)) for t in EXAMPLE_LINES]


def all_certificates() -> list[Certificate]:
    return [lemma1_certificate()] + corollary1_certificates() + lemma2_certificates()


# -- committed fixtures --------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def write_fixtures(lemma_dir: Path = LEMMA_DIR, relator_dir: Path = RELATOR_DIR) -> None:
    lemma_dir.mkdir(parents=True, exist_ok=True)
    relator_dir.mkdir(parents=True, exist_ok=True)
    for cert in all_certificates():
        (lemma_dir / f"{cert.name.replace(':', '_')}.json").write_text(_dump(cert.to_json()))
    for n in (5, 7, 9):
        (relator_dir / f"d{n}.json").write_text(_dump(relator_fixture(n)))


def load_certificates(lemma_dir: Path = LEMMA_DIR) -> list[Certificate]:
    return [Certificate.from_json(json.loads(p.read_text())) for p in sorted(lemma_dir.glob("*.json"))]


def relator_fixture(n: int) -> dict:
    pres = dihedral_presentation(n)
    return {"n": n, "blocks": [{"relator": "".join(r),
                                "chart": chart_to_json(relator_block(pres, psi_letter_map(n), r, n))}
                               for r in pres.relators]}


def load_relator_block(n: int, relator: str) -> Chart:
    """The shipped block for ``relator`` in D_n, or a freshly built one when none is shipped."""
    path = RELATOR_DIR / f"d{n}.json"
    if path.exists():
        for b in json.loads(path.read_text())["blocks"]:
            if b["relator"] == relator:
                return chart_from_json(b["chart"])
    return relator_block(dihedral_presentation(n), psi_letter_map(n), tuple(relator), n)


# -- the suite ---------------------------------------------------------------------


def run_suite() -> list[tuple[str, bool, str]]:
    """Every committed certificate plus the structural checks on Lemma 1 and the example."""
    out: list[tuple[str, bool, str]] = []
    certs = load_certificates()
    names = {c.name for c in certs}
    for want in (c.name for c in all_certificates()):
        if want not in names:
            out.append((want, False, "fixture missing"))
    for cert in certs:
        ok, why = cert.check()
        out.append((cert.name, ok, why))
        if cert.name == "lemma1":
            mid = middle_slice(cert.end)
            ok = (cert.end.source == cert.end.target == LEMMA1_BOUNDARY and mid == LEMMA1_CENTER
                  and str(perm.evaluate_word(5, mid)) == "(1 3 5 2 4)")
            out.append(("lemma1:boundary-and-center", ok,
                        "" if ok else f"center {perm.product_text(mid)}"))
    chain = example_chain()
    values = {str(v) for v in example_line_values()}
    last = perm.parse_product(EXAMPLE_LINES[-1])
    ok = values == {"(1 3 5 2 4)"} and not validate(chain) and perm.is_reduced(5, last)
    out.append(("example-chain", ok, "" if ok else f"line values {sorted(values)}"))
    for n in (5, 7, 9):
        for r in dihedral_presentation(n).relators:
            blk = load_relator_block(n, "".join(r))
            ok = not validate(blk) and blk.source == _psi(n, r) and blk.target == ()
            out.append((f"relator d{n} {''.join(r)}", ok, ""))
    return out
