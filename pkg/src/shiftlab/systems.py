"""Canonical desk-scale systems and their named block codes.

The hallway system is the centerpiece: a walker `p` moves right along a
bi-infinite corridor holding one nail that is empty (`1`) or carries
picture `a` or `b`; the combined letters `1p`, `ap`, `bp` mean the
walker stands at the nail.  The two walk codes act on arrival at the
nail: the `a`-walk hangs `a` on an empty nail, removes a hanging `a`,
and leaves `b` alone; the `b`-walk swaps the roles of `a` and `b`.
Departure never touches the nail, and the inverse codes walk left,
undoing the arrival action on departure.
"""

from dataclasses import dataclass

from .autos import BlockCode, apply_to_config
from .subshifts import build_sft, build_sparse, product
from .words import Alphabet, Configuration

SYSTEM_NAMES = ("full2", "golden_mean", "cycle2", "at_most_one_1",
                "salo_schraudner", "hallway")

HALLWAY_LETTERS = ("0", "1", "a", "b", "p", "1p", "ap", "bp")
_PERSON = {"p", "1p", "ap", "bp"}
_AT_NAIL = {"1p", "ap", "bp"}


@dataclass(frozen=True)
class NamedSystem:
    name: str
    spec: object
    codes: dict    # name -> BlockCode, complete on the spec's language
    probes: dict   # name -> Configuration inside the spec


def _hallway_spec():
    alphabet = Alphabet(HALLWAY_LETTERS)
    families = [(m,) for m in ("1", "a", "b", "p", "1p", "ap", "bp")]
    families += [("p", m) for m in ("1", "a", "b")]
    return build_sparse(alphabet, "0", families)


def _walk_rule(swap):
    """Range-1 local rule of the rightward walk; swap exchanges a and b."""
    hang = "bp" if swap else "ap"
    on_a = "ap" if swap else "1p"   # arriving at a hanging `a`
    on_b = "1p" if swap else "bp"   # arriving at a hanging `b`

    def rule(win):
        left, here, _right = win
        if here == "p":
            return "0"
        if here == "0":
            return "p" if left in _PERSON else "0"
        if here == "1":
            return hang if left == "p" else "1"
        if here == "a":
            return on_a if left == "p" else "a"
        if here == "b":
            return on_b if left == "p" else "b"
        return {"1p": "1", "ap": "a", "bp": "b"}[here]

    return rule


def _walk_back_rule(swap):
    """Inverse walk: move left, undoing the arrival action on departure."""
    undo_1p = "b" if swap else "a"   # 1p arose from removing a picture
    undo_ap = "a" if swap else "1"
    undo_bp = "1" if swap else "b"

    def rule(win):
        _left, here, right = win
        if here == "p":
            return "0"
        if here == "0":
            return "p" if right in _PERSON else "0"
        if here == "1":
            return "1p" if right == "p" else "1"
        if here == "a":
            return "ap" if right == "p" else "a"
        if here == "b":
            return "bp" if right == "p" else "b"
        return {"1p": undo_1p, "ap": undo_ap, "bp": undo_bp}[here]

    return rule


def _hallway_probes(spec):
    probes = {"zero": Configuration.constant("0")}
    for i in range(1, 9):
        probes[f"x{i}"] = Configuration.from_markers("0", {-i: "p", 0: "1"})
    for m, label in (("1", "nail_1"), ("a", "nail_a"), ("b", "nail_b"),
                     ("p", "walker"), ("1p", "at_nail_1"),
                     ("ap", "at_nail_a"), ("bp", "at_nail_b")):
        probes[label] = Configuration.from_markers("0", {0: m})
    return probes


def make_example(name):
    """Construct one of the built-in named systems."""
    if name == "full2":
        alphabet = Alphabet(("0", "1"))
        spec = build_sft(alphabet, [])
        codes = {
            "identity": BlockCode.identity(spec, 0),
            "flip": BlockCode.letter_map(spec, {"0": "1", "1": "0"}),
            "shift": BlockCode.shift(spec, 1),
            "shift_inv": BlockCode.shift(spec, -1),
        }
        probes = {
            "one": Configuration.from_markers("0", {0: "1"}),
            "alt": Configuration.periodic(("0", "1")),
            "zero": Configuration.constant("0"),
        }
        return NamedSystem(name, spec, codes, probes)
    if name == "golden_mean":
        alphabet = Alphabet(("0", "1"))
        spec = build_sft(alphabet, [("1", "1")])
        codes = {"identity": BlockCode.identity(spec, 0)}
        probes = {
            "zero": Configuration.constant("0"),
            "one": Configuration.from_markers("0", {0: "1"}),
        }
        return NamedSystem(name, spec, codes, probes)
    if name == "cycle2":
        alphabet = Alphabet(("0", "1"))
        spec = build_sft(alphabet, [("0", "0"), ("1", "1")])
        codes = {"identity": BlockCode.identity(spec, 0)}
        probes = {
            "alt": Configuration.periodic(("0", "1")),
            "alt_shifted": Configuration.periodic(("1", "0")),
        }
        return NamedSystem(name, spec, codes, probes)
    if name == "at_most_one_1":
        alphabet = Alphabet(("0", "1"))
        spec = build_sparse(alphabet, "0", [("1",)])
        codes = {
            "identity": BlockCode.identity(spec, 0),
            "shift": BlockCode.shift(spec, 1),
            "shift_inv": BlockCode.shift(spec, -1),
        }
        probes = {
            "zero": Configuration.constant("0"),
            "one": Configuration.from_markers("0", {0: "1"}),
        }
        return NamedSystem(name, spec, codes, probes)
    if name == "salo_schraudner":
        factor = make_example("at_most_one_1").spec
        spec = product(factor, factor)
        codes = {"identity": BlockCode.identity(spec, 0)}
        probes = {"zero": Configuration.constant(("0", "0"))}
        return NamedSystem(name, spec, codes, probes)
    if name == "hallway":
        spec = _hallway_spec()
        codes = {
            "identity": BlockCode.identity(spec, 0),
            "phi_a": BlockCode.from_function(spec, 1, _walk_rule(swap=False)),
            "phi_b": BlockCode.from_function(spec, 1, _walk_rule(swap=True)),
            "phi_a_inv": BlockCode.from_function(spec, 1, _walk_back_rule(swap=False)),
            "phi_b_inv": BlockCode.from_function(spec, 1, _walk_back_rule(swap=True)),
        }
        return NamedSystem(name, spec, codes, _hallway_probes(spec))
    raise ValueError(f"unknown system name {name!r}")


def decode_hallway_product(system, code, max_len=8):
    """Recover the generator word of a composed walk code from probes alone.

    The probe with the walker arriving exactly at the nail reveals the
    word length; the nail state of each earlier probe's image then spells
    the letters.  Returns None when the images do not decode.
    """
    images = []
    for i in range(1, max_len + 1):
        images.append(apply_to_config(code, system.probes[f"x{i}"]))
    at_origin = [i + 1 for i, y in enumerate(images) if y.get(0) in _PERSON]
    if len(at_origin) != 1:
        return None
    length = at_origin[0]
    letters = []
    for i in range(1, length + 1):
        state = images[length - i].get(0)
        if state in ("a", "ap"):
            letters.append("a")
        elif state in ("b", "bp"):
            letters.append("b")
        else:
            return None
    return tuple(letters)
