"""Sliding block codes as automorphism candidates.

A block code of range R is an exhaustive rule table on the language
windows of length 2R+1; applying a code to out-of-language data is an
error, never silently defaulted, because the maps under study only live
on the subshift.  Equality of codes is decided at the word level on
L_{2R*+1}(X), which is exact for maps on X.

Certification is sound, not complete: a certificate carries an explicit
two-sided inverse verified on the language, while a failed inverse
search is merely inconclusive.
"""

import itertools
import json
from dataclasses import dataclass

from .errors import (
    InvalidChainError,
    RuleIncompleteError,
    SearchSpaceError,
    SpecFormatError,
)
from .words import Configuration, occurrences


class BlockCode:
    """Sliding block code of declared range with a total language table."""

    __slots__ = ("spec", "radius", "rule")

    def __init__(self, spec, radius, rule):
        if radius < 0:
            raise ValueError("range must be >= 0")
        domain = set(spec.words(2 * radius + 1))
        if set(rule) != domain:
            missing = domain - set(rule)
            extra = set(rule) - domain
            raise ValueError(
                f"rule table must cover exactly the language windows; "
                f"missing {len(missing)}, extra {len(extra)}")
        for letter in rule.values():
            if letter not in spec.alphabet:
                raise ValueError(f"rule output {letter!r} not in alphabet")
        self.spec = spec
        self.radius = radius
        self.rule = dict(rule)

    @classmethod
    def from_function(cls, spec, radius, fn):
        return cls(spec, radius, {w: fn(w) for w in spec.words(2 * radius + 1)})

    @classmethod
    def identity(cls, spec, radius=0):
        return cls.from_function(spec, radius, lambda w: w[radius])

    @classmethod
    def shift(cls, spec, power=1):
        """sigma^power as a block code of range |power| (range 1 for power 0)."""
        radius = max(abs(power), 0)
        if radius == 0:
            return cls.identity(spec, 0)
        return cls.from_function(spec, radius, lambda w: w[radius + power])

    @classmethod
    def letter_map(cls, spec, mapping):
        """Range-0 code from a letter-to-letter map (not validated as endo)."""
        return cls.from_function(spec, 0, lambda w: mapping[w[0]])

    def output(self, window):
        try:
            return self.rule[window]
        except KeyError:
            raise RuleIncompleteError(
                f"window {window!r} missing from range-{self.radius} rule table") from None

    def __repr__(self):
        return f"<BlockCode range={self.radius} on {type(self.spec).__name__}>"


def apply_to_word(code, word):
    """Slide the code over the word: output length |w| - 2R."""
    word = tuple(word)
    span = 2 * code.radius + 1
    if len(word) < span:
        raise ValueError(f"word of length {len(word)} shorter than window {span}")
    return tuple(code.output(word[i:i + span]) for i in range(len(word) - span + 1))


def apply_to_config(code, config):
    """Image of an eventually periodic point; tail periods are preserved."""
    radius = code.radius

    def out(t):
        return code.output(config.window(t - radius, 2 * radius + 1))

    pure_l = -config.offset - radius - 1   # rightmost output drawn purely from the left tail
    pure_r = len(config.center) - config.offset + radius
    lp, rp = len(config.left), len(config.right)
    left = tuple(out(t) for t in range(pure_l - lp + 1, pure_l + 1))
    center = tuple(out(t) for t in range(pure_l + 1, pure_r))
    right = tuple(out(t) for t in range(pure_r, pure_r + rp))
    return Configuration(left, center, right, offset=-(pure_l + 1))


def compose(outer, inner):
    """outer after inner; ranges add, table restricted to language windows."""
    if outer.spec is not inner.spec and outer.spec != inner.spec:
        raise ValueError("composed codes must live on the same subshift")
    spec = outer.spec
    radius = outer.radius + inner.radius
    rule = {}
    for w in spec.words(2 * radius + 1):
        rule[w] = outer.output(apply_to_word(inner, w))
    return BlockCode(spec, radius, rule)


def pad(code, radius):
    """The same map re-expressed at a larger range."""
    if radius < code.radius:
        raise ValueError("cannot pad to a smaller range")
    if radius == code.radius:
        return code
    d = radius - code.radius
    return BlockCode.from_function(
        code.spec, radius, lambda w: code.output(w[d:len(w) - d]))


def reduce_range(code):
    """Smallest-range code equal to this one on the subshift."""
    while code.radius > 0:
        groups = {}
        ok = True
        for w, letter in code.rule.items():
            mid = w[1:-1]
            if groups.setdefault(mid, letter) != letter:
                ok = False
                break
        if not ok:
            return code
        code = BlockCode(code.spec, code.radius - 1, groups)
    return code


def equal_on_shift(spec, a, b):
    """Equality as maps on X, decided on the common-range window table."""
    radius = max(a.radius, b.radius)
    return pad(a, radius).rule == pad(b, radius).rule


@dataclass(frozen=True)
class AutomorphismCert:
    code: BlockCode
    inverse: BlockCode
    r_certified: int


@dataclass(frozen=True)
class CertifyResult:
    status: str  # "certified" | "unknown" | "not-endomorphism"
    cert: AutomorphismCert | None = None
    witness: tuple | None = None  # (word, image) leaving the language


def find_inverse(spec, code, r_max):
    """Search ranges 0..r_max for a two-sided inverse; None is inconclusive.

    At each candidate range the inverse table is forced: the center of a
    preimage word must be a function of the image window.  Conflicting
    or missing constraints rule the range out.
    """
    ident = BlockCode.identity(spec, 0)
    for r in range(r_max + 1):
        forced = {}
        consistent = True
        for w in spec.words(2 * (r + code.radius) + 1):
            image = apply_to_word(code, w)
            center = w[r + code.radius]
            if forced.setdefault(image, center) != center:
                consistent = False
                break
        if not consistent:
            continue
        domain = spec.words(2 * r + 1)
        if any(u not in forced for u in domain):
            continue
        candidate = BlockCode(spec, r, {u: forced[u] for u in domain})
        try:
            if (equal_on_shift(spec, compose(candidate, code), ident)
                    and equal_on_shift(spec, compose(code, candidate), ident)):
                return candidate
        except RuleIncompleteError:
            continue
    return None


def certify_automorphism(spec, code, r_max):
    """Bounded endomorphism check, then inverse search.

    Success is a sound certificate; "unknown" is inconclusive; an image
    word leaving the language is a definitive rejection.
    """
    for n in range(1, 2 * r_max + 4):
        for w in spec.words(n + 2 * code.radius):
            image = apply_to_word(code, w)
            if not spec.contains(image):
                return CertifyResult("not-endomorphism", witness=(w, image))
    inverse = find_inverse(spec, code, r_max)
    if inverse is None:
        return CertifyResult("unknown")
    cert = AutomorphismCert(code, inverse, max(code.radius, inverse.radius))
    return CertifyResult("certified", cert=cert)


def enumerate_automorphisms(spec, radius, table_cap=1_000_000):
    """All of Aut_R(X) by brute force over rule tables, canonically ordered."""
    domain = spec.words(2 * radius + 1)
    size = len(spec.alphabet) ** len(domain)
    if size > table_cap:
        raise SearchSpaceError(size, table_cap)
    certs = []
    for values in itertools.product(spec.alphabet.letters, repeat=len(domain)):
        code = BlockCode(spec, radius, dict(zip(domain, values)))
        result = certify_automorphism(spec, code, radius)
        if result.status == "certified":
            certs.append(result.cert)
    return tuple(certs)


def preserves_occurrences(spec, code, target, anchors=None):
    """Whether the code maps the cylinder of `target` into itself.

    Plain form: every language word with `target` centered maps onto
    `target`.  Relative form (anchors = (words, D)): the same, restricted
    to occurrences whose D-stretch around the target avoids every anchor.
    """
    target = tuple(target)
    radius = code.radius
    if anchors is None:
        for u in spec.words(len(target) + 2 * radius):
            if u[radius:radius + len(target)] == target:
                if apply_to_word(code, u) != target:
                    return False
        return True
    anchor_words, dist = anchors
    anchor_words = [tuple(w) for w in anchor_words]
    if len(target) <= 2 * radius:
        raise ValueError("relative form needs |target| > 2R")
    off = radius + dist
    for u in spec.words(len(target) + 2 * off):
        if u[off:off + len(target)] != target:
            continue
        stretch = u[radius:radius + 2 * dist + len(target)]
        if any(occurrences(stretch, a) for a in anchor_words):
            continue
        image = apply_to_word(code, u)
        if image[dist:dist + len(target)] != target:
            return False
    return True


def coset_count(spec, radius_n, chain):
    """f(n): distinct tuples of anchor images over Aut_n(X), padded to the chain range."""
    anchors = chain.anchors()
    if not anchors:
        raise InvalidChainError("chain has no levels")
    if radius_n > chain.range_r:
        raise ValueError("n must embed into the chain's range")
    signatures = set()
    for cert in enumerate_automorphisms(spec, radius_n):
        padded = pad(cert.code, chain.range_r)
        signatures.add(tuple(apply_to_word(padded, a) for a in anchors))
    return len(signatures)


@dataclass(frozen=True)
class ClosureResult:
    status: str  # "ok" | "cap-exceeded"
    elements: tuple | None  # BlockCodes, canonical insertion order


def subgroup_closure(spec, gens, cap):
    """Close gens and their inverses under composition modulo equality on X."""
    elements = []

    def add(code):
        code = reduce_range(code)
        for known in elements:
            if equal_on_shift(spec, known, code):
                return False
        elements.append(code)
        return True

    add(BlockCode.identity(spec, 0))
    for cert in gens:
        add(cert.code)
        add(cert.inverse)
    if len(elements) > cap:
        return ClosureResult("cap-exceeded", None)
    changed = True
    while changed:
        changed = False
        snapshot = list(elements)
        for a in snapshot:
            for b in snapshot:
                if add(compose(a, b)):
                    changed = True
                    if len(elements) > cap:
                        return ClosureResult("cap-exceeded", None)
    return ClosureResult("ok", tuple(elements))


@dataclass(frozen=True)
class FreeSemigroupReport:
    status: str  # "free-to-depth" | "collision"
    depth: int
    words: tuple  # generator words over ("a", "b"), canonical order
    distinct: tuple | None  # pairwise-distinctness matrix when free
    collision: tuple | None  # the first equal pair otherwise


def semigroup_words(depth):
    out = []
    for n in range(1, depth + 1):
        out.extend(itertools.product("ab", repeat=n))
    return tuple(out)


def product_code(gens, word):
    """The composed code of a generator word; leftmost factor acts last."""
    code = gens[word[-1]]
    for letter in reversed(word[:-1]):
        code = compose(gens[letter], code)
    return code


def certify_free_semigroup(spec, a_cert, b_cert, depth):
    """Pairwise-distinctness check of all generator words up to the depth.

    Freeness here means: distinct words in the two generators give
    distinct maps on the subshift, verified via the word-level equality
    test at a common padded range.  The verdict is always relative to
    the depth, never an unconditional claim.
    """
    gens = {"a": a_cert.code, "b": b_cert.code}
    words = semigroup_words(depth)
    codes = {}
    for w in words:
        codes[w] = gens[w[0]] if len(w) == 1 else compose(gens[w[0]], codes[w[1:]])
    top = max(code.radius for code in codes.values())
    window_order = spec.words(2 * top + 1)
    prints = {}
    for w in words:
        padded = pad(codes[w], top)
        prints[w] = tuple(padded.rule[u] for u in window_order)
    collision = None
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if prints[words[i]] == prints[words[j]]:
                collision = (words[i], words[j])
                break
        if collision:
            break
    if collision:
        return FreeSemigroupReport("collision", depth, words, None, collision)
    matrix = tuple(tuple(prints[u] != prints[v] for v in words) for u in words)
    return FreeSemigroupReport("free-to-depth", depth, words, matrix, None)


def commutator(a, b, a_inv, b_inv):
    """a o b o a^-1 o b^-1 as a block code; range is the sum of ranges."""
    return compose(a, compose(b, compose(a_inv, b_inv)))


# -- strict JSON interface ---------------------------------------------------

_CODE_KEYS = {"range", "alphabet", "rule"}


def code_to_json(code):
    for a in code.spec.alphabet.letters:
        if not isinstance(a, str) or "," in a:
            raise SpecFormatError(f"letter {a!r} not serializable in rule keys")
    return {"range": code.radius,
            "alphabet": list(code.spec.alphabet.letters),
            "rule": {",".join(w): code.rule[w]
                     for w in code.spec.words(2 * code.radius + 1)}}


def parse_code(spec, obj, where="code"):
    """Strict block-code parser with a completeness check against L_{2R+1}(X)."""
    if not isinstance(obj, dict):
        raise SpecFormatError(f"{where}: expected an object")
    extra = set(obj) - _CODE_KEYS
    if extra:
        raise SpecFormatError(f"{where}: unknown keys {sorted(extra)}")
    missing = _CODE_KEYS - set(obj)
    if missing:
        raise SpecFormatError(f"{where}: missing keys {sorted(missing)}")
    radius = obj["range"]
    if not isinstance(radius, int) or radius < 0:
        raise SpecFormatError(f"{where}.range: expected an integer >= 0")
    if tuple(obj["alphabet"]) != spec.alphabet.letters:
        raise SpecFormatError(f"{where}.alphabet: does not match the subshift alphabet")
    if not isinstance(obj["rule"], dict):
        raise SpecFormatError(f"{where}.rule: expected an object")
    rule = {}
    for key, letter in obj["rule"].items():
        window = tuple(key.split(","))
        if len(window) != 2 * radius + 1:
            raise SpecFormatError(f"{where}.rule[{key!r}]: window length != 2R+1")
        for a in window + (letter,):
            if a not in spec.alphabet:
                raise SpecFormatError(f"{where}.rule[{key!r}]: letter {a!r} not in alphabet")
        rule[window] = letter
    try:
        return BlockCode(spec, radius, rule)
    except ValueError as exc:
        raise SpecFormatError(f"{where}: {exc}") from None


def load_code(spec, path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"{path}: invalid JSON ({exc})") from None
    return parse_code(spec, obj, where=str(path))
