"""Subshift backends answering all language queries exactly.

Three finite descriptions are supported:

* SFT: forbidden finite words, answered through the essential part of the
  de Bruijn-style transition graph of order max(|f|)-1.  Membership in the
  language means occurrence in a bi-infinite point; merely avoiding the
  forbidden words is not enough, which is why the graph is pruned until
  every vertex has an incoming and an outgoing edge.
* Sparse: a background letter plus families of marker multisets; points
  are all-background except for finitely many markers forming a
  sub-multiset of one family.
* Product: letterwise Cartesian product of two subshifts over the pair
  alphabet.

All enumerations are returned in canonical order (alphabet index, then
lexicographic), so outputs are reproducible byte for byte.
"""

import hashlib
import itertools
import json
from collections import Counter

from .errors import EmptySubshiftError, SpecFormatError
from .words import Alphabet, Configuration, subwords


class SubshiftSpec:
    """Common surface of all backends.  Instances are immutable."""

    kind = None

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.is_empty = False
        self._word_cache = {}
        self._count_cache = {}

    # -- language queries ------------------------------------------------

    def words(self, n):
        """All words of length n in the language, canonically sorted."""
        if self.is_empty:
            raise EmptySubshiftError("empty subshift has no language")
        if n < 1:
            raise ValueError("word length must be >= 1")
        if n not in self._word_cache:
            self._word_cache[n] = tuple(self.alphabet.sort_words(self._enumerate(n)))
        return self._word_cache[n]

    def count_words(self, n):
        """|L_n|; 0 for the empty subshift."""
        if self.is_empty:
            return 0
        if n not in self._count_cache:
            self._count_cache[n] = self._count(n)
        return self._count_cache[n]

    def contains(self, word):
        """Whether the word occurs in some bi-infinite point."""
        word = self.alphabet.check_word(word)
        if self.is_empty:
            return False
        if not word:
            return True
        return self._contains(word)

    def contains_config(self, config):
        """Whether the eventually periodic point lies in the subshift."""
        raise NotImplementedError

    def _enumerate(self, n):
        raise NotImplementedError

    def _count(self, n):
        return len(self.words(n))

    def _contains(self, word):
        raise NotImplementedError

    def descriptor(self):
        """Canonical plain-data description (also the JSON form)."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()!r}>"


class CylinderHandle:
    """The cylinder [w]_0^+ within a subshift: w pinned at coordinates 0..|w|-1."""

    __slots__ = ("word", "offset")

    def __init__(self, word, offset=0):
        if offset != 0:
            raise ValueError("only offset-0 cylinders are used here")
        self.word = tuple(word)
        self.offset = 0

    def contains(self, config):
        return config.window(self.offset, len(self.word)) == self.word

    def __repr__(self):
        return f"CylinderHandle({self.word!r})"


def _has_forbidden_factor(word, forbidden):
    for f in forbidden:
        k = len(f)
        if k <= len(word) and any(word[i:i + k] == f for i in range(len(word) - k + 1)):
            return True
    return False


class SftSpec(SubshiftSpec):
    """Shift of finite type, backed by its essential transition graph.

    Vertices are the clean words of length order-1; the edge u -a-> v
    exists when v = u[1:]+(a,) and the combined window of length `order`
    avoids every forbidden word.  Iterated removal of vertices without
    in- or out-edges leaves exactly the graph whose bi-infinite paths
    realize the language.
    """

    kind = "sft"

    def __init__(self, alphabet, forbidden):
        super().__init__(alphabet)
        canon = []
        for f in forbidden:
            f = alphabet.check_word(f)
            if not f:
                raise ValueError("forbidden words must be nonempty")
            canon.append(f)
        canon = sorted(set(canon), key=lambda w: (len(w), alphabet.word_key(w)))
        self.forbidden = tuple(canon)
        self.order = max((len(f) for f in self.forbidden), default=1)
        self.window_len = self.order - 1  # vertex word length q
        self._build_graph()

    def _build_graph(self):
        q = self.window_len
        verts = [u for u in itertools.product(self.alphabet.letters, repeat=q)
                 if not _has_forbidden_factor(u, self.forbidden)]
        vert_set = set(verts)
        out = {}
        for u in verts:
            letters = []
            for a in self.alphabet.letters:
                win = u + (a,)
                if win[1:] in vert_set and not _has_forbidden_factor(win, self.forbidden):
                    letters.append(a)
            out[u] = letters
        # prune until every vertex has in-degree and out-degree >= 1
        alive = set(verts)
        while True:
            has_in = set()
            for u in alive:
                for a in out[u]:
                    v = (u + (a,))[1:]
                    if v in alive:
                        has_in.add(v)
            keep = {u for u in alive
                    if u in has_in and any((u + (a,))[1:] in alive for a in out[u])}
            if keep == alive:
                break
            alive = keep
        self.vertices = tuple(sorted(alive, key=self.alphabet.word_key))
        self.out = {u: tuple(a for a in out[u] if (u + (a,))[1:] in alive)
                    for u in self.vertices}
        self.is_empty = not self.vertices

    @staticmethod
    def step(u, a):
        """Successor vertex along the edge labeled by appending `a`."""
        return (u + (a,))[1:]

    def _enumerate(self, n):
        q = self.window_len
        if n < q:
            found = set()
            for v in self.vertices:
                found.update(subwords(v, n))
            return found
        frontier = [(u, u) for u in self.vertices]
        for _ in range(n - q):
            frontier = [(w + (a,), self.step(u, a))
                        for w, u in frontier for a in self.out[u]]
        return [w for w, _ in frontier]

    def _count(self, n):
        q = self.window_len
        if n < q:
            return len(self.words(n))
        # paths of n-q edges; distinct paths spell distinct words
        counts = {u: 1 for u in self.vertices}
        for _ in range(n - q):
            counts = {u: sum(counts[self.step(u, a)] for a in self.out[u])
                      for u in self.vertices}
        return sum(counts.values())

    def _contains(self, word):
        q = self.window_len
        if len(word) < q:
            return any(word in subwords(v, len(word)) for v in self.vertices)
        u = word[:q]
        if u not in self.out:
            return False
        for a in word[q:]:
            if a not in self.out[u]:
                return False
            u = self.step(u, a)
        return True

    def contains_config(self, config):
        q = self.window_len
        lo = -config.offset - len(config.left) - q
        hi = len(config.center) - config.offset + len(config.right) + q
        # the window covers a full period of tail transitions on each side,
        # so validity of this word propagates to the whole point
        return self.contains(config.window(lo, hi - lo))

    def descriptor(self):
        return {"kind": "sft",
                "alphabet": list(self.alphabet.letters),
                "forbidden": [list(f) for f in self.forbidden]}

    def __eq__(self, other):
        return (isinstance(other, SftSpec)
                and self.alphabet == other.alphabet
                and self.forbidden == other.forbidden)

    def __hash__(self):
        return hash((self.alphabet, self.forbidden))


class SparseSpec(SubshiftSpec):
    """Sparse-marker subshift over a background letter.

    A word is in the language iff its non-background letters, with
    multiplicity, form a sub-multiset of one of the families.  The empty
    family is always implicitly present, so a sparse spec is never empty.
    """

    kind = "sparse"

    def __init__(self, alphabet, background, families):
        super().__init__(alphabet)
        if background not in alphabet:
            raise ValueError("background letter not in alphabet")
        self.background = background
        canon = set()
        for fam in families:
            fam = tuple(fam)
            for a in fam:
                if a not in alphabet:
                    raise ValueError(f"marker {a!r} not in alphabet")
                if a == background:
                    raise ValueError("marker equal to background rejected")
            canon.add(tuple(sorted(fam, key=alphabet.index)))
        canon.discard(())
        self.families = tuple(sorted(canon, key=lambda f: (len(f), alphabet.word_key(f))))
        self._family_counters = tuple(Counter(f) for f in self.families)

    def _admits(self, marker_counter):
        if not marker_counter:
            return True
        return any(all(fam[a] >= k for a, k in marker_counter.items())
                   for fam in self._family_counters)

    def _marker_counter(self, word):
        return Counter(a for a in word if a != self.background)

    def _enumerate(self, n):
        bg = self.background
        found = {(bg,) * n}
        for fam in self.families:
            fam_counter = Counter(fam)
            distinct = sorted(fam_counter, key=self.alphabet.index)
            ranges = [range(fam_counter[a] + 1) for a in distinct]
            for picks in itertools.product(*ranges):
                sub = []
                for a, k in zip(distinct, picks):
                    sub.extend([a] * k)
                if not sub or len(sub) > n:
                    continue
                for positions in itertools.combinations(range(n), len(sub)):
                    for assign in set(itertools.permutations(sub)):
                        w = [bg] * n
                        for p, a in zip(positions, assign):
                            w[p] = a
                        found.add(tuple(w))
        return found

    def _contains(self, word):
        return self._admits(self._marker_counter(word))

    def contains_config(self, config):
        for a in config.left + config.right:
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet")
            if a != self.background:
                # a marker in a periodic tail would repeat infinitely often
                return False
        center = config.window(-config.offset, len(config.center))
        self.alphabet.check_word(center)
        return self._admits(self._marker_counter(center))

    def descriptor(self):
        return {"kind": "sparse",
                "alphabet": list(self.alphabet.letters),
                "background": self.background,
                "families": [list(f) for f in self.families]}

    def __eq__(self, other):
        return (isinstance(other, SparseSpec)
                and self.alphabet == other.alphabet
                and self.background == other.background
                and self.families == other.families)

    def __hash__(self):
        return hash((self.alphabet, self.background, self.families))


class ProductSpec(SubshiftSpec):
    """Letterwise Cartesian product over the pair alphabet."""

    kind = "product"

    def __init__(self, left, right):
        if left.is_empty or right.is_empty:
            raise EmptySubshiftError("product factors must be nonempty")
        pairs = tuple((a, b) for a in left.alphabet.letters for b in right.alphabet.letters)
        super().__init__(Alphabet(pairs))
        self.factor_left = left
        self.factor_right = right

    def _enumerate(self, n):
        return [tuple(zip(u, v))
                for u in self.factor_left.words(n)
                for v in self.factor_right.words(n)]

    def _count(self, n):
        return self.factor_left.count_words(n) * self.factor_right.count_words(n)

    def _contains(self, word):
        u = tuple(a for a, _ in word)
        v = tuple(b for _, b in word)
        return self.factor_left.contains(u) and self.factor_right.contains(v)

    def _project(self, config, side):
        pick = (lambda a: a[0]) if side == 0 else (lambda a: a[1])
        return Configuration(tuple(pick(a) for a in config.left),
                             tuple(pick(a) for a in config.center),
                             tuple(pick(a) for a in config.right),
                             config.offset)

    def contains_config(self, config):
        for a in config.left + config.center + config.right:
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in pair alphabet")
        return (self.factor_left.contains_config(self._project(config, 0))
                and self.factor_right.contains_config(self._project(config, 1)))

    def descriptor(self):
        return {"kind": "product",
                "factors": [self.factor_left.descriptor(),
                            self.factor_right.descriptor()]}

    def __eq__(self, other):
        return (isinstance(other, ProductSpec)
                and self.factor_left == other.factor_left
                and self.factor_right == other.factor_right)

    def __hash__(self):
        return hash((self.factor_left, self.factor_right))


# -- constructors (the public build operations) --------------------------

def build_sft(alphabet, forbidden):
    """SFT from forbidden words; the empty subshift is a valid, flagged result."""
    return SftSpec(alphabet, forbidden)


def build_sparse(alphabet, background, families):
    return SparseSpec(alphabet, background, families)


def product(left, right):
    return ProductSpec(left, right)


def empty_sft(alphabet):
    """Canonical empty subshift over the alphabet (all letters forbidden)."""
    return SftSpec(alphabet, [(a,) for a in alphabet.letters])


def enumerate_language(spec, n):
    """L_n(X) in canonical order; errors on the empty subshift."""
    return spec.words(n)


def contains_word(spec, word):
    return spec.contains(word)


# -- strict JSON interface ------------------------------------------------

_SPEC_KEYS = {
    "sft": {"kind", "alphabet", "forbidden"},
    "sparse": {"kind", "alphabet", "background", "families"},
    "product": {"kind", "factors"},
}


def _parse_letters(obj, where):
    if not isinstance(obj, list) or not obj:
        raise SpecFormatError(f"{where}: expected a nonempty list of letters")
    for a in obj:
        if not isinstance(a, str):
            raise SpecFormatError(f"{where}: letters must be strings, got {a!r}")
    return tuple(obj)


def _parse_word(obj, where):
    if not isinstance(obj, list):
        raise SpecFormatError(f"{where}: expected a word as a list of letters")
    for a in obj:
        if not isinstance(a, str):
            raise SpecFormatError(f"{where}: letters must be strings, got {a!r}")
    return tuple(obj)


def parse_spec(obj, where="spec"):
    """Strict parser for the subshift spec JSON schema; unknown keys rejected."""
    if not isinstance(obj, dict):
        raise SpecFormatError(f"{where}: expected an object")
    kind = obj.get("kind")
    if kind not in _SPEC_KEYS:
        raise SpecFormatError(f"{where}.kind: expected one of sft|sparse|product")
    allowed = _SPEC_KEYS[kind]
    extra = set(obj) - allowed
    if extra:
        raise SpecFormatError(f"{where}: unknown keys {sorted(extra)}")
    missing = allowed - set(obj)
    if missing:
        raise SpecFormatError(f"{where}: missing keys {sorted(missing)}")
    if kind == "sft":
        alphabet = Alphabet(_parse_letters(obj["alphabet"], f"{where}.alphabet"))
        if not isinstance(obj["forbidden"], list):
            raise SpecFormatError(f"{where}.forbidden: expected a list of words")
        words = [_parse_word(w, f"{where}.forbidden[{i}]")
                 for i, w in enumerate(obj["forbidden"])]
        try:
            return build_sft(alphabet, words)
        except ValueError as exc:
            raise SpecFormatError(f"{where}: {exc}") from None
    if kind == "sparse":
        alphabet = Alphabet(_parse_letters(obj["alphabet"], f"{where}.alphabet"))
        if not isinstance(obj["background"], str):
            raise SpecFormatError(f"{where}.background: expected a letter string")
        if not isinstance(obj["families"], list):
            raise SpecFormatError(f"{where}.families: expected a list of families")
        fams = [_parse_word(f, f"{where}.families[{i}]")
                for i, f in enumerate(obj["families"])]
        try:
            return build_sparse(alphabet, obj["background"], fams)
        except ValueError as exc:
            raise SpecFormatError(f"{where}: {exc}") from None
    factors = obj["factors"]
    if not isinstance(factors, list) or len(factors) != 2:
        raise SpecFormatError(f"{where}.factors: expected exactly two factor specs")
    left = parse_spec(factors[0], f"{where}.factors[0]")
    right = parse_spec(factors[1], f"{where}.factors[1]")
    try:
        return product(left, right)
    except EmptySubshiftError as exc:
        raise SpecFormatError(f"{where}: {exc}") from None


def spec_to_json(spec):
    return spec.descriptor()


def load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"{path}: invalid JSON ({exc})") from None
    return parse_spec(obj, where=str(path))


def spec_digest(spec):
    """Stable hash of the canonical JSON description."""
    blob = json.dumps(spec.descriptor(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
