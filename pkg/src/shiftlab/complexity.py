"""Exact complexity functions and unique-extension analysis.

The counting side is straightforward; the interesting parts are the
extension radii (how far a word determines its surroundings) and the
window search behind the slow-complexity growth argument:  whenever
P_X(n) <= n^d from some point on, some m <= n*ln(n) has every word of
length m pinned down Cn deep on both sides, with C = ln(2)/(4d).
"""

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import EmptySubshiftError, LemmaWindowNotFoundError
from .subshifts import spec_digest

EXCEEDS_CAP = "exceeds-cap"
AT_LEAST_CAP = "at-least-cap"


def complexity(spec, n):
    """P_X(n) = |L_n(X)|; errors on the empty subshift."""
    if spec.is_empty:
        raise EmptySubshiftError("complexity undefined on the empty subshift")
    if n < 1:
        raise ValueError("n must be >= 1")
    return spec.count_words(n)


@dataclass(frozen=True)
class ComplexityTable:
    subshift_id: str
    values: dict  # n -> P_X(n), for 1 <= n <= N

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "P"])
        for n in sorted(self.values):
            writer.writerow([n, self.values[n]])
        return buf.getvalue()

    def to_json(self):
        return json.dumps({"subshift_id": self.subshift_id,
                           "values": {str(n): self.values[n] for n in sorted(self.values)}},
                          indent=2, sort_keys=False)


def complexity_table(spec, max_n):
    values = {n: complexity(spec, n) for n in range(1, max_n + 1)}
    return ComplexityTable(subshift_id=spec_digest(spec), values=values)


@dataclass(frozen=True)
class MorseHedlundVerdict:
    kind: str  # "all-periodic" | "consistent-with-aperiodic"
    witness: int | None = None


def morse_hedlund_classify(spec, max_n):
    """All-periodic as soon as P_X(n*) <= n* for some n* <= max_n.

    By Morse-Hedlund, complexity bounded by n at some n forces every
    point to be periodic; otherwise the data stays consistent with the
    presence of an aperiodic point.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    for n in range(1, max_n + 1):
        count = 0 if spec.is_empty else spec.count_words(n)
        if count <= n:
            return MorseHedlundVerdict("all-periodic", witness=n)
    return MorseHedlundVerdict("consistent-with-aperiodic")


@dataclass(frozen=True)
class ExtensionReport:
    word: tuple
    radius: object  # int, or AT_LEAST_CAP when still unique at the cap
    cap: int
    extension: tuple  # the unique centered extension at min(radius, cap)


def _centered_extensions(spec, wordset):
    """One-step two-sided extensions within the language."""
    out = set()
    for w in wordset:
        for a in spec.alphabet.letters:
            for b in spec.alphabet.letters:
                u = (a,) + w + (b,)
                if spec.contains(u):
                    out.add(u)
        if len(out) > 1:
            return out
    return out


def extension_radius(spec, word, cap):
    """Largest k <= cap such that exactly one u in L_{|w|+2k} has w centered.

    Uniqueness is monotone in k, so the radius is found by extending one
    step at a time until a second extension appears or the cap is hit.
    """
    word = tuple(word)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not spec.contains(word):
        raise ValueError(f"word {word!r} not in the language")
    current = {word}
    radius = 0
    unique_ext = word
    while radius < cap:
        nxt = _centered_extensions(spec, current)
        if len(nxt) != 1:
            return ExtensionReport(word, radius, cap, unique_ext)
        radius += 1
        current = nxt
        (unique_ext,) = nxt
    return ExtensionReport(word, AT_LEAST_CAP, cap, unique_ext)


def min_nonextendable_radius(spec, n, cap):
    """k_n: least k <= cap with no length-n word extending uniquely k times.

    Returns EXCEEDS_CAP when some word is still uniquely extendable at
    the cap (the minimum, if it exists at all, lies beyond the cap).
    """
    if spec.is_empty:
        return 1
    best = 0
    for w in spec.words(n):
        report = extension_radius(spec, w, cap)
        if report.radius == AT_LEAST_CAP:
            return EXCEEDS_CAP
        best = max(best, report.radius)
    return best + 1


def find_extension_window(spec, n, d, cap):
    """Search m <= floor(n*ln n) with k_m >= C*n, C = ln(2)/(4d).

    The polynomial hypothesis P_X(j) <= j^d is checked on the scanned
    range j in [n, floor(n*ln n)] before searching; a violation there (or
    an exhausted search) raises, signalling that the growth hypothesis
    fails for this subshift or that the cap is too small.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if d < 1:
        raise ValueError("d must be >= 1")
    horizon = math.floor(n * math.log(n))
    for j in range(n, horizon + 1):
        if complexity(spec, j) > j ** d:
            raise LemmaWindowNotFoundError(
                f"hypothesis P(n) <= n^{d} fails at n={j}: {complexity(spec, j)} > {j ** d}")
    threshold = math.log(2) / (4 * d) * n
    for m in range(1, horizon + 1):
        k_m = min_nonextendable_radius(spec, m, cap)
        if k_m == EXCEEDS_CAP or k_m >= threshold:
            return m, k_m
    raise LemmaWindowNotFoundError(
        f"no m <= {horizon} with k_m >= {threshold:.3f} at cap {cap}")


def slow_growth_window(table, k, eps):
    """Smallest x with (f(x+k)-f(x))/f(x) < eps, or None.

    `table` lists f(0..N); f must be nondecreasing and positive.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if len(table) < k + 1:
        raise ValueError("table must cover at least 0..k")
    for i, v in enumerate(table):
        if v <= 0:
            raise ValueError("f must be positive")
        if i and v < table[i - 1]:
            raise ValueError("f must be nondecreasing")
    for x in range(len(table) - k):
        if (table[x + k] - table[x]) / table[x] < eps:
            return x
    return None
