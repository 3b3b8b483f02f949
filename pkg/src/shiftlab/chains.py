"""Descending chains of subshifts obtained by forbidding words.

Forbidding a word whose cylinder holds an aperiodic point costs at least
n-|w|+1 words of every length n >= |w| (the removal bound), which caps
the length of any chain built from words of bounded length.  On top of
the chain sit the shadowing and syndeticity searches: how far from the
forbidden words a surviving word behaves as if the forbidding never
happened, and how often some chain word must recur in every point.
"""

from collections import Counter
from dataclasses import dataclass

from .errors import (
    CapExceededError,
    EmptySubshiftError,
    HypothesisError,
    InvalidChainError,
    NoAperiodicPointError,
    NoUniqueExtenderError,
)
from .subshifts import ProductSpec, SftSpec, SparseSpec, build_sft, build_sparse, empty_sft
from .words import Configuration, occurrences


# -- forbidding a word -----------------------------------------------------

def forbid(spec, word):
    """The subshift spec with `word` forbidden.

    SFT: append to the forbidden list and re-prune (exact).  Sparse: drop
    every family that admits the word's marker multiset; forbidding an
    all-background word empties the shift, since every sparse point has
    arbitrarily long background runs.
    """
    word = spec.alphabet.check_word(word)
    if isinstance(spec, SftSpec):
        return build_sft(spec.alphabet, spec.forbidden + (word,))
    if isinstance(spec, SparseSpec):
        markers = Counter(a for a in word if a != spec.background)
        if not markers:
            return empty_sft(spec.alphabet)
        keep = [f for f in spec.families
                if not all(Counter(f)[a] >= k for a, k in markers.items())]
        return build_sparse(spec.alphabet, spec.background, keep)
    raise ValueError(f"forbid is not supported for {type(spec).__name__} specs")


# -- aperiodic points in cylinders ------------------------------------------

def _forward_adj(spec):
    return {u: tuple(spec.step(u, a) for a in spec.out[u]) for u in spec.vertices}

def _backward_adj(spec):
    rev = {u: [] for u in spec.vertices}
    for u in spec.vertices:
        for a in spec.out[u]:
            rev[spec.step(u, a)].append(u)
    return {u: tuple(vs) for u, vs in rev.items()}

def _reach(adj, start):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def _cycle_structure(adj, verts):
    """Cycle census of the induced subgraph on `verts`.

    Returns (at_least_two_cycles, cycles) where cycles lists every
    cycle-SCC as a vertex list in successor order; the list is only
    meaningful when the first component is False (then each cycle-SCC is
    a simple cycle).
    """
    sub = {u: tuple(v for v in adj[u] if v in verts) for u in verts}
    reach = {u: _reach(sub, u) for u in verts}
    seen = set()
    sccs = []
    for u in sorted(verts):
        if u in seen:
            continue
        comp = {v for v in reach[u] if u in reach[v]}
        comp.add(u)
        seen |= comp
        sccs.append(comp)
    cycles = []
    for comp in sccs:
        within = {u: [v for v in sub[u] if v in comp] for u in comp}
        edge_count = sum(len(vs) for vs in within.values())
        if edge_count == 0:
            continue  # transient singleton, no cycle here
        if edge_count > len(comp) or any(len(vs) != 1 for vs in within.values()):
            return True, []  # an SCC holding two distinct cycles
        start = min(comp)
        cyc = [start]
        v = within[start][0]
        while v != start:
            cyc.append(v)
            v = within[v][0]
        cycles.append(cyc)
    return len(cycles) >= 2, cycles


def _paths_to_cycle(adj, start, cycle_set):
    """Simple paths from `start` up to the first contact with the cycle."""
    paths = []
    stack = [([start], {start})]
    while stack:
        path, seen = stack.pop()
        u = path[-1]
        if u in cycle_set:
            paths.append(path)
            continue
        for v in adj[u]:
            if v not in seen:
                stack.append((path + [v], seen | {v}))
    return paths


def _rotate_to(cycle, vertex):
    i = cycle.index(vertex)
    return cycle[i:] + cycle[:i]


def _through_configuration(wpath, alpha, beta, cb_cycle, cf_cycle):
    """The eventually periodic point following alpha, w's path, beta.

    Time t carries a graph vertex; the point's letter at t is the first
    letter of that vertex's window.
    """
    t_end = len(wpath) - 1
    back = len(alpha) - 1
    fwd = len(beta) - 1
    pb, pf = len(cb_cycle), len(cf_cycle)

    def vertex_at(t):
        if t >= t_end + fwd:
            return cf_cycle[(t - t_end - fwd) % pf]
        if t >= t_end:
            return beta[t - t_end]
        if t >= 0:
            return wpath[t]
        if t >= -back:
            return alpha[-t]
        return cb_cycle[(t + back) % pb]

    left = tuple(vertex_at(t)[0] for t in range(-back - pb, -back))
    center = tuple(vertex_at(t)[0] for t in range(-back, t_end + fwd))
    right = tuple(vertex_at(t)[0] for t in range(t_end + fwd, t_end + fwd + pf))
    return Configuration(left, center, right, offset=back)


def _sft_cylinder_aperiodic(spec, word):
    q = spec.window_len
    if q == 0:
        # order-1 SFT: cycles are the allowed self-loops
        allowed = spec.out[()]
        return len(allowed) >= 2
    if len(word) < q:
        return any(_sft_cylinder_aperiodic(spec, u)
                   for u in spec.words(q) if u[:len(word)] == word)
    wpath = [word[i:i + q] for i in range(len(word) - q + 1)]
    fwd, bwd = _forward_adj(spec), _backward_adj(spec)
    r_fwd = _reach(fwd, wpath[-1])
    many, f_cycles = _cycle_structure(fwd, r_fwd)
    if many:
        return True
    r_bwd = _reach(bwd, wpath[0])
    many, b_cycles = _cycle_structure(fwd, r_bwd)
    if many:
        return True
    (cf,) = f_cycles
    (cb,) = b_cycles
    # single cycle on each side: finitely many through-points, test each
    betas = _paths_to_cycle(fwd, wpath[-1], set(cf))
    alphas = _paths_to_cycle(bwd, wpath[0], set(cb))
    for alpha in alphas:
        cb_rot = _rotate_to(cb, alpha[-1])
        for beta in betas:
            cf_rot = _rotate_to(cf, beta[-1])
            x = _through_configuration(wpath, alpha, beta, cb_rot, cf_rot)
            assert x.window(0, len(word)) == word
            if not x.is_periodic():
                return True
    return False


def cylinder_has_aperiodic(spec, word):
    """Whether some aperiodic point carries `word` at positions 0..|w|-1."""
    word = tuple(word)
    if not spec.contains(word):
        raise ValueError(f"word {word!r} not in the language")
    if isinstance(spec, SparseSpec):
        # every point with at least one marker is aperiodic
        has_marker = any(a != spec.background for a in word)
        return has_marker or bool(spec.families)
    if isinstance(spec, ProductSpec):
        u = tuple(a for a, _ in word)
        v = tuple(b for _, b in word)
        return (cylinder_has_aperiodic(spec.factor_left, u)
                or cylinder_has_aperiodic(spec.factor_right, v))
    return _sft_cylinder_aperiodic(spec, word)


# -- the removal bound -------------------------------------------------------

@dataclass(frozen=True)
class RemovalBoundReport:
    word: tuple
    rows: tuple  # (n, lhs, rhs, slack) for |w| <= n <= n_max
    violations: tuple  # rows with lhs > rhs

    @property
    def ok(self):
        return not self.violations


def verify_removal_bound(spec, word, n_max):
    """Check P_{X(w)}(n) <= P_X(n) - (n-|w|+1) on |w| <= n <= n_max."""
    word = tuple(word)
    if not cylinder_has_aperiodic(spec, word):
        raise NoAperiodicPointError(
            f"cylinder of {word!r} has no aperiodic point")
    removed = forbid(spec, word)
    rows = []
    violations = []
    for n in range(len(word), n_max + 1):
        lhs = 0 if removed.is_empty else removed.count_words(n)
        rhs = spec.count_words(n) - (n - len(word) + 1)
        row = (n, lhs, rhs, rhs - lhs)
        rows.append(row)
        if lhs > rhs:
            violations.append(row)
    return RemovalBoundReport(word, tuple(rows), tuple(violations))


# -- chain construction -------------------------------------------------------

@dataclass(frozen=True)
class ChainLevel:
    subshift: object
    word: tuple        # w_i, |w_i| <= L, extends uniquely >= 2R times
    extended: tuple    # w~_i, the unique extension, |w~_i| = |w_i| + 4R
    aperiodic_cylinder: bool


@dataclass(frozen=True)
class Chain:
    """X_0 > X_1 > ... > X_k with X_{i+1} = X_i(w~_i) and X_k(w~_k) empty.

    `levels` holds the k forbidding steps; `terminal` is level k.  The
    length bound is checked against L' = L + 4R because the words
    actually forbidden are the extended ones.
    """

    levels: tuple
    terminal: object   # ChainLevel or None for hand-built partial chains
    range_r: int
    max_len: int       # L
    effective_len: int  # L' = L + 4R
    bound_value: int = 0      # P_{X_0}(2L'-1)
    bound_holds: bool = False  # k*L' < P_{X_0}(2L'-1)
    raw_bound_value: int = 0   # P_{X_0}(2L-1), informational
    raw_bound_holds: bool = False

    @property
    def k(self):
        return len(self.levels)

    def anchors(self):
        """The extended words w~_0 .. w~_k in chain order."""
        out = [lvl.extended for lvl in self.levels]
        if self.terminal is not None:
            out.append(self.terminal.extended)
        return tuple(out)


def unique_extension(spec, word, steps):
    """The unique `steps`-fold centered extension of word, or None."""
    current = {tuple(word)}
    for _ in range(steps):
        nxt = set()
        for w in current:
            for a in spec.alphabet.letters:
                for b in spec.alphabet.letters:
                    u = (a,) + w + (b,)
                    if spec.contains(u):
                        nxt.add(u)
            if len(nxt) > 1:
                return None
        current = nxt
        if len(current) != 1:
            return None
    (u,) = current
    return u


def _smallest_unique_extender(spec, radius, max_len):
    """Canonically smallest word of length <= L extending uniquely 2R times."""
    for n in range(1, max_len + 1):
        for w in spec.words(n):
            ext = unique_extension(spec, w, 2 * radius)
            if ext is not None:
                return w, ext
    return None


def build_chain(spec, radius, max_len, cap):
    """Greedy chain construction, forbidding the extended word at each level."""
    if spec.is_empty:
        raise EmptySubshiftError("cannot build a chain over the empty subshift")
    if radius < 1 or max_len < 1:
        raise ValueError("radius and max_len must be >= 1")
    levels = []
    current = spec
    while True:
        if len(levels) >= cap:
            raise CapExceededError(f"chain exceeded {cap} levels without terminating")
        found = _smallest_unique_extender(current, radius, max_len)
        if found is None:
            raise NoUniqueExtenderError(len(levels), tuple(levels))
        w, ext = found
        level = ChainLevel(current, w, ext,
                           cylinder_has_aperiodic(current, ext))
        nxt = forbid(current, ext)
        if nxt.is_empty:
            terminal = level
            break
        levels.append(level)
        current = nxt
    k = len(levels)
    eff = max_len + 4 * radius
    bound_value = spec.count_words(2 * eff - 1)
    raw_value = spec.count_words(2 * max_len - 1)
    return Chain(
        levels=tuple(levels),
        terminal=terminal,
        range_r=radius,
        max_len=max_len,
        effective_len=eff,
        bound_value=bound_value,
        bound_holds=k * eff < bound_value,
        raw_bound_value=raw_value,
        raw_bound_holds=k * max_len < raw_value,
    )


def chain_to_json(chain):
    levels = []
    forbidden_so_far = []
    for lvl in chain.levels:
        levels.append({"forbidden_so_far": [list(w) for w in forbidden_so_far],
                       "w": list(lvl.word),
                       "w_tilde": list(lvl.extended),
                       "aperiodic_cylinder": lvl.aperiodic_cylinder})
        forbidden_so_far.append(lvl.extended)
    terminal = None
    if chain.terminal is not None:
        terminal = {"forbidden_so_far": [list(w) for w in forbidden_so_far],
                    "w": list(chain.terminal.word),
                    "w_tilde": list(chain.terminal.extended),
                    "aperiodic_cylinder": chain.terminal.aperiodic_cylinder}
    return {
        "levels": levels,
        "terminal": terminal,
        "range": chain.range_r,
        "max_len": chain.max_len,
        "effective_len": chain.effective_len,
        "k": chain.k,
        "bound": {"P(2L'-1)": chain.bound_value, "holds": chain.bound_holds},
        "raw_bound": {"P(2L-1)": chain.raw_bound_value, "holds": chain.raw_bound_holds},
    }


# -- shadowing ---------------------------------------------------------------

@dataclass(frozen=True)
class ShadowingReport:
    status: str            # "ok" | "cap-exceeded"
    distance: int | None   # minimal D, when status == "ok"
    cap: int
    target: tuple          # v, the unique T-extension of u in Y
    counterexample: tuple | None  # word failing at D-1 (or at cap)


def _all_centered_extensions(spec, word, steps):
    current = {tuple(word)}
    for _ in range(steps):
        nxt = set()
        for w in current:
            for a in spec.alphabet.letters:
                for b in spec.alphabet.letters:
                    u = (a,) + w + (b,)
                    if spec.contains(u):
                        nxt.add(u)
        current = nxt
    return current


def _shadowing_counterexample(spec, forbidden_words, u, v, t_steps, dist):
    """A word violating the shadowing condition at distance `dist`, or None."""
    n = len(u) + 2 * (dist + t_steps)
    for w in sorted(_all_centered_extensions(spec, u, dist + t_steps),
                    key=spec.alphabet.word_key):
        clean = True
        for f in forbidden_words:
            for p in range(t_steps, 2 * dist + t_steps + 1):
                if p + len(f) <= n and w[p:p + len(f)] == f:
                    clean = False
                    break
            if not clean:
                break
        if clean and w[dist:dist + len(v)] != v:
            return w
    return None


def shadowing_distance(spec, forbidden_words, u, t_steps, cap):
    """Minimal D such that u far from the forbidden words forces v around it.

    Y is X minus the forbidden words; u must extend uniquely at least
    `t_steps` times in L(Y) to v.  Every word of X carrying u centered,
    with no forbidden word starting within D of u's start, must then
    carry v centered.
    """
    u = tuple(u)
    forbidden_words = tuple(tuple(f) for f in forbidden_words)
    shrunk = spec
    for f in forbidden_words:
        shrunk = forbid(shrunk, f)
    if shrunk.is_empty or not shrunk.contains(u):
        raise HypothesisError(f"word {u!r} not in the language after forbidding")
    v = unique_extension(shrunk, u, t_steps)
    if v is None:
        raise HypothesisError(
            f"word {u!r} does not extend uniquely {t_steps} times after forbidding")
    prev_cex = None
    for dist in range(cap + 1):
        cex = _shadowing_counterexample(spec, forbidden_words, u, v, t_steps, dist)
        if cex is None:
            return ShadowingReport("ok", dist, cap, v, prev_cex)
        prev_cex = cex
    return ShadowingReport("cap-exceeded", None, cap, v, prev_cex)


# -- syndeticity of chain-word occurrences ------------------------------------

@dataclass(frozen=True)
class SyndeticReport:
    status: str           # "ok" | "cap-exceeded"
    gap: int | None       # minimal G, when status == "ok"
    distance: int         # the D used
    cap: int
    counterexample: tuple | None  # word with no qualifying occurrence at G-1


def _has_qualifying_occurrence(word, anchors, dist):
    """An anchor occurrence counting towards S_x inside this word.

    The first anchor always qualifies; a later anchor w~_i qualifies at j
    when no earlier anchor starts within [j-D, j+D+|w~_i|-1] (visible
    inside the word).
    """
    if occurrences(word, anchors[0]):
        return True
    for i in range(1, len(anchors)):
        anchor = anchors[i]
        for j in occurrences(word, anchor):
            lo = j - dist
            hi = j + dist + len(anchor) - 1
            blocked = False
            for earlier in anchors[:i]:
                starts = [s for s in occurrences(word, earlier) if lo <= s <= hi]
                if starts:
                    blocked = True
                    break
            if not blocked:
                return True
    return False


def syndetic_gap(spec, chain, dist, cap):
    """Minimal G <= cap with a qualifying anchor occurrence in every length-G word."""
    anchors = chain.anchors()
    if not anchors:
        raise InvalidChainError("chain has no levels")
    prev_cex = None
    for gap in range(1, cap + 1):
        cex = None
        for w in spec.words(gap):
            if not _has_qualifying_occurrence(w, anchors, dist):
                cex = w
                break
        if cex is None:
            return SyndeticReport("ok", gap, dist, cap, prev_cex)
        prev_cex = cex
    return SyndeticReport("cap-exceeded", None, dist, cap, prev_cex)
