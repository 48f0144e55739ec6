"""Partially commutative monoid of positive state words.

For a tree, two edge generators commute exactly when the edges share no
endpoint, and these swaps together with deleting the sink letter generate
all relations between positive words.  Three independent deciders live
here: the lexicographic normal form, the pairwise projection criterion and
an exact action-equality oracle over the residual pair graph.
"""

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .action import positive_state_word
from .errors import (
    BadGraph,
    LevelTooLarge,
    NotATree,
    PresentationMismatch,
    UnknownGenerator,
)
from .graphgroup import OrientedGraph, is_tree, line_graph_complement
from .limits import DEFAULT_LEVEL_CAP
from .mealy import MealyAutomaton
from .wordproblem import is_identity


class TracePresentation:
    """Alphabet of edge letters plus the erasable identity letter.

    `independent` holds the unordered pairs of distinct letters allowed to
    swap; the identity letter is erased, never swapped.  The letter order is
    the declaration order and fixes the normal form.
    """

    __slots__ = ("letters", "sink", "independent", "_order")

    def __init__(self, letters, independent, sink="id"):
        self.letters = tuple(letters)
        self.sink = sink
        if sink not in self.letters:
            raise PresentationMismatch("the identity letter %r must be in the alphabet" % sink)
        pairs = set()
        for a, b in independent:
            if a == b:
                raise PresentationMismatch("a letter cannot be independent of itself")
            if a not in self.letters or b not in self.letters:
                raise PresentationMismatch("independence pair (%r, %r) uses unknown letters" % (a, b))
            if sink in (a, b):
                raise PresentationMismatch("the identity letter is erased, not commuted")
            pairs.add(frozenset((a, b)))
        self.independent = frozenset(pairs)
        self._order = {x: i for i, x in enumerate(self.letters)}

    def independent_pair(self, a, b) -> bool:
        return frozenset((a, b)) in self.independent

    def order(self, letter) -> int:
        return self._order[letter]

    def __eq__(self, other):
        return (isinstance(other, TracePresentation)
                and self.letters == other.letters and self.sink == other.sink
                and self.independent == other.independent)

    def __hash__(self):
        return hash((self.letters, self.sink, self.independent))

    def __repr__(self):
        return "TracePresentation(%s; %d commuting pairs)" % (
            " ".join(self.letters), len(self.independent))


@dataclass(frozen=True)
class TraceWord:
    pres: TracePresentation
    letters: tuple

    def __post_init__(self):
        for x in self.letters:
            if x not in self.pres._order:
                raise UnknownGenerator("letter %r is not in the presentation" % (x,))

    def erased(self):
        return tuple(x for x in self.letters if x != self.pres.sink)

    def __str__(self):
        return " ".join(self.letters) if self.letters else "1"


def trace_word(pres: TracePresentation, letters) -> TraceWord:
    if isinstance(letters, str):
        letters = tuple(letters.split())
    return TraceWord(pres, tuple(letters))


def presentation_from_tree(t: OrientedGraph, sink="id") -> TracePresentation:
    """Commutation pairs are the non-incident edge pairs of the tree."""
    if not is_tree(t):
        raise NotATree("commutation presentations are built from trees")
    return TracePresentation(t.edge_names() + (sink,), line_graph_complement(t), sink=sink)


def rewrite_step(u: TraceWord):
    """Words one rewrite away: erase identity letters, or swap one independent pair."""
    pres = u.pres
    out = set()
    erased = u.erased()
    if erased != u.letters:
        out.add(erased)
    ls = u.letters
    for i in range(len(ls) - 1):
        if pres.independent_pair(ls[i], ls[i + 1]):
            out.add(ls[:i] + (ls[i + 1], ls[i]) + ls[i + 2:])
    return tuple(TraceWord(pres, w) for w in sorted(out))


def normal_form(u: TraceWord) -> TraceWord:
    """Lexicographically least equivalent word.

    Greedy: repeatedly emit the smallest letter whose predecessors in the
    remaining word all commute with it.
    """
    pres = u.pres
    remaining = list(u.erased())
    out = []
    while remaining:
        best = None
        for i, x in enumerate(remaining):
            if all(pres.independent_pair(y, x) for y in remaining[:i]):
                if best is None or pres.order(x) < pres.order(remaining[best]):
                    best = i
        out.append(remaining.pop(best))
    return TraceWord(pres, tuple(out))


def equivalent(u: TraceWord, v: TraceWord) -> bool:
    if u.pres != v.pres:
        raise PresentationMismatch("words come from different presentations")
    return normal_form(u).letters == normal_form(v).letters


def projections_equal(u: TraceWord, v: TraceWord) -> bool:
    """Projection criterion: equal on every subalphabet of dependent letters.

    Compares the erased projections to {a, b} for every pair of distinct
    non-commuting letters, and the single-letter counts.
    """
    if u.pres != v.pres:
        raise PresentationMismatch("words come from different presentations")
    pres = u.pres
    a_letters = [x for x in pres.letters if x != pres.sink]
    ue, ve = u.erased(), v.erased()
    for i, a in enumerate(a_letters):
        if ue.count(a) != ve.count(a):
            return False
        for b in a_letters[i + 1:]:
            if pres.independent_pair(a, b):
                continue
            keep = {a, b}
            if tuple(x for x in ue if x in keep) != tuple(x for x in ve if x in keep):
                return False
    return True


@dataclass(frozen=True)
class ActionEq:
    equal: bool
    witness: Optional[tuple]     # input word where the two actions first differ


def semigroup_eq_via_action(aut: MealyAutomaton, u, v) -> ActionEq:
    """Exact equality of the actions of two positive state words.

    Breadth-first over residual pairs: positive residuals never lengthen, so
    the pair space is finite; equal iff every reachable pair agrees on single
    letters.
    """
    sink = aut.sink

    def erased(word):
        return tuple(a for a in positive_state_word(aut, word) if a != sink)

    start = (erased(u), erased(v))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (p, q), prefix = queue.popleft()
        for x in aut.alphabet:
            yp, rp = _positive_step(aut, p, x)
            yq, rq = _positive_step(aut, q, x)
            if yp != yq:
                return ActionEq(False, prefix + (x,))
            pair = (rp, rq)
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, prefix + (x,)))
    return ActionEq(True, None)


def _positive_step(aut, word, x):
    """One input letter through a positive state word; residual is sink-erased."""
    sink = aut.sink
    y = x
    res = []
    for a in word:
        r = aut.next(a, y)
        y = aut.out(a, y)
        if r != sink:
            res.append(r)
    return y, tuple(res)


# -- orientation sensitivity ---------------------------------------------------

def _edge_orientation(aut: MealyAutomaton):
    """Recover tail and head of each non-sink state of a graph automaton."""
    orient = {}
    for s in aut.states:
        if s == aut.sink:
            continue
        tails = [z for z in aut.alphabet if aut.next(s, z) == s]
        if len(tails) != 1:
            raise BadGraph("state %r does not look like an oriented edge" % (s,))
        tail = tails[0]
        orient[s] = (tail, aut.out(s, tail))
    return orient


@dataclass(frozen=True)
class PositiveIdentityReport:
    status: str                  # Pass | Violations
    violations: tuple
    words_checked: int


def check_acyclic_no_positive_identity(aut: MealyAutomaton, max_len: int,
                                       cap=None) -> PositiveIdentityReport:
    """No nonempty positive word acts as the identity, given an acyclic orientation."""
    orient = _edge_orientation(aut)
    _require_no_directed_cycle(orient)
    gens = [s for s in aut.states if s != aut.sink]
    cap = DEFAULT_LEVEL_CAP if cap is None else cap
    total = sum(len(gens) ** n for n in range(1, max_len + 1))
    if total > cap:
        raise LevelTooLarge("positive sweep has %d words, cap is %d" % (total, cap))
    violations = []
    checked = 0
    words = [()]
    for _ in range(max_len):
        words = [w + (g,) for w in words for g in gens]
        for w in words:
            checked += 1
            if is_identity(aut, w).identity:
                violations.append(w)
    status = "Pass" if not violations else "Violations"
    return PositiveIdentityReport(status, tuple(violations), checked)


def _require_no_directed_cycle(orient):
    succ = {}
    for tail, head in orient.values():
        succ.setdefault(tail, []).append(head)
        succ.setdefault(head, [])
    color = {v: 0 for v in succ}
    for root in succ:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if color[u] == 1:
                    raise BadGraph("orientation has a directed cycle")
                if color[u] == 0:
                    color[u] = 1
                    stack.append((u, iter(succ[u])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()


def check_cycle_torsion(aut: MealyAutomaton, w, k: int) -> bool:
    """For an oriented cycle word of length k, test the positive relation at power k - 1."""
    word = positive_state_word(aut, w)
    if len(word) != k or k < 2:
        raise BadGraph("cycle word length must equal k >= 2")
    if len(set(word)) != len(word):
        raise BadGraph("cycle word must not repeat an edge")
    orient = _edge_orientation(aut)
    for a, b in zip(word, word[1:] + word[:1]):
        if a not in orient:
            raise BadGraph("letter %r is not an edge state" % (a,))
        if orient[a][1] != orient[b][0]:
            raise BadGraph("letters do not chain into an oriented cycle")
    return is_identity(aut, tuple(word) * (k - 1)).identity
