"""Finite Mealy transducers and the constructions built on them.

A machine reads a letter x in state s, emits ``out(s, x)`` and moves to
``next(s, x)``; both maps are total on states x alphabet.  State and letter
identifiers are arbitrary hashable tokens (plain strings for user-facing
machines); all orderings are the declared insertion order, which keeps every
derived object and every textual export deterministic.

Formal inverses of tokens are tagged with a private sentinel rather than by
name mangling, so inverting twice gives back the original token and machines
stay exactly comparable.
"""

from collections import deque
import itertools

from .errors import (
    AlphabetMismatch,
    BadPower,
    BadSink,
    DuplicateTransition,
    FormatError,
    MissingTransition,
    NoSink,
    NotInvertible,
)

_MAX_POWER_STATES = 10 ** 6


class _Tag:
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label

    def __repr__(self):
        return self.label


INV = _Tag("INV")      # marks a formally inverted token
COPY = _Tag("COPY")    # marks the right copy in a disjoint union, on collision


def inverse_symbol(token):
    """Formal inverse of a state or letter token; an involution."""
    if isinstance(token, tuple) and len(token) == 2 and token[0] is INV:
        return token[1]
    return (INV, token)


def is_inverse_symbol(token):
    return isinstance(token, tuple) and len(token) == 2 and token[0] is INV


def symbol_str(token) -> str:
    """Readable form of a token: a, a^-1, (a,b), b'."""
    if is_inverse_symbol(token):
        return symbol_str(token[1]) + "^-1"
    if isinstance(token, tuple) and len(token) == 2 and token[0] is COPY:
        return symbol_str(token[1]) + "'"
    if isinstance(token, tuple):
        return "(" + ",".join(symbol_str(p) for p in token) + ")"
    return str(token)


class MealyAutomaton:
    """Immutable deterministic letter-to-letter transducer.

    `next_map` and `out_map` are dicts keyed by (state, letter).  A declared
    sink must copy every letter and absorb every transition.  Invertibility
    (every state's output row a permutation of the alphabet) is computed once
    at construction.
    """

    __slots__ = ("states", "alphabet", "sink", "invertible",
                 "_next", "_out", "_sidx", "_aidx", "_cache", "_hash")

    def __init__(self, states, alphabet, next_map, out_map, sink=None):
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        if len(set(self.states)) != len(self.states):
            raise FormatError("duplicate state identifiers")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise FormatError("duplicate alphabet letters")
        if not self.states or not self.alphabet:
            raise FormatError("states and alphabet must be nonempty")
        self._next = dict(next_map)
        self._out = dict(out_map)
        sset, aset = set(self.states), set(self.alphabet)
        for s in self.states:
            for x in self.alphabet:
                key = (s, x)
                if key not in self._next or key not in self._out:
                    raise MissingTransition(
                        "no transition for state %s on letter %s"
                        % (symbol_str(s), symbol_str(x)))
                if self._next[key] not in sset:
                    raise FormatError(
                        "transition (%s, %s) targets undeclared state %s"
                        % (symbol_str(s), symbol_str(x), symbol_str(self._next[key])))
                if self._out[key] not in aset:
                    raise FormatError(
                        "transition (%s, %s) outputs undeclared letter %s"
                        % (symbol_str(s), symbol_str(x), symbol_str(self._out[key])))
        if len(self._next) != len(self.states) * len(self.alphabet):
            extra = set(self._next) - set(itertools.product(self.states, self.alphabet))
            raise FormatError("transitions outside states x alphabet: %r" % (sorted(map(str, extra)),))
        self.sink = sink
        if sink is not None:
            if sink not in sset:
                raise BadSink("declared sink %s is not a state" % symbol_str(sink))
            for x in self.alphabet:
                if self._out[(sink, x)] != x or self._next[(sink, x)] != sink:
                    raise BadSink(
                        "sink %s must copy and absorb every letter" % symbol_str(sink))
        self.invertible = all(
            set(self._out[(s, x)] for x in self.alphabet) == aset for s in self.states)
        self._sidx = {s: i for i, s in enumerate(self.states)}
        self._aidx = {x: i for i, x in enumerate(self.alphabet)}
        self._cache = {}
        self._hash = None

    # -- raw access ---------------------------------------------------

    def next(self, state, letter):
        return self._next[(state, letter)]

    def out(self, state, letter):
        return self._out[(state, letter)]

    def out_inverse(self, state, letter):
        """The letter y with out(state, y) == letter; state must be invertible."""
        inv = self._cache.get("outinv")
        if inv is None:
            inv = self._cache["outinv"] = {}
        row = inv.get(state)
        if row is None:
            row = inv[state] = {self._out[(state, x)]: x for x in self.alphabet}
            if len(row) != len(self.alphabet):
                raise NotInvertible(
                    "state %s does not act by a permutation" % symbol_str(state))
        return row[letter]

    def transitions(self):
        """Yield (state, letter, next, out) in declaration order."""
        for s in self.states:
            for x in self.alphabet:
                yield s, x, self._next[(s, x)], self._out[(s, x)]

    def state_index(self, state):
        return self._sidx[state]

    def letter_index(self, letter):
        return self._aidx[letter]

    # -- equality is exact table equality ------------------------------

    def __eq__(self, other):
        if not isinstance(other, MealyAutomaton):
            return NotImplemented
        return (self.states == other.states and self.alphabet == other.alphabet
                and self.sink == other.sink and self._next == other._next
                and self._out == other._out)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            table = tuple(
                (self._sidx[s], self._aidx[x],
                 self._sidx[self._next[(s, x)]], self._aidx[self._out[(s, x)]])
                for s in self.states for x in self.alphabet)
            self._hash = hash((self.states, self.alphabet, self.sink, table))
        return self._hash

    def __repr__(self):
        return "MealyAutomaton(%d states, %d letters%s)" % (
            len(self.states), len(self.alphabet),
            ", sink=%s" % symbol_str(self.sink) if self.sink is not None else "")


def make_automaton(states, alphabet, transitions, sink=None) -> MealyAutomaton:
    """Build a machine from (state, letter, next, out) records.

    The records must cover states x alphabet exactly once; a declared sink
    has to satisfy the sink laws.
    """
    next_map, out_map = {}, {}
    for rec in transitions:
        s, x, t, y = rec
        if (s, x) in next_map:
            raise DuplicateTransition(
                "duplicate transition for state %s on letter %s"
                % (symbol_str(s), symbol_str(x)))
        next_map[(s, x)] = t
        out_map[(s, x)] = y
    return MealyAutomaton(states, alphabet, next_map, out_map, sink=sink)


def is_invertible(aut: MealyAutomaton) -> bool:
    """True iff every state's output map is a bijection on the alphabet."""
    return aut.invertible


def with_sink(aut: MealyAutomaton, sink) -> MealyAutomaton:
    """The same table with a different declared sink (validated)."""
    return MealyAutomaton(aut.states, aut.alphabet, aut._next, aut._out, sink=sink)


def inverse(aut: MealyAutomaton) -> MealyAutomaton:
    """The machine of formal inverses: each s -(x|y)-> t becomes s' -(y|x)-> t'."""
    if not aut.invertible:
        raise NotInvertible("cannot invert a non-invertible automaton")
    next_map, out_map = {}, {}
    for s, x, t, y in aut.transitions():
        si = inverse_symbol(s)
        next_map[(si, y)] = inverse_symbol(t)
        out_map[(si, y)] = x
    states = tuple(inverse_symbol(s) for s in aut.states)
    sink = inverse_symbol(aut.sink) if aut.sink is not None else None
    return MealyAutomaton(states, aut.alphabet, next_map, out_map, sink=sink)


def disjoint_union(a: MealyAutomaton, b: MealyAutomaton) -> MealyAutomaton:
    """Tagged union of two machines over the same (identically ordered) alphabet.

    State names are kept; colliding states of `b` get a copy tag.  The sinks
    are not merged; the declared sink of the union is `a`'s when present.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("disjoint union requires the same alphabet")
    taken = set(a.states)
    rename = {s: ((COPY, s) if s in taken else s) for s in b.states}
    next_map, out_map = {}, {}
    for s, x, t, y in a.transitions():
        next_map[(s, x)] = t
        out_map[(s, x)] = y
    for s, x, t, y in b.transitions():
        next_map[(rename[s], x)] = rename[t]
        out_map[(rename[s], x)] = y
    states = a.states + tuple(rename[s] for s in b.states)
    if a.sink is not None:
        sink = a.sink
    elif b.sink is not None:
        sink = rename[b.sink]
    else:
        sink = None
    return MealyAutomaton(states, a.alphabet, next_map, out_map, sink=sink)


def dual(aut: MealyAutomaton) -> MealyAutomaton:
    """Swap states and letters: x -(s|t)-> y here iff s -(x|y)-> t there.

    The dual of a sink is not a sink, so no sink is declared on the result.
    Applying dual twice returns a machine equal to the original.
    """
    next_map, out_map = {}, {}
    for s, x, t, y in aut.transitions():
        next_map[(x, s)] = y
        out_map[(x, s)] = t
    return MealyAutomaton(aut.alphabet, aut.states, next_map, out_map, sink=None)


def enriched_dual(aut: MealyAutomaton) -> MealyAutomaton:
    """Dual of aut joined with its inverse; input letters are states and formal inverses."""
    if not aut.invertible:
        raise NotInvertible("enriched dual requires an invertible automaton")
    return dual(disjoint_union(aut, inverse(aut)))


def power(aut: MealyAutomaton, n: int) -> MealyAutomaton:
    """n-th power: states are n-tuples, the first coordinate consumes the input first."""
    if not isinstance(n, int) or n < 1:
        raise BadPower("power requires an integer n >= 1, got %r" % (n,))
    if len(aut.states) ** n > _MAX_POWER_STATES:
        raise BadPower("power automaton would have %d^%d states" % (len(aut.states), n))
    states = tuple(itertools.product(aut.states, repeat=n))
    next_map, out_map = {}, {}
    for tup in states:
        for x in aut.alphabet:
            y = x
            parts = []
            for s in tup:
                parts.append(aut.next(s, y))
                y = aut.out(s, y)
            next_map[(tup, x)] = tuple(parts)
            out_map[(tup, x)] = y
    return MealyAutomaton(states, aut.alphabet, next_map, out_map, sink=None)


def _non_sink_edges(aut):
    """Multidigraph on non-sink states: list of (s, t) with multiplicity."""
    edges = []
    for s in aut.states:
        if s == aut.sink:
            continue
        for x in aut.alphabet:
            t = aut.next(s, x)
            if t != aut.sink:
                edges.append((s, t))
    return edges


def _strongly_connected_components(nodes, succ):
    """Iterative Kosaraju; components come out in a deterministic order."""
    order = []
    seen = set()
    for root in nodes:
        if root in seen:
            continue
        stack = [(root, iter(succ[root]))]
        seen.add(root)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    pred = {n: [] for n in nodes}
    for n in nodes:
        for m in succ[n]:
            pred[m].append(n)
    comp = {}
    comps = []
    for root in reversed(order):
        if root in comp:
            continue
        current = [root]
        comp[root] = len(comps)
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for m in pred[node]:
                if m not in comp:
                    comp[m] = len(comps)
                    current.append(m)
                    queue.append(m)
        comps.append(current)
    return comp, comps


def is_bounded(aut: MealyAutomaton) -> bool:
    """Sink-avoiding path counts stay bounded.

    Criterion: in the transition multigraph restricted to non-sink states,
    every vertex of a cyclic strongly connected component has exactly one
    outgoing edge inside its component (so each such component is one simple
    cycle), and no directed path joins two distinct cyclic components.
    """
    if aut.sink is None:
        raise NoSink("boundedness is defined relative to a declared sink")
    nodes = [s for s in aut.states if s != aut.sink]
    if not nodes:
        return True
    edges = _non_sink_edges(aut)
    succ = {n: [] for n in nodes}
    for s, t in edges:
        succ[s].append(t)
    comp, comps = _strongly_connected_components(nodes, succ)
    cyclic = []
    for ci, members in enumerate(comps):
        if len(members) > 1:
            cyclic.append(ci)
        elif any(s == t == members[0] for s, t in edges):
            cyclic.append(ci)
    cyclic_set = set(cyclic)
    for ci in cyclic:
        for v in comps[ci]:
            internal = sum(1 for t in succ[v] if comp[t] == ci)
            if internal != 1:
                return False
    # condensation reachability between distinct cyclic components
    comp_succ = {i: set() for i in range(len(comps))}
    for s, t in edges:
        if comp[s] != comp[t]:
            comp_succ[comp[s]].add(comp[t])
    for start in cyclic:
        seen = set()
        queue = deque(comp_succ[start])
        while queue:
            ci = queue.popleft()
            if ci in seen:
                continue
            seen.add(ci)
            if ci in cyclic_set:
                return False
            queue.extend(comp_succ[ci])
    return True


def sink_avoiding_path_count(aut: MealyAutomaton, n: int) -> int:
    """Number of length-n directed paths in the transition diagram avoiding the sink."""
    if aut.sink is None:
        raise NoSink("path counting needs a declared sink")
    nodes = [s for s in aut.states if s != aut.sink]
    counts = {s: 1 for s in nodes}
    for _ in range(n):
        nxt = {s: 0 for s in nodes}
        for s in nodes:
            c = counts[s]
            if not c:
                continue
            for x in aut.alphabet:
                t = aut.next(s, x)
                if t != aut.sink:
                    nxt[t] += c
        counts = nxt
    return sum(counts.values())


def bisimulation_classes(aut: MealyAutomaton):
    """Coarsest partition with equal output rows and equivalent successors.

    Returned as a tuple of tuples of states; classes and members follow the
    state declaration order.
    """
    block = {}
    sig_ids = {}
    for s in aut.states:
        sig = tuple(aut.out(s, x) for x in aut.alphabet)
        if sig not in sig_ids:
            sig_ids[sig] = len(sig_ids)
        block[s] = sig_ids[sig]
    while True:
        fresh_ids = {}
        fresh = {}
        for s in aut.states:
            sig = (block[s], tuple(block[aut.next(s, x)] for x in aut.alphabet))
            if sig not in fresh_ids:
                fresh_ids[sig] = len(fresh_ids)
            fresh[s] = fresh_ids[sig]
        if fresh == block:
            break
        block = fresh
    groups = {}
    for s in aut.states:
        groups.setdefault(block[s], []).append(s)
    ordered = sorted(groups.values(), key=lambda g: aut.state_index(g[0]))
    return tuple(tuple(g) for g in ordered)


def bisimulation_quotient(aut: MealyAutomaton) -> MealyAutomaton:
    """Quotient by bisimulation; representatives are the first members of each class."""
    classes = bisimulation_classes(aut)
    rep = {}
    for cls in classes:
        for s in cls:
            rep[s] = cls[0]
    states = tuple(cls[0] for cls in classes)
    next_map, out_map = {}, {}
    for s in states:
        for x in aut.alphabet:
            next_map[(s, x)] = rep[aut.next(s, x)]
            out_map[(s, x)] = aut.out(s, x)
    sink = rep[aut.sink] if aut.sink is not None else None
    return MealyAutomaton(states, aut.alphabet, next_map, out_map, sink=sink)


def is_reduced(aut: MealyAutomaton) -> bool:
    """True iff no two distinct states are bisimilar."""
    return all(len(cls) == 1 for cls in bisimulation_classes(aut))


# -- DOT export ------------------------------------------------------------

def _dot_quote(text: str) -> str:
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(aut: MealyAutomaton) -> str:
    """DOT rendering of the transition diagram; output is deterministic."""
    lines = ["digraph mealy {", "  rankdir=LR;"]
    for s in aut.states:
        shape = "doublecircle" if s == aut.sink else "circle"
        lines.append("  %s [shape=%s];" % (_dot_quote(symbol_str(s)), shape))
    for s, x, t, y in aut.transitions():
        lines.append("  %s -> %s [label=%s];" % (
            _dot_quote(symbol_str(s)), _dot_quote(symbol_str(t)),
            _dot_quote("%s|%s" % (symbol_str(x), symbol_str(y)))))
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- textual format ---------------------------------------------------------
#
# states: a b c id
# alphabet: 0 1 2 3
# sink: id
# transition: a 0 a 1        (state input next output)
#
# '#' starts a comment; unknown fields are rejected.

def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def load_automaton(text: str) -> MealyAutomaton:
    states = alphabet = None
    sink = None
    sink_seen = False
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise FormatError("line %d: expected 'field: ...'" % lineno)
        key = key.strip()
        fields = rest.split()
        if key == "states":
            if states is not None:
                raise FormatError("line %d: duplicate states field" % lineno)
            states = fields
        elif key == "alphabet":
            if alphabet is not None:
                raise FormatError("line %d: duplicate alphabet field" % lineno)
            alphabet = fields
        elif key == "sink":
            if sink_seen:
                raise FormatError("line %d: duplicate sink field" % lineno)
            if len(fields) != 1:
                raise FormatError("line %d: sink takes exactly one state" % lineno)
            sink = fields[0]
            sink_seen = True
        elif key == "transition":
            if len(fields) != 4:
                raise FormatError(
                    "line %d: transition takes 'state input next output'" % lineno)
            records.append(tuple(fields))
        else:
            raise FormatError("line %d: unknown field %r" % (lineno, key))
    if states is None or alphabet is None:
        raise FormatError("automaton file needs both states and alphabet fields")
    return make_automaton(states, alphabet, records, sink=sink)


def dump_automaton(aut: MealyAutomaton) -> str:
    names = {}
    for tok in list(aut.states) + list(aut.alphabet):
        name = symbol_str(tok)
        if any(c.isspace() for c in name) or "#" in name:
            raise FormatError("token %r cannot be serialized" % name)
        names[tok] = name
    lines = ["states: " + " ".join(names[s] for s in aut.states),
             "alphabet: " + " ".join(names[x] for x in aut.alphabet)]
    if aut.sink is not None:
        lines.append("sink: " + names[aut.sink])
    for s, x, t, y in aut.transitions():
        lines.append("transition: %s %s %s %s" % (names[s], names[x], names[t], names[y]))
    return "\n".join(lines) + "\n"
