"""Coset machines from finite permutation actions.

A finite-index subgroup is given as the stabilizer of a basepoint under a
permutation action of the generators.  The coset graph gets outputs: arcs
of a breadth-first spanning tree carry an assigned generator, all other
arcs carry the identity, reverse arcs carry formal inverses.  Reading that
decorated graph as the enriched dual of a machine over the generator set
yields an invertible transducer whose state g maps coset p to p.g.
"""

from collections import deque
from dataclasses import dataclass

from .action import iter_reduced_words
from .errors import BadAction, BadAssignment, FormatError, LevelTooLarge
from .graphgroup import SINK_NAME
from .limits import DEFAULT_LEVEL_CAP
from .mealy import MealyAutomaton, enriched_dual, inverse_symbol


class FiniteAction:
    """Permutations of {0..degree-1}, one per generator, plus a basepoint.

    A generator named like the sink must act trivially; it is dropped from
    the stored generator list and re-added as the sink of built machines.
    """

    __slots__ = ("generators", "degree", "perms", "basepoint")

    def __init__(self, generators, degree, perms, basepoint=0):
        if degree < 1:
            raise BadAction("degree must be >= 1")
        if not 0 <= basepoint < degree:
            raise BadAction("basepoint %d outside 0..%d" % (basepoint, degree - 1))
        names = []
        cooked = {}
        for g in generators:
            perm = tuple(perms[g])
            if sorted(perm) != list(range(degree)):
                raise BadAction("images of %r are not a permutation of 0..%d"
                                % (g, degree - 1))
            if g == SINK_NAME:
                if perm != tuple(range(degree)):
                    raise BadAction("the identity generator must act trivially")
                continue
            if g in names:
                raise BadAction("duplicate generator %r" % g)
            names.append(g)
            cooked[g] = perm
        if not names:
            raise BadAction("need at least one non-identity generator")
        self.generators = tuple(names)
        self.degree = degree
        self.perms = cooked
        self.basepoint = basepoint

    def act(self, point: int, gen: str) -> int:
        return self.perms[gen][point]

    def act_inverse(self, point: int, gen: str) -> int:
        return self.perms[gen].index(point)

    def __repr__(self):
        return "FiniteAction(%s on %d points, basepoint %d)" % (
            " ".join(self.generators), self.degree, self.basepoint)


class SchreierGraph:
    """Orbit of the basepoint with one labeled arc per generator and point."""

    __slots__ = ("action", "vertices", "arcs")

    def __init__(self, action, vertices, arcs):
        self.action = action
        self.vertices = tuple(vertices)
        self.arcs = tuple(arcs)      # (p, gen, q) with q = p.gen, positive arcs

    def __repr__(self):
        return "SchreierGraph(%d cosets, %d arcs)" % (len(self.vertices), len(self.arcs))


def schreier_graph(action: FiniteAction) -> SchreierGraph:
    """Coset graph on the basepoint orbit, vertices in discovery order.

    Forward arcs alone reach the whole orbit: the generators permute a
    finite set, so their positive powers already contain their inverses.
    """
    seen = {action.basepoint}
    order = [action.basepoint]
    queue = deque([action.basepoint])
    while queue:
        p = queue.popleft()
        for g in action.generators:
            q = action.act(p, g)
            if q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
    arcs = [(p, g, action.act(p, g))
            for p in order for g in action.generators]
    return SchreierGraph(action, order, arcs)


def spanning_tree(sch: SchreierGraph):
    """Breadth-first spanning tree from the basepoint, as a tuple of positive arcs.

    From each vertex the forward arcs are tried in declared generator
    order, which makes the tree deterministic.
    """
    action = sch.action
    root = action.basepoint
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for g in action.generators:
            q = action.act(p, g)
            if q not in seen:
                seen.add(q)
                tree.append((p, g, q))
                queue.append(q)
    return tuple(tree)


def _arc_decorations(action, assignment):
    """Output decoration for every positive arc of the coset graph.

    Spanning tree arcs carry an assigned generator (their own label by
    default), all other arcs the sink.  The degenerate single-coset graph
    has an empty tree; there every loop keeps its own label, so the
    construction stays visibly non-shortening instead of collapsing to the
    trivial machine.
    """
    sch = schreier_graph(action)
    tree = spanning_tree(sch)
    assignable = set(tree)
    if len(sch.vertices) == 1:
        assignable = set(sch.arcs)
    states = set(action.generators) | {SINK_NAME}
    decoration = {}
    for arc in sch.arcs:
        decoration[arc] = arc[1] if arc in assignable else SINK_NAME
    if assignment:
        by_key = {(p, g): (p, g, q) for p, g, q in assignable}
        for key, out in assignment.items():
            if key not in by_key:
                raise BadAssignment("(%r, %r) is not an assignable arc" % key)
            if out not in states:
                raise BadAssignment("output %r is not a state" % (out,))
            decoration[by_key[key]] = out
    return sch, decoration


def build_reducible_automaton(action: FiniteAction, assignment=None) -> MealyAutomaton:
    """Transducer over the generators acting on the cosets.

    State g sends coset p to p.g and restricts to the output decorating the
    arc (p, g): the assigned generator on spanning tree arcs, the sink
    elsewhere.  `assignment` optionally maps (tail, generator) pairs of tree
    arcs to output states.
    """
    sch, decoration = _arc_decorations(action, assignment)
    alphabet = tuple(str(p) for p in sch.vertices)
    states = action.generators + (SINK_NAME,)
    next_map, out_map = {}, {}
    for p, g, q in sch.arcs:
        out_map[(g, str(p))] = str(q)
        next_map[(g, str(p))] = decoration[(p, g, q)]
    for p in sch.vertices:
        next_map[(SINK_NAME, str(p))] = SINK_NAME
        out_map[(SINK_NAME, str(p))] = str(p)
    return MealyAutomaton(states, alphabet, next_map, out_map, sink=SINK_NAME)


def decorated_schreier_graph(action: FiniteAction, assignment=None) -> MealyAutomaton:
    """The decorated coset graph itself, keyed like the enriched dual of the machine.

    States are the cosets; input letters are the generators, the sink and
    their formal inverses; outputs are the arc decorations, with reverse
    arcs carrying the formal inverse of the forward decoration.
    """
    sch, decoration = _arc_decorations(action, assignment)
    states = tuple(str(p) for p in sch.vertices)
    gens = action.generators + (SINK_NAME,)
    letters = gens + tuple(inverse_symbol(g) for g in gens)
    next_map, out_map = {}, {}
    for p, g, q in sch.arcs:
        dec = decoration[(p, g, q)]
        next_map[(str(p), g)] = str(q)
        out_map[(str(p), g)] = dec
        next_map[(str(q), inverse_symbol(g))] = str(p)
        out_map[(str(q), inverse_symbol(g))] = inverse_symbol(dec)
    for p in sch.vertices:
        next_map[(str(p), SINK_NAME)] = str(p)
        out_map[(str(p), SINK_NAME)] = SINK_NAME
        next_map[(str(p), inverse_symbol(SINK_NAME))] = str(p)
        out_map[(str(p), inverse_symbol(SINK_NAME))] = inverse_symbol(SINK_NAME)
    return MealyAutomaton(states, letters, next_map, out_map, sink=None)


@dataclass(frozen=True)
class LoopReport:
    status: str               # Pass | Violations
    violations: tuple         # (vertex, word letters) pairs
    words_checked: int


def verify_loop_shortening(aut: MealyAutomaton, max_len: int, cap=None) -> LoopReport:
    """Every reduced word labeling a closed walk must shorten after erasing sinks.

    Walks every reduced word over the generators from every vertex of the
    enriched dual; when the walk closes, the output word with identity
    letters erased has to be strictly shorter than the input.
    """
    ed = enriched_dual(aut)
    gens = [s for s in aut.states if s != aut.sink]
    cap = DEFAULT_LEVEL_CAP if cap is None else cap
    total = sum((2 * len(gens)) ** n for n in range(1, max_len + 1))
    if total * len(ed.states) > cap:
        raise LevelTooLarge("loop sweep would walk %d words" % (total * len(ed.states)))
    erasable = {aut.sink, inverse_symbol(aut.sink)}
    violations = []
    checked = 0
    for word in iter_reduced_words(gens, max_len, include_empty=False):
        tokens = [g if s > 0 else inverse_symbol(g) for g, s in word]
        for q in ed.states:
            checked += 1
            v = q
            outputs = []
            for tok in tokens:
                outputs.append(ed.out(v, tok))
                v = ed.next(v, tok)
            if v != q:
                continue
            erased = [o for o in outputs if o not in erasable]
            if len(erased) >= len(word):
                violations.append((q, word))
    status = "Pass" if not violations else "Violations"
    return LoopReport(status, tuple(violations), checked)


# -- textual format -------------------------------------------------------------
#
# degree 3
# basepoint 0
# a: 1 2 0          (images of 0..degree-1)

def load_action(text: str) -> FiniteAction:
    degree = None
    basepoint = 0
    order = []
    perms = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        pos = raw.find("#")
        line = (raw if pos < 0 else raw[:pos]).strip()
        if not line:
            continue
        if line.startswith("degree"):
            try:
                degree = int(line.split()[1])
            except (IndexError, ValueError):
                raise FormatError("line %d: degree takes one integer" % lineno)
            continue
        if line.startswith("basepoint"):
            try:
                basepoint = int(line.split()[1])
            except (IndexError, ValueError):
                raise FormatError("line %d: basepoint takes one integer" % lineno)
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise FormatError("line %d: expected 'name: images'" % lineno)
        name = name.strip()
        try:
            images = tuple(int(tok) for tok in rest.split())
        except ValueError:
            raise FormatError("line %d: images must be integers" % lineno)
        if name in perms:
            raise FormatError("line %d: duplicate generator %r" % (lineno, name))
        order.append(name)
        perms[name] = images
    if degree is None:
        raise FormatError("action file needs a degree line")
    for name, images in perms.items():
        if len(images) != degree:
            raise FormatError("generator %r lists %d images for degree %d"
                              % (name, len(images), degree))
    return FiniteAction(order, degree, perms, basepoint=basepoint)


def dump_action(action: FiniteAction) -> str:
    lines = ["degree %d" % action.degree, "basepoint %d" % action.basepoint]
    for g in action.generators:
        lines.append("%s: %s" % (g, " ".join(str(i) for i in action.perms[g])))
    return "\n".join(lines) + "\n"


def load_assignment(text: str) -> dict:
    """Lines of 'tail generator output' keyed by spanning tree arcs."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        pos = raw.find("#")
        line = (raw if pos < 0 else raw[:pos]).strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise FormatError("line %d: expected 'tail generator output'" % lineno)
        try:
            tail = int(fields[0])
        except ValueError:
            raise FormatError("line %d: tail must be an integer coset" % lineno)
        out[(tail, fields[1])] = fields[2]
    return out
