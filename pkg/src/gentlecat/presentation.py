"""Quivers with quadratic monomial relations: parsing, gentleness validation,
path bases and random instances.

Paths are written left to right but composed right to left: in the written
word a1...am the arrow am is traversed first, so source(p) = source(am) and
target(p) = target(a1).  A relation is an ordered pair (b, a) declaring the
length-2 composite "first a then b" to be zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class PresentationError(ValueError):
    """Malformed presentation text or construction data."""


@dataclass(frozen=True)
class Path:
    """A nonzero path of a quiver.

    arrows: arrow names in written order (they compose right to left)
    source: start vertex, the source of the rightmost arrow
    target: end vertex, the target of the leftmost arrow

    The empty arrow tuple is the trivial path at source == target.
    """

    arrows: tuple
    source: str
    target: str

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def first_arrow(self):
        """The arrow traversed first (rightmost in the written word)."""
        return self.arrows[-1]

    def last_arrow(self):
        """The arrow traversed last (leftmost in the written word)."""
        return self.arrows[0]

    def __str__(self):
        if not self.arrows:
            return "e_" + str(self.source)
        return "*".join(self.arrows)


@dataclass(frozen=True)
class ValidationIssue:
    condition: str
    witness: str

    def __str__(self):
        return f"{self.condition}: {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    issues: tuple

    def conditions(self):
        return {i.condition for i in self.issues}

    def __str__(self):
        if self.valid:
            return "valid gentle presentation"
        return "invalid: " + "; ".join(str(i) for i in self.issues)


class GentlePresentation:
    """A finite quiver together with a set of quadratic monomial relations.

    Construction only checks naming and endpoint resolution; whether the data
    actually defines a finite dimensional gentle algebra is the job of
    validate(), which returns a report naming every violated condition.
    """

    def __init__(self, vertices, arrows, relations, name="Lambda"):
        self.name = name
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex id")
        vset = set(self.vertices)

        self.arrow_order = []
        self.arrow_source = {}
        self.arrow_target = {}
        for aname, src, tgt in arrows:
            aname, src, tgt = str(aname), str(src), str(tgt)
            if aname in self.arrow_source:
                raise PresentationError(f"duplicate arrow name {aname!r}")
            if src not in vset or tgt not in vset:
                raise PresentationError(
                    f"arrow {aname!r} uses unknown vertex {src!r} or {tgt!r}")
            self.arrow_order.append(aname)
            self.arrow_source[aname] = src
            self.arrow_target[aname] = tgt

        rels = []
        for b, a in relations:
            b, a = str(b), str(a)
            if b not in self.arrow_source or a not in self.arrow_source:
                raise PresentationError(f"relation ({b}, {a}) uses unknown arrow")
            rels.append((b, a))
        if len(set(rels)) != len(rels):
            raise PresentationError("duplicate relation")
        self.relations = frozenset(rels)

    # -- basic incidence -------------------------------------------------

    def s(self, arrow):
        return self.arrow_source[arrow]

    def t(self, arrow):
        return self.arrow_target[arrow]

    def arrows_from(self, v):
        return [a for a in self.arrow_order if self.arrow_source[a] == v]

    def arrows_into(self, v):
        return [a for a in self.arrow_order if self.arrow_target[a] == v]

    # -- paths -----------------------------------------------------------

    def trivial(self, v):
        v = str(v)
        if v not in self.vertices:
            raise PresentationError(f"unknown vertex {v!r}")
        return Path((), v, v)

    def path(self, arrows):
        """Build the path with the given written word, checking composability.

        Does not check against the relations; use is_zero for that.
        """
        arrows = tuple(arrows)
        if not arrows:
            raise PresentationError("trivial path needs a vertex; use trivial()")
        for a in arrows:
            if a not in self.arrow_source:
                raise PresentationError(f"unknown arrow {a!r}")
        for i in range(len(arrows) - 1):
            # t(a_{i+1}) = s(a_i) in written order: right neighbour feeds left
            if self.arrow_target[arrows[i + 1]] != self.arrow_source[arrows[i]]:
                raise PresentationError(
                    f"arrows {arrows[i + 1]!r} and {arrows[i]!r} do not compose")
        return Path(arrows, self.arrow_source[arrows[-1]],
                    self.arrow_target[arrows[0]])

    def is_zero(self, p):
        """Whether the written word of p contains a relation as a factor."""
        return any((p.arrows[i], p.arrows[i + 1]) in self.relations
                   for i in range(len(p.arrows) - 1))

    def compose(self, p1, p2):
        """The product "first p2 then p1", or None if it lies in the ideal.

        Requires t(p2) = s(p1); the written word is p1 followed by p2.
        """
        if p2.target != p1.source:
            raise PresentationError(
                f"paths do not compose: target {p2.target!r} != source {p1.source!r}")
        out = Path(p1.arrows + p2.arrows,
                   p2.source if p2.arrows else p1.source,
                   p1.target if p1.arrows else p2.target)
        if self.is_zero(out):
            return None
        return out

    def path_basis(self):
        """All paths not lying in the ideal, the canonical basis of Lambda.

        Ordered by (source, target, length, word) for reproducible output.
        Raises PresentationError if the presentation is infinite dimensional.
        """
        cached = getattr(self, "_basis", None)
        if cached is not None:
            return cached
        report = self.validate()
        if "finite-dimensionality" in report.conditions():
            raise PresentationError("infinite dimensional: permitted cycle exists")
        basis = [self.trivial(v) for v in self.vertices]
        layer = [self.path([a]) for a in self.arrow_order]
        while layer:
            basis.extend(layer)
            nxt = []
            for p in layer:
                for b in self.arrows_from(p.target):
                    if (b, p.last_arrow()) not in self.relations:
                        nxt.append(Path((b,) + p.arrows, p.source,
                                        self.arrow_target[b]))
            layer = nxt
        basis.sort(key=lambda p: (p.source, p.target, len(p), p.arrows))
        self._basis = basis
        return basis

    def dimension(self):
        return len(self.path_basis())

    # -- gentleness ------------------------------------------------------

    def validate(self):
        """Check the gentle axioms, finite-dimensionality and connectivity.

        Conditions are named as in the usual definition:
          (1) every vertex is source and target of at most two arrows;
          (2) for each arrow a, at most one b with ba not in I and at most
              one c with ca in I;
          (3) the dual of (2) on predecessors;
          (4) every relation is a composable length-2 path.
        """
        issues = []
        for v in self.vertices:
            outs = self.arrows_from(v)
            ins = self.arrows_into(v)
            if len(outs) > 2:
                issues.append(ValidationIssue(
                    "condition (1)", f"vertex {v} is a source of {len(outs)} arrows"))
            if len(ins) > 2:
                issues.append(ValidationIssue(
                    "condition (1)", f"vertex {v} is a target of {len(ins)} arrows"))

        for b, a in sorted(self.relations):
            if self.arrow_target[a] != self.arrow_source[b]:
                issues.append(ValidationIssue(
                    "condition (4)",
                    f"relation ({b}, {a}) is not a composable pair"))

        for a in self.arrow_order:
            succ = self.arrows_from(self.arrow_target[a])
            nonzero = [b for b in succ if (b, a) not in self.relations]
            zero = [b for b in succ if (b, a) in self.relations]
            if len(nonzero) > 1:
                issues.append(ValidationIssue(
                    "condition (2)",
                    f"arrow {a} has nonzero composites with {', '.join(nonzero)}"))
            if len(zero) > 1:
                issues.append(ValidationIssue(
                    "condition (2)",
                    f"arrow {a} has zero composites with {', '.join(zero)}"))
            pred = self.arrows_into(self.arrow_source[a])
            nonzero = [b for b in pred if (a, b) not in self.relations]
            zero = [b for b in pred if (a, b) in self.relations]
            if len(nonzero) > 1:
                issues.append(ValidationIssue(
                    "condition (3)",
                    f"arrow {a} has nonzero composites after {', '.join(nonzero)}"))
            if len(zero) > 1:
                issues.append(ValidationIssue(
                    "condition (3)",
                    f"arrow {a} has zero composites after {', '.join(zero)}"))

        cycle = self._permitted_cycle()
        if cycle is not None:
            issues.append(ValidationIssue(
                "finite-dimensionality",
                "permitted cycle " + " ".join(reversed(cycle))))

        if not self._connected():
            issues.append(ValidationIssue(
                "connectivity", "underlying graph is not connected"))

        return ValidationReport(valid=not issues, issues=tuple(issues))

    def _permitted_cycle(self):
        """A directed arrow cycle avoiding the relations, or None.

        Edge a -> b iff b starts where a ends and ba lies outside I; a cycle
        here is exactly a nonzero path of unbounded length.
        """
        succ = {a: [b for b in self.arrows_from(self.arrow_target[a])
                    if (b, a) not in self.relations]
                for a in self.arrow_order}
        color = {a: 0 for a in self.arrow_order}
        stack_path = []

        def dfs(a):
            color[a] = 1
            stack_path.append(a)
            for b in succ[a]:
                if color[b] == 1:
                    return stack_path[stack_path.index(b):]
                if color[b] == 0:
                    found = dfs(b)
                    if found is not None:
                        return found
            color[a] = 2
            stack_path.pop()
            return None

        for a in self.arrow_order:
            if color[a] == 0:
                found = dfs(a)
                if found is not None:
                    return found
        return None

    def _connected(self):
        if not self.vertices:
            return False
        adj = {v: set() for v in self.vertices}
        for a in self.arrow_order:
            adj[self.arrow_source[a]].add(self.arrow_target[a])
            adj[self.arrow_target[a]].add(self.arrow_source[a])
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def assert_valid(self):
        report = self.validate()
        if not report.valid:
            raise PresentationError(str(report))
        return self

    # -- full relation cycles ---------------------------------------------

    def full_relation_cycles(self):
        """Directed arrow cycles all of whose consecutive composites are zero.

        Each arrow has at most one zero continuation, so following it either
        closes a simple cycle or dies.  Cycles are returned as tuples in
        traversal order, canonicalised to the lexicographically least
        rotation, sorted.
        """
        zero_succ = {}
        for a in self.arrow_order:
            nxt = [b for b in self.arrows_from(self.arrow_target[a])
                   if (b, a) in self.relations]
            if len(nxt) == 1:
                zero_succ[a] = nxt[0]
        cycles = set()
        for start in zero_succ:
            seq = [start]
            cur = start
            while True:
                cur = zero_succ.get(cur)
                if cur is None or cur in seq[1:]:
                    break
                if cur == start:
                    cycles.add(least_rotation(tuple(seq)))
                    break
                seq.append(cur)
        return sorted(cycles)


def least_rotation(word):
    """Lexicographically least rotation of a tuple."""
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(len(word)))


# -- file format -----------------------------------------------------------


def parse_presentation(text):
    """Parse the line-oriented presentation format.

    Directives: "algebra <name>", "vertex <id>", "arrow <name> <src> <tgt>",
    "rel <b> <a>"; '#' starts a comment.  Relations must be composable.
    """
    name = "Lambda"
    vertices = []
    arrows = []
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "algebra" and len(args) == 1:
            name = args[0]
        elif kind == "vertex" and len(args) == 1:
            vertices.append(args[0])
        elif kind == "arrow" and len(args) == 3:
            arrows.append((args[0], args[1], args[2]))
        elif kind == "rel" and len(args) == 2:
            relations.append((args[0], args[1]))
        else:
            raise PresentationError(f"syntax error on line {lineno}: {raw.strip()!r}")
    pres = GentlePresentation(vertices, arrows, relations, name=name)
    for b, a in sorted(pres.relations):
        if pres.t(a) != pres.s(b):
            raise PresentationError(
                f"non-composable relation ({b}, {a}), condition (4)")
    return pres


def load_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


RUNNING_EXAMPLE = """\
algebra running
vertex 0
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 0 1
arrow b 1 2
arrow c 2 0
arrow d 0 4
arrow e 4 3
arrow f 3 0
rel b a
rel c b
rel a c
rel e d
rel d f
rel f e
"""

A2_EXAMPLE = """\
algebra a2
vertex 1
vertex 2
arrow a 1 2
"""

POINT_EXAMPLE = """\
algebra point
vertex 0
"""


def running_example():
    return parse_presentation(RUNNING_EXAMPLE)


# -- random instances -------------------------------------------------------


def random_gentle(max_vertices, rng=None, max_tries=2000):
    """A random connected finite dimensional gentle presentation.

    Arrows are sampled under the degree caps, then every composable pair at
    each vertex is split between the permitted and forbidden matchings, which
    enforces the continuation axioms by construction.  Draws failing the
    global checks (connectivity, no permitted cycle) are rejected.
    """
    if rng is None:
        rng = random.Random()
    if isinstance(rng, int):
        rng = random.Random(rng)
    for _ in range(max_tries):
        n = rng.randint(2, max_vertices)
        verts = [str(i) for i in range(n)]
        narrows = rng.randint(n - 1, min(2 * n, n + 4))
        out_deg = {v: 0 for v in verts}
        in_deg = {v: 0 for v in verts}
        arrows = []
        ok = True
        for i in range(narrows):
            cand = [(u, w) for u in verts for w in verts
                    if out_deg[u] < 2 and in_deg[w] < 2]
            if not cand:
                ok = False
                break
            u, w = rng.choice(cand)
            arrows.append((f"r{i}", u, w))
            out_deg[u] += 1
            in_deg[w] += 1
        if not ok:
            continue
        # split the composable pairs at each vertex into <=1 permitted and
        # <=1 forbidden continuation per arrow, which is exactly gentleness
        relations = []
        for v in verts:
            ins = [a for a, _, w in arrows if w == v]
            outs = [a for a, u, _ in arrows if u == v]
            if not ins or not outs:
                continue
            rng.shuffle(ins)
            rng.shuffle(outs)
            if len(ins) == 1 and len(outs) == 1:
                if rng.random() < 0.5:
                    relations.append((outs[0], ins[0]))
            elif len(ins) == 1:
                z = rng.randrange(2)
                relations.append((outs[z], ins[0]))
            elif len(outs) == 1:
                z = rng.randrange(2)
                relations.append((outs[0], ins[z]))
            else:
                # 2x2: forbidden pairs form one of the two perfect matchings
                z = rng.randrange(2)
                relations.append((outs[0], ins[z]))
                relations.append((outs[1], ins[1 - z]))
        pres = GentlePresentation(verts, arrows, relations)
        if pres.validate().valid:
            return pres
    raise PresentationError("random search failed to produce a valid instance")
