"""Ribbon surface model of a gentle presentation.

The surface is stored combinatorially: a set of arcs (one per vertex of the
quiver), a linearly ordered list of arc ends at every marked boundary point,
and the faces cut out by the arcs.  The order at a point lists the ends
counterclockwise; the unfilled gap between the last and the first end faces
the boundary of the surface.  Faces that close up without passing a gap are
filled with an internal marked puncture, all other faces carry one marked
point on their boundary segment.

Arcs, loops and closed curves on the surface are stored as reduced walks on
the arc graph: each step crosses one arc, and the passage between two
consecutive steps happens inside the star of the shared endpoint.  This makes
every curve a sequence against the dual arcs, which is exactly the data a
graded string carries, so curves and string objects translate both ways.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import (GentlePresentation, PresentationError,
                           ValidationIssue, ValidationReport, least_rotation)
from .strings import GradedBand, GradedString, Letter, StringError


class SurfaceError(ValueError):
    """Invalid surface data; the message names the violated condition."""


# -- arc ends and fans -------------------------------------------------------


def _end_groups(pres):
    """For every vertex the two arc ends with their attached arrows.

    An incoming arrow lands on the same end as the outgoing arrow continuing
    it nonzero; all other composable pairs meet across the two ends.  Returns
    {vertex: [group0, group1]} with group = {"in": arrow|None, "out": ...}.
    """
    groups = {}
    for v in pres.vertices:
        outs = pres.arrows_from(v)
        ins = pres.arrows_into(v)
        ends = []
        used = set()
        for b in outs:
            partner = None
            for a in ins:
                if pres.compose(pres.path((b,)), pres.path((a,))) is not None:
                    partner = a
                    break
            ends.append({"out": b, "in": partner})
            if partner is not None:
                used.add(partner)
        for a in ins:
            if a not in used:
                ends.append({"out": None, "in": a})
        while len(ends) < 2:
            ends.append({"out": None, "in": None})
        if len(ends) > 2:
            raise SurfaceError(
                f"vertex {v!r} has more than two arc ends; presentation is not gentle")
        ends.sort(key=lambda g: (g["out"] is None, g["out"] or "",
                                 g["in"] is None, g["in"] or ""))
        groups[v] = ends
    return groups


def _fan_chains(pres):
    """Maximal chains of arrows with nonzero consecutive composites."""
    succ = {}
    pred = {}
    for a in pres.arrow_order:
        for b in pres.arrows_from(pres.t(a)):
            if pres.compose(pres.path((b,)), pres.path((a,))) is not None:
                succ[a] = b
                pred[b] = a
                break
    chains = []
    for a in pres.arrow_order:
        if a not in pred:
            chain = [a]
            while chain[-1] in succ:
                chain.append(succ[chain[-1]])
            chains.append(tuple(chain))
    if sum(len(c) for c in chains) != len(pres.arrow_order):
        # leftover arrows would sit on a nonzero cycle
        raise SurfaceError("composable arrows close a nonzero cycle")
    return chains


@dataclass(frozen=True)
class Face:
    """One complementary face of the arc system.

    Boundary faces carry a marked point on their boundary segment, which runs
    counterclockwise from segment[0] to segment[1]; puncture faces carry an
    internal marked point and their sides close up cyclically.
    """

    name: str
    kind: str                 # "boundary" | "puncture"
    darts: tuple              # (arc, from_end, to_end) in walk order
    corners: tuple            # (point, corner_index) owned by this face
    segment: tuple            # (point_from, point_to) or None
    cycle: tuple              # arrow cycle for punctures, else None

    @property
    def sides(self):
        return tuple(d[0] for d in self.darts)


class RibbonSurface:
    """Dissected marked surface of a gentle presentation.

    Exposes the marked points with their ordered end lists, the faces, the
    boundary circles and the derived invariants.  Points and faces get stable
    names ("p0", ..., "m0", ..., "t0", ...) so dumps are reproducible.
    """

    def __init__(self, pres):
        pres.assert_valid()
        self.pres = pres
        self.arcs = tuple(pres.vertices)
        self._build_points()
        self._build_faces()

    # -- construction ------------------------------------------------------

    def _build_points(self):
        pres = self.pres
        self.end_groups = _end_groups(pres)
        self.out_end = {}
        self.in_end = {}
        for v, ends in self.end_groups.items():
            for e, grp in enumerate(ends):
                if grp["out"] is not None:
                    self.out_end[grp["out"]] = (v, e)
                if grp["in"] is not None:
                    self.in_end[grp["in"]] = (v, e)

        chains = _fan_chains(pres)
        fans = []
        for chain in chains:
            germs = [self.out_end[chain[0]]]
            for a in chain:
                germs.append(self.in_end[a])
            # interior germs host both the arriving and the leaving arrow
            for k, a in enumerate(chain[1:], start=1):
                if self.out_end[a] != germs[k]:
                    raise SurfaceError(
                        f"arrows {chain[k - 1]!r}, {a!r} disagree on their shared end")
            fans.append((chain, tuple(germs)))
        taken = {g for _, germs in fans for g in germs}
        single = [(v, e) for v in pres.vertices for e in (0, 1)
                  if (v, e) not in taken]
        fans.sort(key=lambda f: f[0][0])
        single.sort()

        self.points = {}
        self.point_chain = {}
        self.germ_pos = {}
        names = []
        for chain, germs in fans:
            name = f"p{len(names)}"
            names.append(name)
            self.points[name] = tuple(reversed(germs))   # stored ccw
            self.point_chain[name] = chain
        for germ in single:
            name = f"p{len(names)}"
            names.append(name)
            self.points[name] = (germ,)
            self.point_chain[name] = ()
        for name, germs in self.points.items():
            for i, germ in enumerate(germs):
                if germ in self.germ_pos:
                    raise SurfaceError(f"end {germ} sits at two points")
                self.germ_pos[germ] = (name, i)
        self.point_order = tuple(names)

    def _next_dart(self, dart):
        """Face walk step, face kept on the left of the darts.

        Arriving at stored position i the walk leaves via position i-1; from
        position 0 it wraps to the last germ, passing the gap.  Returns
        (next_dart, wrapped_point_or_None).
        """
        arc, frm, to = dart
        point, i = self.germ_pos[(arc, to)]
        germs = self.points[point]
        wrapped = point if i == 0 else None
        arc2, e2 = germs[(i - 1) % len(germs)]
        other = 1 - e2
        return (arc2, e2, other), wrapped

    def _build_faces(self):
        darts = [(v, e, 1 - e) for v in self.arcs for e in (0, 1)]
        seen = set()
        orbits = []
        for start in darts:
            if start in seen:
                continue
            orbit = []
            wraps = []
            cur = start
            while True:
                orbit.append(cur)
                seen.add(cur)
                nxt, wrapped = self._next_dart(cur)
                if wrapped is not None:
                    wraps.append((len(orbit), wrapped))
                cur = nxt
                if cur == start:
                    break
            orbits.append((orbit, wraps))

        punctures = []
        circles = []
        for orbit, wraps in orbits:
            if not wraps:
                cycle = []
                for dart in orbit:
                    point, i = self.germ_pos[(dart[0], dart[2])]
                    chain = self.point_chain[point]
                    d = len(self.points[point])
                    # stored index i is fan index d-1-i; the turn to the next
                    # germ follows the chain arrow out of that fan position
                    cycle.append(chain[d - 1 - i])
                punctures.append((orbit, tuple(cycle)))
            else:
                circles.append((orbit, wraps))

        # puncture faces, canonicalised on the arrow cycle
        named = []
        for orbit, cycle in punctures:
            cyc = least_rotation(cycle)
            named.append((cyc, orbit))
        named.sort()
        self.faces = []
        for cyc, orbit in named:
            name = f"t{len(self.faces)}"
            corners = []
            for dart in orbit:
                point, i = self.germ_pos[(dart[0], dart[2])]
                corners.append((point, i))
            self.faces.append(Face(name, "puncture", tuple(orbit),
                                   tuple(corners), None, cyc))

        # boundary circles split at the gap passages
        self.boundary_circles = []
        n_punct = len(self.faces)
        circles.sort(key=lambda ow: min(ow[0]))
        for orbit, wraps in circles:
            m = len(orbit)
            # rotate so the orbit starts right after a wrap
            k0, _ = wraps[0]
            order = orbit[k0 % m:] + orbit[:k0 % m]
            marks = {(k - k0) % m: pt for k, pt in wraps}
            pieces = []
            piece = []
            piece_end_pts = []
            for k, dart in enumerate(order):
                piece.append(dart)
                if (k + 1) % m in marks or k == m - 1:
                    pieces.append(piece)
                    piece_end_pts.append(marks.get((k + 1) % m, marks[0]))
                    piece = []
            # the piece ending with the wrap at Q bounds the segment leaving
            # Q ccw; the segment arrives at the wrap point of the piece before
            circle_faces = []
            for j, piece in enumerate(pieces):
                q_from = piece_end_pts[j]
                q_to = piece_end_pts[j - 1]
                name = f"m{len(self.faces) - n_punct}"
                corners = []
                for dart in piece[:-1]:
                    point, i = self.germ_pos[(dart[0], dart[2])]
                    corners.append((point, i))
                last_pt, last_i = self.germ_pos[(piece[-1][0], piece[-1][2])]
                if last_pt != q_from or last_i != 0:
                    raise SurfaceError("boundary piece must end at a gap")
                corners.append((last_pt, 0))
                corners.append((q_to, len(self.points[q_to])))
                self.faces.append(Face(name, "boundary", tuple(piece),
                                       tuple(corners), (q_from, q_to), None))
                circle_faces.append((name, q_from, q_to))
            # the orbit visits the boundary faces clockwise; store ccw
            self.boundary_circles.append(tuple(reversed(circle_faces)))

        self.face_by_name = {f.name: f for f in self.faces}
        self.corner_face = {}
        for f in self.faces:
            for c in f.corners:
                if c in self.corner_face:
                    raise SurfaceError(f"corner {c} claimed twice")
                self.corner_face[c] = f.name
        for pt in self.point_order:
            for i in range(len(self.points[pt]) + 1):
                if (pt, i) not in self.corner_face:
                    raise SurfaceError(f"corner {(pt, i)} unclaimed")
        self.dart_face = {}
        for f in self.faces:
            for dart in f.darts:
                self.dart_face[dart] = f.name

    # -- derived invariants --------------------------------------------------

    @property
    def marked_points(self):
        return len(self.points)

    @property
    def boundary_marks(self):
        return sum(1 for f in self.faces if f.kind == "boundary")

    @property
    def punctures(self):
        return tuple(f.name for f in self.faces if f.kind == "puncture")

    @property
    def boundary_components(self):
        return len(self.boundary_circles)

    @property
    def genus(self):
        # cell count: points, then arcs plus one boundary segment per
        # boundary mark as edges, then all faces
        chi = (self.marked_points - (len(self.arcs) + self.boundary_marks)
               + len(self.faces))
        g2 = 2 - chi - self.boundary_components
        if g2 % 2:
            raise SurfaceError("half integral genus; face data inconsistent")
        return g2 // 2

    def arc_count_identity(self):
        lhs = len(self.arcs)
        rhs = (self.marked_points + len(self.punctures)
               + self.boundary_components + 2 * self.genus - 2)
        return lhs, rhs

    def boundary_bullets(self, point):
        """The two marked boundary faces flanking a point: (before, after)
        in ccw order along its boundary circle."""
        before = self.corner_face[(point, 0)]
        after = self.corner_face[(point, len(self.points[point]))]
        return before, after

    def validate(self):
        issues = []
        seen = {}
        for name, germs in self.points.items():
            for g in germs:
                seen.setdefault(g, []).append(name)
        for v in self.arcs:
            for e in (0, 1):
                hosts = seen.get((v, e), [])
                if len(hosts) != 1:
                    issues.append(ValidationIssue(
                        "ends", f"end {(v, e)} sits at {len(hosts)} points"))
        for f in self.faces:
            has_bullet = (f.kind == "puncture") or (f.segment is not None)
            if not has_bullet:
                issues.append(ValidationIssue(
                    "faces", f"face {f.name} has no marked point"))
        lhs, rhs = self.arc_count_identity()
        if lhs != rhs:
            issues.append(ValidationIssue(
                "count", f"arc count {lhs} != {rhs} from the marked data"))
        want = set(self.pres.full_relation_cycles())
        got = {f.cycle for f in self.faces if f.kind == "puncture"}
        if want != got:
            issues.append(ValidationIssue(
                "punctures", f"puncture cycles {sorted(got)} != {sorted(want)}"))
        return ValidationReport(not issues, tuple(issues))

    # -- exports -------------------------------------------------------------

    def json_data(self):
        return {
            "arcs": list(self.arcs),
            "endsOrders": {pt: [[v, e] for v, e in germs]
                           for pt, germs in self.points.items()},
            "faces": [{"name": f.name, "kind": f.kind,
                       "sides": list(f.sides),
                       "segment": list(f.segment) if f.segment else None}
                      for f in self.faces],
            "bulletData": {
                "boundary": [f.name for f in self.faces if f.kind == "boundary"],
                "punctures": [{"name": f.name, "cycle": list(f.cycle)}
                              for f in self.faces if f.kind == "puncture"],
                "circles": [[list(entry) for entry in circle]
                            for circle in self.boundary_circles],
            },
            "counts": {"marked": self.marked_points,
                       "boundaryMarked": self.boundary_marks,
                       "punctures": len(self.punctures),
                       "boundaryComponents": self.boundary_components,
                       "genus": self.genus},
        }

    def dot(self):
        lines = ["graph surface {"]
        for pt in self.point_order:
            lines.append(f'  "{pt}" [shape=circle];')
        for v in self.arcs:
            a = self.germ_pos[(v, 0)][0]
            b = self.germ_pos[(v, 1)][0]
            lines.append(f'  "{a}" -- "{b}" [label="{v}"];')
        for f in self.faces:
            if f.kind == "puncture":
                lines.append(f'  // puncture {f.name}: cycle {" ".join(f.cycle)}')
            else:
                lines.append(f'  // boundary mark {f.name}: sides {" ".join(f.sides)}'
                             f' segment {f.segment[0]}->{f.segment[1]}')
        lines.append("}")
        return "\n".join(lines) + "\n"


class Dissection:
    """The arc system of a surface together with its dual.

    Every arc crosses exactly one dual arc, which connects the marked points
    of the two faces flanking it.
    """

    def __init__(self, surface):
        self.surface = surface
        self.arcs = surface.arcs
        self.dual = {}
        for v in self.arcs:
            left = surface.dart_face[(v, 0, 1)]
            right = surface.dart_face[(v, 1, 0)]
            self.dual[v] = (left, right)

    def dual_sides(self, v):
        return self.dual[v]

    def dual_dissection(self):
        return DualDissection(self)


class DualDissection:
    """Dual arc system: one node per face, sides ordered by the face walks.

    Boundary nodes are linear with a gap where their boundary segment runs
    and remember their neighbour along the boundary circle; puncture nodes
    close up cyclically.  Taking the dual again walks around the original
    marked points, one gap passage each, and must recover their end orders.
    """

    def __init__(self, dissection):
        self.dissection = dissection
        surface = dissection.surface
        self.nodes = {name: tuple(f.darts)
                      for name, f in surface.face_by_name.items()}
        self.cyclic = {name: f.kind == "puncture"
                       for name, f in surface.face_by_name.items()}
        self.circle_next = {}
        for circle in surface.boundary_circles:
            for k, (name, _, _) in enumerate(circle):
                self.circle_next[name] = circle[(k + 1) % len(circle)][0]

    def dual_dissection(self):
        """Faces of the dual ribbon structure; checks they recover the point
        orders of the original surface and returns the original dissection.

        A state is a side occurrence (node, k), read as having just crossed
        into the node through f.darts[k], which departs the end the walk is
        circling.  Rotation runs against the face order; position 0 of a
        linear node exits through its segment, across the shared boundary
        point into the next segment along the circle.
        """
        surface = self.dissection.surface
        occ = {}
        for node, darts in self.nodes.items():
            for k, dart in enumerate(darts):
                occ[dart] = (node, k)

        def step(state):
            node, k = state
            darts = self.nodes[node]
            if k > 0 or self.cyclic[node]:
                exit_side = darts[k - 1]
                gap = False
            else:
                nxt = self.circle_next[node]
                exit_side = self.nodes[nxt][-1]
                gap = True
            arc, frm, to = exit_side
            return occ[(arc, to, frm)], gap

        seen = set()
        recovered = []
        for start in occ.values():
            if start in seen:
                continue
            cur = start
            germs = []
            gaps = []
            while True:
                seen.add(cur)
                node, k = cur
                arc, frm, _ = self.nodes[node][k]
                cur, gap = step(cur)
                germs.append((arc, frm))
                gaps.append(gap)
                if cur == start:
                    break
            if sum(gaps) != 1:
                raise SurfaceError("dual face walk must pass one gap")
            # the germ recorded with the gap step is the last one before it
            cut = gaps.index(True) + 1
            recovered.append(tuple(germs[cut:] + germs[:cut]))
        if len(recovered) != len(surface.points):
            raise SurfaceError("dual of the dual has the wrong face count")
        want = set(surface.points.values())
        if set(recovered) != want:
            raise SurfaceError("dual of the dual disagrees with the point orders")
        return self.dissection


def surface_from_algebra(pres):
    """The dissected marked surface of a gentle presentation."""
    surface = RibbonSurface(pres)
    report = surface.validate()
    if report.conditions():
        raise SurfaceError("; ".join(str(i) for i in report.issues))
    return surface, Dissection(surface)


def algebra_from_dissection(surface, name=None):
    """Read a gentle presentation back off the ordered arc ends.

    Two ends adjacent in the ccw order at a point contribute the arrow from
    the later arc to the earlier one; a composable pair is a relation exactly
    when it does not pass through a shared end.
    """
    arrows = []
    head_germ = {}
    tail_germ = {}
    for pt in surface.point_order:
        germs = surface.points[pt]
        for k in range(len(germs) - 1):
            src = germs[k + 1][0]
            tgt = germs[k][0]
            aname = f"x{len(arrows)}"
            arrows.append((aname, src, tgt))
            head_germ[aname] = germs[k]
            tail_germ[aname] = germs[k + 1]
    relations = []
    for bname, bsrc, btgt in arrows:
        for aname, asrc, atgt in arrows:
            if atgt == bsrc and head_germ[aname] != tail_germ[bname]:
                relations.append((bname, aname))
    pres = GentlePresentation(list(surface.arcs), arrows, relations,
                              name=name or f"A({surface.pres.name})")
    pres.assert_valid()
    return pres


def presentations_isomorphic(p, q):
    """Quiver-with-relations isomorphism by backtracking on arrow matches."""
    if (len(p.vertices) != len(q.vertices)
            or len(p.arrow_order) != len(q.arrow_order)
            or len(p.relations) != len(q.relations)):
        return False

    parrows = list(p.arrow_order)
    qarrows = list(q.arrow_order)

    def extend(k, vmap, amap):
        if k == len(parrows):
            rel = {(amap[b], amap[a]) for b, a in p.relations}
            return rel == set(q.relations)
        a = parrows[k]
        for b in qarrows:
            if b in amap.values():
                continue
            vm = dict(vmap)
            ok = True
            for pv, qv in ((p.s(a), q.s(b)), (p.t(a), q.t(b))):
                if vm.get(pv, qv) != qv or (qv in vm.values()
                                            and vm.get(pv) != qv):
                    ok = False
                    break
                vm[pv] = qv
            if not ok:
                continue
            am = dict(amap)
            am[a] = b
            if extend(k + 1, vm, am):
                return True
        return False

    if not parrows:
        # vertex count equality suffices when both quivers have no arrows
        return True
    return extend(0, {}, {})


# -- curves of string and band objects ---------------------------------------


@dataclass(frozen=True)
class ArcCurve:
    """Taut open curve of a string object.

    crossings[i] names the arc whose dual strand the curve crosses; it is the
    vertex of the i-th term of the complex and carries degree mu(i).
    passages[i] records how the curve runs through the star of a point
    between crossings i and i+1: (point, entry, exit) with entry and exit the
    stored end positions of the arcs at that point.  The curve terminates at
    the points owning the end germs in ends.
    """

    crossings: tuple
    passages: tuple
    mu0: int
    ends: tuple        # ((arc, end), (arc, end))

    def mu_seq(self):
        out = [self.mu0]
        for _, entry, exit_ in self.passages:
            out.append(out[-1] + (-1 if exit_ < entry else 1))
        return tuple(out)

    def reverse(self):
        passages = tuple((pt, exit_, entry)
                         for pt, entry, exit_ in reversed(self.passages))
        return ArcCurve(tuple(reversed(self.crossings)), passages,
                        self.mu_seq()[-1], (self.ends[1], self.ends[0]))

    def key(self):
        return (self.crossings, self.passages, self.mu_seq(), self.ends)

    def canonical(self):
        rev = self.reverse()
        return self if self.key() <= rev.key() else rev


@dataclass(frozen=True)
class LoopCurve:
    """Taut closed curve of a band object; passages[i] joins crossings[i]
    to crossings[(i+1) % n]."""

    crossings: tuple
    passages: tuple
    mu0: int

    def mu_seq(self):
        out = [self.mu0]
        for _, entry, exit_ in self.passages[:-1]:
            out.append(out[-1] + (-1 if exit_ < entry else 1))
        return tuple(out)

    def rotate(self, k):
        n = len(self.crossings)
        k %= n
        seq = self.mu_seq()
        return LoopCurve(self.crossings[k:] + self.crossings[:k],
                         self.passages[k:] + self.passages[:k], seq[k])

    def reverse(self):
        # keep crossing 0 in place, reverse the cyclic direction
        n = len(self.crossings)
        crossings = (self.crossings[0],) + tuple(reversed(self.crossings[1:]))
        passages = tuple((pt, exit_, entry)
                         for pt, entry, exit_ in reversed(self.passages))
        return LoopCurve(crossings, passages, self.mu0)

    def key(self):
        return (self.crossings, self.passages, self.mu_seq())

    def canonical(self):
        n = len(self.crossings)
        best = None
        for c in (self, self.reverse()):
            for k in range(n):
                cand = c.rotate(k)
                if best is None or cand.key() < best.key():
                    best = cand
        return best


def _passage(surface, letter):
    """(point, entry, exit) of the star passage a letter runs through."""
    p = letter.path
    if letter.inverse:
        entry_germ = surface.in_end[p.last_arrow()]
        exit_germ = surface.out_end[p.first_arrow()]
    else:
        entry_germ = surface.out_end[p.first_arrow()]
        exit_germ = surface.in_end[p.last_arrow()]
    pt, entry = surface.germ_pos[entry_germ]
    pt2, exit_ = surface.germ_pos[exit_germ]
    if pt != pt2:
        raise SurfaceError(
            f"letter {letter} does not stay inside one star ({pt} vs {pt2})")
    return (pt, entry, exit_)


def arc_from_string(surface, s):
    """The taut curve of a graded string."""
    if s.pres is not surface.pres:
        raise SurfaceError("string and surface use different presentations")
    crossings = tuple(s.vertex(i) for i in range(s.n + 1))
    passages = tuple(_passage(surface, l) for l in s.letters)
    if passages:
        first = surface.points[passages[0][0]][passages[0][1]]
        last = surface.points[passages[-1][0]][passages[-1][2]]
        ends = ((crossings[0], 1 - first[1]), (crossings[-1], 1 - last[1]))
    else:
        ends = ((crossings[0], 0), (crossings[0], 1))
    return ArcCurve(crossings, passages, s.mu0, ends)


def _passage_letter(surface, pt, entry, exit_, expect_src, expect_tgt):
    """Rebuild the letter of a star passage, checking the walk data."""
    from .strings import Letter

    germs = surface.points[pt]
    chain = surface.point_chain[pt]
    m = len(chain)
    for idx in (entry, exit_):
        if not 0 <= idx < len(germs):
            raise SurfaceError(f"no end position {idx} at point {pt}")
    if entry == exit_:
        raise SurfaceError(f"empty passage at point {pt}")
    if germs[entry][0] != expect_src or germs[exit_][0] != expect_tgt:
        raise SurfaceError(f"passage at {pt} does not match its crossings")
    if exit_ < entry:
        arrows = tuple(reversed(chain[m - entry:m - exit_]))
        inverse = False
    else:
        arrows = tuple(reversed(chain[m - exit_:m - entry]))
        inverse = True
    return Letter(surface.pres.path(arrows), inverse)


def string_from_arc(surface, curve):
    """The graded string of a taut open curve; inverse of arc_from_string."""
    from .strings import GradedString

    letters = []
    for i, (pt, entry, exit_) in enumerate(curve.passages):
        letters.append(_passage_letter(surface, pt, entry, exit_,
                                       curve.crossings[i],
                                       curve.crossings[i + 1]))
    anchor = None if letters else curve.crossings[0]
    return GradedString(surface.pres, letters, mu0=curve.mu0, anchor=anchor)


def loop_from_band(surface, band):
    """The taut closed curve of a graded band (the parameter is dropped)."""
    if band.pres is not surface.pres:
        raise SurfaceError("band and surface use different presentations")
    crossings = tuple(band.vertex(i) for i in range(band.n))
    passages = tuple(_passage(surface, l) for l in band.letters)
    return LoopCurve(crossings, passages, band.mu0)


def band_from_loop(surface, loop, lam=1):
    """The graded band of a taut closed curve, with the given parameter."""
    from .strings import GradedBand

    n = len(loop.crossings)
    letters = []
    for i, (pt, entry, exit_) in enumerate(loop.passages):
        letters.append(_passage_letter(surface, pt, entry, exit_,
                                       loop.crossings[i],
                                       loop.crossings[(i + 1) % n]))
    return GradedBand(surface.pres, letters, mu0=loop.mu0, lam=lam)
