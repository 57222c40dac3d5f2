"""Graded homotopy strings, bands and infinite strings, and the projective
complexes they define.

A word w_n ... w_1 is stored with letters[k] = w_{k+1}, so index 0 is the
rightmost letter.  Positions run 0..n, vertex(0) being the formal source of
w_1 (or the anchor vertex for trivial strings).  Crossing a direct letter
from position i to i-1 raises the degree by one; an inverse letter lowers it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import PresentationError


class StringError(ValueError):
    """Invalid string/band data; the message names the violated condition."""


@dataclass(frozen=True)
class Letter:
    """A homotopy letter: a nonzero non-trivial path or its formal inverse."""

    path: object
    inverse: bool = False

    def source(self):
        """The walk vertex this letter leaves (formal source)."""
        return self.path.target if self.inverse else self.path.source

    def target(self):
        """The walk vertex this letter enters (formal target)."""
        return self.path.source if self.inverse else self.path.target

    def inverted(self):
        return Letter(self.path, not self.inverse)

    def key(self):
        return (self.inverse, self.path.arrows)

    def __str__(self):
        return ("~" if self.inverse else "") + str(self.path)


def _check_letter(pres, letter, index):
    if len(letter.path) < 1:
        raise StringError(f"letter {index}: trivial path is not a letter")
    if pres.is_zero(letter.path):
        raise StringError(f"letter {index}: path {letter.path} lies in the ideal")


def _check_junction(pres, follow, prec, index):
    """Conditions between consecutive letters w_{index+1} = follow and
    w_index = prec of a (cyclic or linear) word.

    (ii) equal directions: the length-2 junction composite lies in I;
    (iii) direction change: the two paths at the shared vertex must not
    start (resp. end) with the same arrow.
    """
    if follow.source() != prec.target():
        raise StringError(
            f"letters {index + 1} and {index} do not connect")
    if not follow.inverse and not prec.inverse:
        pair = (follow.path.first_arrow(), prec.path.last_arrow())
        if pair not in pres.relations:
            raise StringError(
                f"condition (ii) fails between letters {index + 1} and {index}: "
                f"composite {pair[0]}*{pair[1]} is nonzero")
    elif follow.inverse and prec.inverse:
        pair = (prec.path.first_arrow(), follow.path.last_arrow())
        if pair not in pres.relations:
            raise StringError(
                f"condition (ii) fails between letters {index + 1} and {index}: "
                f"composite {pair[0]}*{pair[1]} is nonzero")
    elif not follow.inverse and prec.inverse:
        # both paths leave the shared vertex
        if follow.path.first_arrow() == prec.path.first_arrow():
            raise StringError(
                f"condition (iii) fails between letters {index + 1} and {index}: "
                f"both start with arrow {follow.path.first_arrow()}")
    else:
        # both paths arrive at the shared vertex
        if follow.path.last_arrow() == prec.path.last_arrow():
            raise StringError(
                f"condition (iii) fails between letters {index + 1} and {index}: "
                f"both end with arrow {follow.path.last_arrow()}")


class GradedString:
    """A graded homotopy string over a fixed presentation.

    Trivial strings carry an anchor vertex instead of letters.  Validation
    happens at construction and raises StringError naming the condition.
    """

    kind = "string"

    def __init__(self, pres, letters, mu0=0, anchor=None):
        self.pres = pres
        self.letters = tuple(letters)
        self.mu0 = int(mu0)
        for i, l in enumerate(self.letters):
            _check_letter(pres, l, i + 1)
        for k in range(len(self.letters) - 1):
            _check_junction(pres, self.letters[k + 1], self.letters[k], k + 1)
        if self.letters:
            self.anchor = self.letters[0].source()
        else:
            if anchor is None:
                raise StringError("trivial string needs an anchor vertex")
            self.anchor = str(anchor)
            if self.anchor not in pres.vertices:
                raise StringError(f"unknown anchor vertex {anchor!r}")

    @property
    def n(self):
        return len(self.letters)

    @property
    def is_trivial(self):
        return not self.letters

    def letter(self, i):
        """w_i, 1-based."""
        return self.letters[i - 1]

    def vertex(self, i):
        if i == 0:
            return self.anchor
        return self.letters[i - 1].target()

    def mu(self, i):
        m = self.mu0
        for k in range(i):
            m += 1 if self.letters[k].inverse else -1
        return m

    def mu_seq(self):
        out = [self.mu0]
        for l in self.letters:
            out.append(out[-1] + (1 if l.inverse else -1))
        return tuple(out)

    def invert(self):
        letters = tuple(l.inverted() for l in reversed(self.letters))
        return GradedString(self.pres, letters, mu0=self.mu(self.n),
                            anchor=self.anchor if not letters else None)

    def shift(self, k):
        """The shift o[k]: grading values decrease by k."""
        return GradedString(self.pres, self.letters, mu0=self.mu0 - k,
                            anchor=None if self.letters else self.anchor)

    def key(self):
        return (self.n, tuple(l.key() for l in self.letters), self.mu_seq(),
                self.vertex(0))

    def canonical(self):
        """The preferred representative among the string and its inverse."""
        other = self.invert()
        return self if self.key() <= other.key() else other

    def __eq__(self, other):
        return (isinstance(other, GradedString) and self.pres is other.pres
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return format_object(self)

    def __repr__(self):
        return f"<string {format_object(self)}>"


class GradedBand:
    """A graded homotopy band with a scalar parameter.

    letters[k] = w_{k+1} as for strings, read cyclically; the parameter lam
    scales the w_1 component of the differential.  Indices are mod n, with
    the junction between w_1 and w_n included.
    """

    kind = "band"

    def __init__(self, pres, letters, mu0=0, lam=1):
        self.pres = pres
        self.letters = tuple(letters)
        self.mu0 = int(mu0)
        self.lam = int(lam)
        n = len(self.letters)
        if n < 2:
            raise StringError("a band needs at least two letters")
        if self.lam == 0:
            raise StringError("band parameter must be nonzero")
        for i, l in enumerate(self.letters):
            _check_letter(pres, l, i + 1)
        for k in range(n - 1):
            _check_junction(pres, self.letters[k + 1], self.letters[k], k + 1)
        # wrap junction between w_1 and w_n
        _check_junction(pres, self.letters[0], self.letters[-1], n)
        if self.letters[0].inverse == self.letters[-1].inverse:
            raise StringError(
                "needs one direct and one inverse end letter (w_1 vs w_n)")
        steps = sum(1 if l.inverse else -1 for l in self.letters)
        if steps != 0:
            raise StringError("grading does not close up: unequal letter counts")
        for d in range(1, n):
            if n % d == 0 and all(
                    self.letters[i].key() == self.letters[i % d].key()
                    for i in range(n)):
                raise StringError(f"proper power of period {d}")

    @property
    def n(self):
        return len(self.letters)

    def letter(self, i):
        return self.letters[(i - 1) % self.n]

    def vertex(self, i):
        return self.letters[(i - 1) % self.n].target() if i % self.n else \
            self.letters[0].source()

    def mu(self, i):
        m = self.mu0
        for k in range(i % self.n):
            m += 1 if self.letters[k].inverse else -1
        return m

    def mu_seq(self):
        out = [self.mu0]
        for l in self.letters[:-1]:
            out.append(out[-1] + (1 if l.inverse else -1))
        return tuple(out)

    def shift(self, k):
        return GradedBand(self.pres, self.letters, mu0=self.mu0 - k, lam=self.lam)

    def rotate(self, k):
        """Re-anchor the cyclic word at position k (same isomorphism class)."""
        letters = self.letters[k:] + self.letters[:k]
        return GradedBand(self.pres, letters, mu0=self.mu(k), lam=self.lam)

    def invert(self):
        """The inverse band; its parameter is formally the inverse of lam,
        which canonical() records as an exponent."""
        letters = tuple(l.inverted() for l in reversed(self.letters))
        # new position 0 is the old position n = 0, so mu0 is unchanged
        return GradedBand(self.pres, letters, mu0=self.mu0, lam=self.lam)

    def word_key(self):
        return (self.n, tuple(l.key() for l in self.letters), self.mu_seq())

    def canonical(self):
        """Canonical representative under rotation and inversion.

        Returns (band, exponent): the representative is isomorphic to the
        stored band once its parameter is read as lam**exponent.  The sign
        tracks the holonomy around the cycle, which the parameter enters
        directly when w_1 is inverse and inversely when w_1 is direct; both
        re-anchoring and inversion can therefore flip the exponent.
        """
        e0 = 1 if self.letters[0].inverse else -1
        best = None
        for inv, base in ((1, self), (-1, self.invert())):
            for k in range(base.n):
                if base.letters[k].inverse == base.letters[k - 1].inverse:
                    continue  # rotation must keep opposite end directions
                cand = base.rotate(k)
                e1 = 1 if cand.letters[0].inverse else -1
                exp = e0 * e1 * inv
                item = (cand.word_key(), -exp, cand)
                if best is None or item[:2] < best[:2]:
                    best = item
        return best[2], -best[1]

    def canonical_key(self):
        band, exp = self.canonical()
        return band.word_key() + ((self.lam, exp),)

    def __eq__(self, other):
        return (isinstance(other, GradedBand) and self.pres is other.pres
                and self.word_key() == other.word_key() and self.lam == other.lam)

    def __hash__(self):
        return hash(self.word_key() + (self.lam,))

    def __str__(self):
        return format_object(self)

    def __repr__(self):
        return f"<band {format_object(self)}>"


class InfiniteString:
    """An infinite homotopy string stored as a finite core plus the forced
    periodic tails.

    The core is trimmed to its primitive form: a trailing letter equal to the
    single-arrow extension forced by the rest of the word belongs to the tail,
    not the core.
    """

    kind = "infinite"

    def __init__(self, pres, core, left, right):
        self.pres = pres
        if not (left or right):
            raise StringError("an infinite string needs at least one side")
        core, trimmed = _trim_core(pres, core, left, right)
        self.core = core
        self.left = bool(left)
        self.right = bool(right)
        self.trimmed = trimmed
        if left and left_extension(pres, core) is None:
            raise StringError("core is not left resolvable")
        if right and left_extension(pres, core.invert()) is None:
            raise StringError("core is not right resolvable")

    def shift(self, k):
        return InfiniteString(self.pres, self.core.shift(k), self.left, self.right)

    def invert(self):
        return InfiniteString(self.pres, self.core.invert(), self.right, self.left)

    def key(self):
        return (self.left, self.right, self.core.key())

    def canonical(self):
        other = self.invert()
        return self if self.key() <= other.key() else other

    def truncate(self, left_reps=3, right_reps=3):
        """Finite graded string window: reps copies of the cycle per active
        side.  Returns (string, added_left, added_right) with the number of
        letters added on each side."""
        letters = list(self.core.letters)
        mu0 = self.core.mu0
        added_left = added_right = 0
        if self.left:
            word = list(self.core.letters)
            for _ in range(left_reps * len(_left_cycle(self.pres, self.core))):
                nxt = left_extension(self.pres, _word_string(self.pres, word, mu0))
                word.append(nxt)
                added_left += 1
            letters = word
        if self.right:
            inv = _word_string(self.pres, letters, mu0).invert()
            word = list(inv.letters)
            cyc = _left_cycle(self.pres, self.core.invert())
            for _ in range(right_reps * len(cyc)):
                nxt = left_extension(self.pres, _word_string(self.pres, word, inv.mu0))
                word.append(nxt)
                added_right += 1
            back = _word_string(self.pres, word, inv.mu0).invert()
            letters, mu0 = list(back.letters), back.mu0
        return (GradedString(self.pres, letters, mu0=mu0),
                added_left, added_right)

    def __str__(self):
        return format_object(self)

    def __repr__(self):
        return f"<infinite {format_object(self)}>"

    def __eq__(self, other):
        return (isinstance(other, InfiniteString) and self.pres is other.pres
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())


def _word_string(pres, letters, mu0):
    return GradedString(pres, letters, mu0=mu0)


def left_extension(pres, s):
    """The forced next left letter of s, or None if s is not left resolvable.

    Requires the last letter direct with a zero continuation lying on a full
    relation cycle; the extension is the unique such arrow as a direct letter.
    """
    if s.is_trivial or s.letters[-1].inverse:
        return None
    last = s.letters[-1].path.last_arrow()
    nxt = [b for b in pres.arrows_from(pres.t(last))
           if (b, last) in pres.relations]
    if not nxt:
        return None
    x = nxt[0]
    on_cycle = any(x in cyc for cyc in pres.full_relation_cycles())
    if not on_cycle:
        return None
    return Letter(pres.path([x]))


def _left_cycle(pres, core):
    """The full relation cycle whose letters form the left tail of core."""
    x = left_extension(pres, core)
    for cyc in pres.full_relation_cycles():
        if x.path.arrows[0] in cyc:
            return cyc
    raise StringError("no cycle found for resolvable core")


def _trim_core(pres, core, left, right):
    """Strip forced tail letters off the stored core (primitivity)."""
    trimmed = 0
    changed = True
    while changed and core.n >= 1:
        changed = False
        if left and core.n >= 1:
            sub_letters = core.letters[:-1]
            if sub_letters or True:
                try:
                    sub = GradedString(pres, sub_letters, mu0=core.mu0,
                                       anchor=core.vertex(0) if not sub_letters else None)
                except StringError:
                    sub = None
                if sub is not None and not sub.is_trivial:
                    ext = left_extension(pres, sub)
                    if ext is not None and ext.key() == core.letters[-1].key():
                        core = sub
                        trimmed += 1
                        changed = True
                        continue
        if right and core.n >= 1:
            inv = core.invert()
            sub_letters = inv.letters[:-1]
            try:
                sub = GradedString(pres, sub_letters, mu0=inv.mu0,
                                   anchor=inv.vertex(0) if not sub_letters else None)
            except StringError:
                sub = None
            if sub is not None and not sub.is_trivial:
                ext = left_extension(pres, sub)
                if ext is not None and ext.key() == inv.letters[-1].key():
                    core = sub.invert()
                    trimmed += 1
                    changed = True
    return core, trimmed


def resolve_infinite(pres, s, side):
    """Form the infinite string resolving s on the given side(s).

    side is "left", "right" or "both".  Raises StringError if the requested
    side is not resolvable; a non-primitive core is trimmed.
    """
    if side not in ("left", "right", "both"):
        raise StringError(f"unknown side {side!r}")
    left = side in ("left", "both")
    right = side in ("right", "both")
    return InfiniteString(pres, s, left, right)


def projective_object(pres, v, mu0=0):
    """The trivial string at v: the stalk P(v) concentrated in degree mu0."""
    return GradedString(pres, (), mu0=mu0, anchor=v)


def shift(obj, k):
    return obj.shift(k)


# -- complexes ---------------------------------------------------------------


def to_complex(obj, window=None, pad=3):
    """The complex of projectives attached to a graded string, band or
    (truncated) infinite string.

    Infinite strings require a degree window (lo, hi); the truncation keeps
    pad cycle repetitions beyond it, which is exact for any computation whose
    constraints live inside the window.
    """
    from .oracle import MatrixComplex

    pres = obj.pres
    if isinstance(obj, InfiniteString):
        if window is None:
            raise StringError("infinite strings need a degree window")
        lo, hi = window
        reps = _reps_for_window(obj, lo, pad)
        s, _, _ = obj.truncate(*reps)
        if min(s.mu_seq()) > hi:
            raise StringError("window excludes the entire support")
        return to_complex(s)

    if isinstance(obj, GradedBand):
        positions = list(range(obj.n))
    else:
        positions = list(range(obj.n + 1))

    by_degree = {}
    index_of = {}
    for i in positions:
        j = obj.mu(i)
        by_degree.setdefault(j, [])
        index_of[i] = (j, len(by_degree[j]))
        by_degree[j].append(obj.vertex(i))

    diff = {}

    def add(src_pos, dst_pos, path, coeff):
        js, rs = index_of[src_pos]
        jd, rd = index_of[dst_pos]
        entry = diff.setdefault(js, {}).setdefault((rd, rs), {})
        entry[path] = entry.get(path, 0) + coeff

    nletters = obj.n
    for i in range(1, nletters + 1):
        l = obj.letter(i)
        coeff = obj.lam if (isinstance(obj, GradedBand) and i == 1) else 1
        if isinstance(obj, GradedBand):
            lo_pos, hi_pos = (i - 1) % obj.n, i % obj.n
        else:
            lo_pos, hi_pos = i - 1, i
        if l.inverse:
            add(lo_pos, hi_pos, l.path, coeff)
        else:
            add(hi_pos, lo_pos, l.path, coeff)

    return MatrixComplex(pres, by_degree, diff)


def _reps_for_window(obj, lo, pad=3):
    """Cycle repetitions per side so truncation boundaries exit the window."""
    core = obj.core
    reps = [0, 0]
    if obj.left:
        m = len(_left_cycle(obj.pres, core))
        gap = max(0, core.mu(core.n) - lo)
        reps[0] = (gap // m) + pad
    if obj.right:
        m = len(_left_cycle(obj.pres, core.invert()))
        gap = max(0, core.mu0 - lo)
        reps[1] = (gap // m) + pad
    return reps


# -- literals ----------------------------------------------------------------


def parse_object_literal(pres, text):
    """Parse the CLI object syntax.

    Letters are whitespace separated, written order (leftmost letter is w_n);
    a letter is arrow names joined by '*', prefixed '~' for inverse.  Suffix
    "| mu0=<int>" anchors the grading, bands take "band:" and "lambda=<int>",
    infinite strings "inf-left:"/"inf-right:"/"inf-both:", stalks "v:<vertex>".
    """
    text = text.strip()
    kind, side = "string", None
    for prefix, k, sd in (("band:", "band", None),
                          ("inf-left:", "infinite", "left"),
                          ("inf-right:", "infinite", "right"),
                          ("inf-both:", "infinite", "both")):
        if text.startswith(prefix):
            kind, side = k, sd
            text = text[len(prefix):].strip()
            break

    mu0, lam = 0, 1
    if "|" in text:
        text, _, params = text.partition("|")
        for kv in params.split():
            key, _, val = kv.partition("=")
            if key == "mu0":
                mu0 = int(val)
            elif key == "lambda":
                lam = int(val)
            else:
                raise StringError(f"unknown parameter {key!r}")

    tokens = text.split()
    if kind == "string" and len(tokens) == 1 and tokens[0].startswith("v:"):
        return projective_object(pres, tokens[0][2:], mu0=mu0)
    if not tokens:
        raise StringError("empty object literal")

    letters = []
    for tok in reversed(tokens):  # rightmost token is w_1
        inv = tok.startswith("~")
        if inv:
            tok = tok[1:]
        try:
            p = pres.path(tok.split("*"))
        except PresentationError as exc:
            raise StringError(str(exc)) from None
        letters.append(Letter(p, inv))

    if kind == "band":
        return GradedBand(pres, letters, mu0=mu0, lam=lam)
    s = GradedString(pres, letters, mu0=mu0)
    if kind == "infinite":
        return resolve_infinite(pres, s, side)
    return s


def format_object(obj):
    """Inverse of parse_object_literal, canonical spelling."""
    if isinstance(obj, InfiniteString):
        side = "both" if (obj.left and obj.right) else \
            ("left" if obj.left else "right")
        return f"inf-{side}: " + _format_word(obj.core)
    if isinstance(obj, GradedBand):
        return "band: " + _format_word(obj) + f" lambda={obj.lam}"
    if obj.is_trivial:
        return f"v:{obj.anchor} | mu0={obj.mu0}"
    return _format_word(obj)


def _format_word(obj):
    toks = " ".join(str(l) for l in reversed(obj.letters))
    return f"{toks} | mu0={obj.mu0}"


# -- enumeration --------------------------------------------------------------


def all_letters(pres):
    paths = [p for p in pres.path_basis() if len(p) >= 1]
    out = [Letter(p) for p in paths] + [Letter(p, True) for p in paths]
    return out


def canonical_up_to_shift(s):
    """The canonical representative with the anchor degree moved to 0.

    Shift copies of a string meet the same representative, so this is the
    right dedup key when shifts are scanned separately.
    """
    a = s.shift(s.mu0)
    b = s.invert()
    b = b.shift(b.mu0)
    return a if a.key() <= b.key() else b


def enumerate_strings(pres, max_letters):
    """All graded strings with at most max_letters letters, one per
    isomorphism class up to shift, anchored at degree 0."""
    seen = {}
    for v in pres.vertices:
        s = projective_object(pres, v)
        seen[s.key()] = s
    if max_letters < 1:
        return sorted(seen.values(), key=lambda s: s.key())
    frontier = [GradedString(pres, (l,)) for l in all_letters(pres)]
    length = 1
    while True:
        for s in frontier:
            c = canonical_up_to_shift(s)
            seen.setdefault(c.key(), c)
        if length == max_letters:
            break
        nxt = []
        for s in frontier:
            for l in all_letters(pres):
                try:
                    nxt.append(GradedString(pres, s.letters + (l,)))
                except StringError:
                    continue
        frontier = nxt
        length += 1
    return sorted(seen.values(), key=lambda s: s.key())


def enumerate_bands(pres, max_letters, lam=1):
    """All graded bands with at most max_letters letters, one per class up
    to shift and rotation, anchored so the representative starts in degree 0."""
    seen = {}
    words = [[l] for l in all_letters(pres)]
    for length in range(2, max_letters + 1):
        nxt = []
        for word in words:
            for l in all_letters(pres):
                try:
                    _check_junction(pres, l, word[-1], 0)
                except StringError:
                    continue
                nxt.append(word + [l])
        words = nxt
        for word in words:
            try:
                band = GradedBand(pres, word, lam=lam)
            except StringError:
                continue
            rep, _ = band.canonical()
            rep = rep.shift(rep.mu0)
            key = rep.word_key()
            if key not in seen:
                seen[key] = GradedBand(pres, rep.letters, mu0=0, lam=lam)
    return sorted(seen.values(), key=lambda b: b.word_key())
