"""Permutations on {1..n}, cycle notation, and permutation groups.

Groups carry a deterministic stabilizer chain (Schreier-Sims with base
points chosen as smallest moved points, scanned in order), built eagerly at
construction so instances are immutable and safe to share.  Composition
follows the left-action convention: (a*b) sends i to a(b(i)), matching the
way group elements act on variable indices everywhere in this package.
"""

import re
from math import prod


class Permutation:
    """Bijection of {1..n}; images[i-1] is the image of point i."""

    __slots__ = ("degree", "images")

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"image array {images} is not a bijection of 1..{n}")
        object.__setattr__(self, "degree", n)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree):
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree, cycles):
        images = list(range(1, degree + 1))
        seen = set()
        for cycle in cycles:
            for pt in cycle:
                if not 1 <= pt <= degree:
                    raise ValueError(f"point {pt} outside 1..{degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated")
                seen.add(pt)
            for a, b in zip(cycle, cycle[1:]):
                images[a - 1] = b
            if cycle:
                images[cycle[-1] - 1] = cycle[0]
        return cls(images)

    def __call__(self, point):
        return self.images[point - 1]

    def __mul__(self, other):
        """Apply other first, then self: (a*b)(i) = a(b(i))."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        a = self.images
        return Permutation(a[x - 1] for x in other.images)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j - 1] = i + 1
        return Permutation(inv)

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("permutation power needs an integer exponent")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Permutation.identity(self.degree)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_identity(self):
        return all(i + 1 == j for i, j in enumerate(self.images))

    def order(self):
        from math import lcm
        result = 1
        for cycle in self.cycles():
            result = lcm(result, len(cycle))
        return result

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cycle = [start]
            seen.add(start)
            pt = self.images[start - 1]
            while pt != start:
                cycle.append(pt)
                seen.add(pt)
                pt = self.images[pt - 1]
            out.append(tuple(cycle))
        return out

    def cycle_string(self):
        """Cycle notation; the identity prints as the empty string."""
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())

    def moved_points(self):
        return [i + 1 for i, j in enumerate(self.images) if i + 1 != j]

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation[{self.degree}]({self.cycle_string() or 'id'})"


class CycleParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_CYCLE_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<int>\d+)|(?P<comma>,))")


def parse_cycles(text, degree):
    """Parse disjoint cycle notation; the empty string is the identity.

    Grammar: perm := cycle*; cycle := "(" int ("," int)+ ")".  Whitespace is
    ignored.  Out-of-range, repeated points, and malformed syntax all raise
    CycleParseError carrying the offending position.
    """
    cycles = []
    seen = set()
    pos = 0
    current = None
    expecting = "open"
    while pos < len(text):
        m = _CYCLE_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise CycleParseError(f"unexpected character {text[pos]!r}", pos)
            break
        kind = m.lastgroup
        at = m.start(kind)
        token = m.group(kind)
        pos = m.end()
        if kind == "open":
            if expecting != "open":
                raise CycleParseError("unexpected '('", at)
            current = []
            expecting = "int"
        elif kind == "int":
            if expecting != "int":
                raise CycleParseError(f"unexpected number {token}", at)
            pt = int(token)
            if not 1 <= pt <= degree:
                raise CycleParseError(f"point {pt} outside 1..{degree}", at)
            if pt in seen:
                raise CycleParseError(f"point {pt} repeated", at)
            seen.add(pt)
            current.append(pt)
            expecting = "comma-or-close"
        elif kind == "comma":
            if expecting != "comma-or-close":
                raise CycleParseError("unexpected ','", at)
            expecting = "int"
        else:  # close
            if expecting != "comma-or-close":
                raise CycleParseError("unexpected ')'", at)
            if len(current) < 2:
                raise CycleParseError("cycle needs at least two points", at)
            cycles.append(current)
            current = None
            expecting = "open"
    if expecting != "open":
        raise CycleParseError("unterminated cycle", len(text))
    return Permutation.from_cycles(degree, cycles)


# -- stabilizer chain ----------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.transversal = {}


class _Chain:
    """Mutable deterministic Schreier-Sims chain on raw image tuples."""

    def __init__(self, degree):
        self.degree = degree
        self.levels = []
        self.identity = tuple(range(1, degree + 1))

    @staticmethod
    def _mul(a, b):
        return tuple(a[x - 1] for x in b)

    @staticmethod
    def _inv(a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j - 1] = i + 1
        return tuple(out)

    def _rebuild_orbit(self, idx):
        level = self.levels[idx]
        gens = [g for lv in self.levels[idx:] for g in lv.gens]
        transversal = {level.point: self.identity}
        queue = [level.point]
        while queue:
            pt = queue.pop(0)
            u = transversal[pt]
            for g in gens:
                image = g[pt - 1]
                if image not in transversal:
                    transversal[image] = self._mul(g, u)
                    queue.append(image)
        level.transversal = transversal

    def sift(self, perm):
        """Residue and the level index where sifting stopped."""
        for idx, level in enumerate(self.levels):
            image = perm[level.point - 1]
            u = level.transversal.get(image)
            if u is None:
                return perm, idx
            perm = self._mul(self._inv(u), perm)
        return perm, len(self.levels)

    def contains(self, perm):
        residue, _ = self.sift(perm)
        return residue == self.identity

    def add(self, perm):
        residue, idx = self.sift(perm)
        if residue == self.identity:
            return False
        self._insert(residue, idx)
        while True:
            violation = self._find_violation()
            if violation is None:
                return True
            residue, idx = violation
            self._insert(residue, idx)

    def _insert(self, perm, idx):
        if idx == len(self.levels):
            point = min(i + 1 for i, j in enumerate(perm) if i + 1 != j)
            self.levels.append(_Level(point))
        self.levels[idx].gens.append(perm)
        for j in range(idx, -1, -1):
            self._rebuild_orbit(j)

    def _find_violation(self):
        """First Schreier generator whose residue is not the identity."""
        for idx, level in enumerate(self.levels):
            gens = [g for lv in self.levels[idx:] for g in lv.gens]
            for pt in sorted(level.transversal):
                u = level.transversal[pt]
                for g in gens:
                    image = g[pt - 1]
                    u2 = level.transversal[image]
                    schreier = self._mul(self._inv(u2), self._mul(g, u))
                    if schreier == self.identity:
                        continue
                    residue, drop = self.sift(schreier)
                    if residue != self.identity:
                        return residue, drop
        return None

    def order(self):
        return prod(len(level.transversal) for level in self.levels) if self.levels else 1


class PermGroup:
    """Finitely generated permutation group with an eager stabilizer chain."""

    __slots__ = ("degree", "generators", "_chain")

    def __init__(self, generators, degree=None):
        generators = tuple(generators)
        if degree is None:
            if not generators:
                raise ValueError("need a degree or at least one generator")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} vs {degree}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators",
                           tuple(g for g in generators if not g.is_identity()))
        chain = _Chain(degree)
        for g in self.generators:
            chain.add(g.images)
        object.__setattr__(self, "_chain", chain)

    def __setattr__(self, name, value):
        raise AttributeError("PermGroup is immutable")

    @classmethod
    def _from_chain(cls, chain, generators):
        obj = object.__new__(cls)
        object.__setattr__(obj, "degree", chain.degree)
        object.__setattr__(obj, "generators", tuple(generators))
        object.__setattr__(obj, "_chain", chain)
        return obj

    def order(self):
        return self._chain.order()

    def __contains__(self, perm):
        if not isinstance(perm, Permutation) or perm.degree != self.degree:
            return False
        return self._chain.contains(perm.images)

    def strong_generators(self):
        return [Permutation(g) for lv in self._chain.levels for g in lv.gens]

    def base(self):
        return [lv.point for lv in self._chain.levels]

    def is_transitive(self):
        if self.degree == 1:
            return True
        orbit = {1}
        queue = [1]
        gens = [g.images for g in self.generators]
        while queue:
            pt = queue.pop()
            for g in gens:
                image = g[pt - 1]
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        return len(orbit) == self.degree

    def orbits(self):
        remaining = set(range(1, self.degree + 1))
        gens = [g.images for g in self.generators]
        out = []
        while remaining:
            start = min(remaining)
            orbit = {start}
            queue = [start]
            while queue:
                pt = queue.pop()
                for g in gens:
                    image = g[pt - 1]
                    if image not in orbit:
                        orbit.add(image)
                        queue.append(image)
            out.append(sorted(orbit))
            remaining -= orbit
        return out

    def contains_group(self, other):
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.contains_group(other))

    def __hash__(self):
        return hash((self.degree, self.order()))

    def is_normal_in(self, ambient):
        """True iff ambient normalizes this group (conjugates of generators stay in)."""
        if ambient.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {ambient.degree}")
        for s in ambient.generators:
            s_inv = s.inverse()
            for g in self.generators:
                if s * g * s_inv not in self:
                    return False
        return True

    def derived_subgroup(self):
        """Normal closure of the commutators of the generators."""
        chain = _Chain(self.degree)
        gens = list(self.generators) or [Permutation.identity(self.degree)]
        added = []
        work = []
        for a in gens:
            for b in gens:
                c = a * b * a.inverse() * b.inverse()
                if not c.is_identity() and chain.add(c.images):
                    added.append(c)
                    work.append(c)
        while work:
            g = work.pop(0)
            for s in gens:
                c = s * g * s.inverse()
                if not chain.contains(c.images):
                    chain.add(c.images)
                    added.append(c)
                    work.append(c)
        return PermGroup._from_chain(chain, added)

    def is_solvable(self):
        current = self
        order = current.order()
        while order > 1:
            derived = current.derived_subgroup()
            next_order = derived.order()
            if next_order == order:
                return False
            current = derived
            order = next_order
        return True

    def elements(self, limit=None):
        """Exhaustive enumeration by closure; guard with limit for safety."""
        gens = [g.images for g in self.generators]
        identity = tuple(range(1, self.degree + 1))
        seen = {identity}
        queue = [identity]
        while queue:
            current = queue.pop()
            for g in gens:
                nxt = tuple(g[x - 1] for x in current)
                if nxt not in seen:
                    if limit is not None and len(seen) >= limit:
                        raise ValueError(f"enumeration exceeded limit {limit}")
                    seen.add(nxt)
                    queue.append(nxt)
        return [Permutation(images) for images in sorted(seen)]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def group_make(generators, degree=None):
    return PermGroup(generators, degree)


def cyclic_group(n):
    return PermGroup([Permutation.from_cycles(n, [list(range(1, n + 1))])]) \
        if n > 1 else PermGroup([], degree=1)


def symmetric_group(n):
    if n <= 1:
        return PermGroup([], degree=max(n, 1))
    gens = [Permutation.from_cycles(n, [[1, 2]])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [list(range(1, n + 1))]))
    return PermGroup(gens)

def alternating_group(n):
    if n <= 2:
        return PermGroup([], degree=max(n, 1))
    gens = [Permutation.from_cycles(n, [[1, 2, k]]) for k in range(3, n + 1)]
    return PermGroup(gens)


def _grid_point(x, y, n):
    """Encode the pair with first component x (block index) as n*(x-1)+y."""
    return n * (x - 1) + y


def direct_product(g, h):
    """Product action of g x h on the grid {1..m} x {1..n}, m = deg(g)."""
    m, n = g.degree, h.degree
    gens = []
    for a in g.generators:
        images = [0] * (m * n)
        for x in range(1, m + 1):
            for y in range(1, n + 1):
                images[_grid_point(x, y, n) - 1] = _grid_point(a(x), y, n)
        gens.append(Permutation(images))
    for b in h.generators:
        images = [0] * (m * n)
        for x in range(1, m + 1):
            for y in range(1, n + 1):
                images[_grid_point(x, y, n) - 1] = _grid_point(x, b(y), n)
        gens.append(Permutation(images))
    return PermGroup(gens, degree=m * n)


def wreath_product(h, g):
    """Wreath product of h (on Y, |Y|=n) by g (on X, |X|=m), acting on Y x X.

    Generators: one copy of each h-generator per point of X, acting inside
    that block, plus the g-generators permuting blocks; the pair (y, x) is
    encoded as n*(x-1)+y, so block x occupies points n*(x-1)+1 .. n*x.
    """
    m, n = g.degree, h.degree
    gens = []
    for x0 in range(1, m + 1):
        for b in h.generators:
            images = list(range(1, m * n + 1))
            for y in range(1, n + 1):
                images[_grid_point(x0, y, n) - 1] = _grid_point(x0, b(y), n)
            gens.append(Permutation(images))
    for a in g.generators:
        images = [0] * (m * n)
        for x in range(1, m + 1):
            for y in range(1, n + 1):
                images[_grid_point(x, y, n) - 1] = _grid_point(a(x), y, n)
        gens.append(Permutation(images))
    return PermGroup(gens, degree=m * n)


# -- group definition files -----------------------------------------------------


def parse_group_file(text, degree=None):
    """Parse a group definition file.

    One named permutation per line, "name = cycles"; group lines read
    "group NAME = name1 name2 ...".  '#' starts a comment; blank lines are
    skipped.  When degree is omitted it is the largest point mentioned.
    Returns (permutations, groups), both name-keyed dicts.
    """
    perm_lines = []
    group_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("group "):
            body = line[len("group "):]
            name, _, rest = body.partition("=")
            name = name.strip()
            members = rest.split()
            if not name or not members:
                raise ValueError(f"line {lineno}: malformed group line {raw!r}")
            group_lines.append((lineno, name, members))
        else:
            name, eq, rest = line.partition("=")
            if not eq:
                raise ValueError(f"line {lineno}: expected 'name = cycles' in {raw!r}")
            perm_lines.append((lineno, name.strip(), rest.strip()))
    if degree is None:
        degree = 0
        for _, _, cycles in perm_lines:
            for num in re.findall(r"\d+", cycles):
                degree = max(degree, int(num))
        if degree == 0:
            raise ValueError("cannot infer a degree from an empty file")
    perms = {}
    for lineno, name, cycles in perm_lines:
        if name in perms:
            raise ValueError(f"line {lineno}: permutation {name!r} redefined")
        try:
            perms[name] = parse_cycles(cycles, degree)
        except CycleParseError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    groups = {}
    for lineno, name, members in group_lines:
        missing = [m for m in members if m not in perms]
        if missing:
            raise ValueError(f"line {lineno}: unknown permutation names {missing}")
        groups[name] = PermGroup([perms[m] for m in members], degree=degree)
    return perms, groups
