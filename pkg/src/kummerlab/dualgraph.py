"""Dual graphs of curve configurations: ADE diagrams, definiteness, fundamental cycles,
and a bookkeeping replay of two partial-resolution sequences.

All arithmetic is on Python integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DualGraph:
    names: tuple
    self_intersections: tuple
    edges: tuple  # ((i, j, multiplicity), ...) with i < j
    marks: tuple = ()  # ((vertex, mark), ...)

    @classmethod
    def build(cls, names, edges, self_int=None, marks=None) -> DualGraph:
        names = tuple(names)
        index = {n: i for i, n in enumerate(names)}
        if len(index) != len(names):
            raise ValueError("duplicate vertex names")
        si = tuple(self_int.get(n, -2) if self_int else -2 for n in names)
        acc = Counter()
        for e in edges:
            a, b, mult = (*e, 1) if len(e) == 2 else e
            i, j = sorted((index[a], index[b]))
            if i == j:
                raise ValueError("loops are not allowed")
            acc[(i, j)] += mult
        es = tuple((i, j, m) for (i, j), m in sorted(acc.items()))
        mk = tuple(sorted((index[n], m) for n, m in (marks or {}).items()))
        return cls(names, si, es, mk)

    @property
    def n(self) -> int:
        return len(self.names)

    def matrix(self) -> list[list[int]]:
        M = [[0] * self.n for _ in range(self.n)]
        for i, s in enumerate(self.self_intersections):
            M[i][i] = s
        for i, j, m in self.edges:
            M[i][j] += m
            M[j][i] += m
        return M

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b, _ in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def induced(self, vertices) -> DualGraph:
        keep = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(keep)}
        es = tuple((pos[i], pos[j], m) for i, j, m in self.edges if i in pos and j in pos)
        mk = tuple((pos[v], m) for v, m in self.marks if v in pos)
        return DualGraph(tuple(self.names[v] for v in keep),
                         tuple(self.self_intersections[v] for v in keep), es, mk)

    def connected_components(self) -> list[list[int]]:
        seen, out = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.connected_components()) == 1

    def index(self, name) -> int:
        return self.names.index(name)


# ADE diagrams ---------------------------------------------------------------

def _path_edges(labels):
    return [(labels[k], labels[k + 1]) for k in range(len(labels) - 1)]


def dynkin(kind: str, n: int | None = None) -> DualGraph:
    """Standard (Bourbaki-numbered) Dynkin diagram; vertices are 1..n."""
    if n is None:
        kind, n = kind[0], int(kind[1:])
    kind = kind.upper()
    names = list(range(1, n + 1))
    if kind == "A" and n >= 1:
        edges = _path_edges(names)
    elif kind == "D" and n >= 4:
        edges = _path_edges(names[:-1]) + [(n - 2, n)]
    elif kind == "E" and n in (6, 7, 8):
        edges = [(1, 3)] + _path_edges(names[2:]) + [(2, 4)]
    else:
        raise ValueError(f"no Dynkin diagram {kind}{n}")
    return DualGraph.build(names, edges)


def affine(kind: str, n: int | None = None) -> DualGraph:
    """Extended diagram: the vertex 0 of the negative highest root is added."""
    if n is None:
        kind, n = kind[0], int(kind[1:])
    kind = kind.upper()
    base = dynkin(kind, n)
    if kind == "A":
        attach = [1, n] if n > 1 else [(1, 2)]
    elif kind == "D":
        attach = [2]
    else:
        attach = {6: [2], 7: [1], 8: [8]}[n]
    edges = [(base.names[i], base.names[j], m) for i, j, m in base.edges]
    if attach == [(1, 2)]:
        edges.append((0, 1, 2))
    else:
        edges += [(0, v) for v in attach]
    return DualGraph.build([0] + list(base.names), edges)


# definiteness ------------------------------------------------------------------

def leading_minors(M: list[list[int]]) -> list[int]:
    """Leading principal minors via fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [row[:] for row in M]
    minors = []
    prev = 1
    for k in range(n):
        piv = A[k][k]
        minors.append(piv)
        if piv == 0:
            # the remaining minors are not needed by callers once one vanishes
            minors.extend(_direct_minor(M, j) for j in range(k + 1, n))
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * piv - A[i][k] * A[k][j]) // prev
        prev = piv
    return minors


def _direct_minor(M, k):
    return determinant([row[: k + 1] for row in M[: k + 1]])


def determinant(M: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss with row pivoting)."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_negative_definite(g: DualGraph | list) -> bool:
    M = g.matrix() if isinstance(g, DualGraph) else g
    minors = leading_minors(M)
    return all((-1) ** (k + 1) * m > 0 for k, m in enumerate(minors))


# fundamental cycle -------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalCycle:
    coefficients: tuple
    self_intersection: int

    def to_json(self) -> dict:
        return {"Z": list(self.coefficients), "Z2": self.self_intersection}


def _pair(M, x, y) -> int:
    return sum(x[i] * M[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if M[i][j])


def fundamental_cycle(g: DualGraph) -> FundamentalCycle:
    """Laufer's algorithm: start from the reduced cycle, add E_j while Z.E_j > 0."""
    if not g.is_connected():
        raise ValueError("fundamental cycle needs a connected graph")
    if not is_negative_definite(g):
        raise ValueError("intersection matrix is not negative definite")
    M = g.matrix()
    Z = [1] * g.n
    while True:
        for j in range(g.n):
            if sum(Z[i] * M[i][j] for i in range(g.n)) > 0:
                Z[j] += 1
                break
        else:
            return FundamentalCycle(tuple(Z), _pair(M, Z, Z))


# classification ------------------------------------------------------------------

def classify(g: DualGraph) -> str | None:
    """ADE type of a connected (-2)-tree, or None."""
    n = g.n
    if n == 0 or not g.is_connected():
        return None
    if any(s != -2 for s in g.self_intersections) or any(m != 1 for _, _, m in g.edges):
        return None
    if len(g.edges) != n - 1:
        return None
    degrees = [len(g.neighbors(i)) for i in range(n)]
    if max(degrees) <= 2:
        return f"A{n}"
    branch = [i for i in range(n) if degrees[i] >= 3]
    if len(branch) != 1 or degrees[branch[0]] != 3:
        return None
    c = branch[0]
    arms = []
    for start in g.neighbors(c):
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def type_rank(t: str) -> int:
    return int(t[1:])


def singularities(g: DualGraph, visible) -> Counter:
    """ADE types of the connected components of the curves not in ``visible``."""
    hidden = [i for i in range(g.n) if g.names[i] not in set(visible)]
    sub = g.induced(hidden)
    out = Counter()
    for comp in sub.connected_components():
        t = classify(sub.induced(comp))
        if t is None:
            raise ValueError("contracted configuration is not a rational double point")
        out[t] += 1
    return out


# resolution traces ------------------------------------------------------------------

@dataclass(frozen=True)
class TraceState:
    step: str
    components: int
    singularities: dict
    resolved_rank: int
    singleton: bool = True  # one center (as opposed to a preliminary blow-up of a union)

    def to_json(self) -> dict:
        return {"step": self.step, "singleton": self.singleton, "components": self.components,
                "singularities": dict(sorted(self.singularities.items())), "resolved_rank": self.resolved_rank}


@dataclass(frozen=True)
class ResolutionTrace:
    start: str
    initial: dict
    states: tuple = field(default=())
    notes: tuple = ()

    @property
    def initial_rank(self) -> int:
        return sum(type_rank(t) * c for t, c in self.initial.items())

    @property
    def singleton_steps(self) -> int:
        return sum(1 for s in self.states if s.singleton)

    @property
    def resolved(self) -> bool:
        return not self.states or not self.states[-1].singularities

    def multisets(self) -> list[dict]:
        return [s.singularities for s in self.states]

    def to_json(self) -> dict:
        return {"start": self.start, "initial": dict(sorted(self.initial.items())),
                "initial_rank": self.initial_rank, "states": [s.to_json() for s in self.states],
                "notes": list(self.notes)}


def _rank(ms) -> int:
    return sum(type_rank(t) * c for t, c in ms.items())


def chain_graph() -> DualGraph:
    """Theta_0..Theta_16: Theta_0, Theta_1 and Theta_15, Theta_16 are the forks of a chain Theta_2..Theta_14."""
    edges = [(0, 2), (1, 2)] + [(k, k + 1) for k in range(2, 14)] + [(14, 15), (14, 16)]
    return DualGraph.build(range(17), edges, marks={8: "half-fiber"})


def star_pair_graph() -> DualGraph:
    """Two copies (r = 1, 2) of Theta_{r,0..8}: forks at Theta_{r,2} and Theta_{r,6} of a chain."""
    edges = []
    for r in (1, 2):
        edges += [((r, 0), (r, 2)), ((r, 1), (r, 2))]
        edges += [((r, k), (r, k + 1)) for k in range(2, 6)]
        edges += [((r, 6), (r, 7)), ((r, 6), (r, 8))]
    names = [(r, k) for r in (1, 2) for k in range(9)]
    return DualGraph.build(names, edges, marks={(1, 4): "half-fiber", (2, 4): "half-fiber"})


def _replay(g: DualGraph, visible_steps, start_visible, start: str, notes=()) -> ResolutionTrace:
    ms = singularities(g, start_visible)
    initial = dict(ms)
    states, prev_rank = [], _rank(ms)
    for label, visible, single in visible_steps:
        ms = singularities(g, visible)
        r = _rank(ms)
        states.append(TraceState(label, len(set(visible)), dict(ms), prev_rank - r, single))
        prev_rank = r
    return ResolutionTrace(start, initial, tuple(states), tuple(notes))


TWO_D8 = "TwoD8plusD4chain"
FOUR_D4 = "FourD4plusD4"
_ALIASES = {"two-d8": TWO_D8, "twod8plusd4chain": TWO_D8, "four-d4": FOUR_D4, "fourd4plusd4": FOUR_D4,
            "empty": "empty", "resolved": "empty"}


def partial_resolution_trace(start: str) -> ResolutionTrace:
    key = _ALIASES.get(start.lower(), start)
    if key == "empty":
        return ResolutionTrace("empty", {}, (), ())
    if key == TWO_D8:
        g = chain_graph()
        steps = [
            ("step 1: blow up the image of Phi_1 + Phi_2", [6, 8, 10], False),
            ("step 2: blow up the image of Upsilon_{1,1..4}", [4, 6, 7, 8, 9, 10, 12], False),
            ("step 3: blow up the image of Upsilon_{2,1..4}", [2] + list(range(4, 13)) + [14], False),
            ("step 4: blow up the image of Psi_{2,1} + Psi_{2,4}", list(range(17)), False),
        ]
        notes = ["the Psi_{2,i} are enumerated so that Psi_{2,1} and Psi_{2,4} meet Theta_2 and Theta_14; "
                 "any enumeration with that property gives the same trace"]
        return _replay(g, steps, [8], TWO_D8, notes)
    if key == FOUR_D4:
        g = star_pair_graph()
        visible = {(r, 4) for r in (1, 2)}
        steps = []
        visible |= {(r, k) for r in (1, 2) for k in (2, 6)}
        steps.append(("blow up Z (image of Phi_1 + ... + Phi_4)", sorted(visible), False))
        # sixteen Upsilon_{i,j}: each A1 on a leaf receives one, each A1 on Theta_{r,3}
        # or Theta_{r,5} receives two; the second one is already Cartier (identity step)
        targets = []
        for r in (1, 2):
            targets += [(r, 0), (r, 1), (r, 3), (r, 3), (r, 5), (r, 5), (r, 7), (r, 8)]
        for idx, tgt in enumerate(targets):
            i, j = divmod(idx, 4)
            visible = visible | {tgt}
            steps.append((f"blow up the image of Upsilon_{{{i + 1},{j + 1}}}", sorted(visible), True))
        notes = ["Upsilon blow-ups whose center is already Cartier are identities (resolved_rank 0)"]
        return _replay(g, steps, sorted({(r, 4) for r in (1, 2)}), FOUR_D4, notes)
    raise ValueError(f"unrecognized start configuration {start!r}")


__all__ = [
    "DualGraph", "FundamentalCycle", "ResolutionTrace", "TraceState", "dynkin", "affine",
    "is_negative_definite", "leading_minors", "determinant", "fundamental_cycle", "classify",
    "singularities", "partial_resolution_trace", "chain_graph", "star_pair_graph",
]
