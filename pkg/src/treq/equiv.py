"""Translation-equivalence checking by bounded Whitehead-orbit search.

Nothing here ever answers "equivalent": the strongest positive outcome is
``no_counterexample`` together with the number of explored states.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .autos import (TYPE2_ACTIONS, Automorphism, Endomorphism, WhiteheadGraph,
                    compose, identity, whitehead_type1, whitehead_type2)
from .config import DEFAULT_STATE_CAP, default_depth
from .errors import PreconditionError, RankError, TrivialWordError
from .words import (CyclicWord, Word, abelianize, canonical_rotation,
                    cyclic_core, invert_letters, letter_key, letter_str, palindromic_reverse,
                    sort_key, substitute)

NOT_EQUIVALENT = "not_equivalent"
NO_COUNTEREXAMPLE = "no_counterexample"
CAP_EXCEEDED = "cap_exceeded"

EXIT_CODES = {NO_COUNTEREXAMPLE: 0, NOT_EQUIVALENT: 1, CAP_EXCEEDED: 2}


@dataclass(frozen=True)
class Discrepancy:
    """An invariant that differs at the current basis.

    ``kind`` is the first differing invariant in the order ``length``,
    ``letter_count``, ``whitehead_graph`` and ``values`` holds its two values.
    ``differs`` lists every invariant that differs; a length or count mismatch
    always comes with a graph mismatch, since both are read off the graph.
    """

    kind: str
    values: dict
    differs: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.values, "differs": list(self.differs)}

    @classmethod
    def from_json(cls, data: dict) -> "Discrepancy":
        d = dict(data)
        kind = d.pop("kind")
        differs = tuple(d.pop("differs", ()))
        if "pair" in d:
            d["pair"] = list(d["pair"])
        return cls(kind, d, differs)


def _letter_counts(t: tuple[int, ...], rank: int) -> list[int]:
    counts = [0] * rank
    for x in t:
        counts[abs(x) - 1] += 1
    return counts


def _discrepancy(tg: tuple[int, ...], th: tuple[int, ...], rank: int) -> Discrepancy | None:
    # graphs determine counts and lengths, so equal graphs settle it early
    wg = WhiteheadGraph.of_letters(tg, rank)
    wh = WhiteheadGraph.of_letters(th, rank)
    if wg == wh:
        return None
    found = []
    if len(tg) != len(th):
        found.append(("length", {"g": len(tg), "h": len(th)}))
    cg, ch = _letter_counts(tg, rank), _letter_counts(th, rank)
    if cg != ch:
        i = next(i for i in range(rank) if cg[i] != ch[i])
        found.append(("letter_count", {"letter": letter_str(i + 1), "g": cg[i], "h": ch[i]}))
    ga = {(x, y): n for x, y, n in wg.edges()}
    ha = {(x, y): n for x, y, n in wh.edges()}
    pair = min((p for p in set(ga) | set(ha) if ga.get(p, 0) != ha.get(p, 0)),
               key=lambda p: (letter_key(p[0]), letter_key(p[1])))
    found.append(("whitehead_graph", {"pair": [letter_str(pair[0]), letter_str(pair[1])],
                                      "g": ga.get(pair, 0), "h": ha.get(pair, 0)}))
    kind, values = found[0]
    return Discrepancy(kind, values, tuple(k for k, _ in found))


def _cyclic_pair(g: Word, h: Word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if g.rank != h.rank:
        raise RankError(f"rank mismatch: {g.rank} vs {h.rank}")
    if g.is_trivial() or h.is_trivial():
        raise TrivialWordError("translation equivalence is tested on nontrivial elements")
    return CyclicWord.of(g).letters, CyclicWord.of(h).letters


def quick_check(g: Word, h: Word) -> Discrepancy | None:
    """Compare ||.||, letter counts and Whitehead graphs at the given basis."""
    tg, th = _cyclic_pair(g, h)
    return _discrepancy(tg, th, g.rank)


def search_moves(rank: int) -> list[Automorphism]:
    """Whitehead generators used by the orbit search, in a fixed order.

    Type-2 moves for every multiplier and every non-trivial assignment, then
    generator transpositions, then single-generator inversions.  The
    all-``conjugate`` assignment is skipped: it is inner, hence the identity on
    cyclic words.
    """
    moves = []
    for g in range(1, rank + 1):
        for m in (g, -g):
            others = [y for y in range(1, rank + 1) if y != g]
            for acts in itertools.product(TYPE2_ACTIONS, repeat=rank - 1):
                if all(a == "fix" for a in acts) or all(a == "conjugate" for a in acts):
                    continue
                moves.append(whitehead_type2(m, dict(zip(others, acts)), rank))
    for i, j in itertools.combinations(range(1, rank + 1), 2):
        perm = list(range(1, rank + 1))
        perm[i - 1], perm[j - 1] = j, i
        moves.append(whitehead_type1(perm, [1] * rank))
    for i in range(1, rank + 1):
        moves.append(whitehead_type1(list(range(1, rank + 1)),
                                     [-1 if k == i else 1 for k in range(1, rank + 1)]))
    return moves


@dataclass
class Verdict:
    outcome: str
    depth: int                       # depth searched (or reached, on cap)
    states: int
    witness: Automorphism | None = None
    detail: Discrepancy | None = None
    path: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def verify(self, g: Word, h: Word) -> bool:
        """Re-check a not_equivalent witness from scratch."""
        if self.outcome != NOT_EQUIVALENT:
            return False
        from .autos import apply
        return quick_check(apply(self.witness, g), apply(self.witness, h)) == self.detail

    def to_json(self) -> dict:
        data = {"outcome": self.outcome, "depth": self.depth, "states": self.states}
        if self.witness is not None:
            data["witness"] = self.witness.to_json()
            data["detail"] = self.detail.to_json()
            data["path"] = self.path
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        witness = detail = None
        if "witness" in data:
            witness = Automorphism.from_json(data["witness"])
            detail = Discrepancy.from_json(data["detail"])
        return cls(data["outcome"], data["depth"], data["states"], witness,
                   detail, list(data.get("path", [])))


def _apply_cyclic(pos, neg, t):
    out: list[int] = []
    for x in t:
        for y in (pos[x - 1] if x > 0 else neg[-x - 1]):
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    core = cyclic_core(tuple(out))
    return canonical_rotation(core)


def _state_key(tg, th):
    fwd = (tg, th)
    back = (canonical_rotation(invert_letters(tg)), canonical_rotation(invert_letters(th)))
    return min(fwd, back, key=lambda p: (sort_key(p[0]), sort_key(p[1])))


def _expand(chunk, move_tables, rank):
    """Successors of each frontier state, in move order (worker-safe)."""
    out = []
    for tg, th, path in chunk:
        for mi, (pos, neg) in enumerate(move_tables):
            ng = _apply_cyclic(pos, neg, tg)
            nh = _apply_cyclic(pos, neg, th)
            out.append((ng, nh, path + (mi,), _state_key(ng, nh), _discrepancy(ng, nh, rank)))
    return out


def _witness(moves, path) -> Automorphism:
    phi = identity(moves[0].rank)
    for mi in path:
        phi = compose(moves[mi], phi)
    return phi


def orbit_search(g: Word, h: Word, depth: int | None = None,
                 state_cap: int = DEFAULT_STATE_CAP, jobs: int = 1) -> Verdict:
    """Breadth-first search over bases reachable by <= depth Whitehead moves.

    With ``jobs > 1`` each layer is expanded by worker processes and merged in
    the sequential order, so the verdict does not depend on ``jobs``.
    """
    tg, th = _cyclic_pair(g, h)
    rank = g.rank
    depth = default_depth(rank) if depth is None else depth
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    disc = _discrepancy(tg, th, rank)
    if disc:
        return Verdict(NOT_EQUIVALENT, 0, 1, identity(rank), disc, [])
    moves = search_moves(rank)
    tables = [(m._pos, m._neg) for m in moves]
    visited = {_state_key(tg, th)}
    frontier = [(tg, th, ())]
    states = 1
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for d in range(1, depth + 1):
            if pool is not None and len(frontier) >= 2 * jobs:
                size = -(-len(frontier) // jobs)
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                successors = itertools.chain.from_iterable(
                    pool.map(_expand, chunks, itertools.repeat(tables), itertools.repeat(rank)))
            else:
                successors = _expand(frontier, tables, rank)
            new_frontier = []
            for ng, nh, path, key, disc in successors:
                if key in visited:
                    continue
                visited.add(key)
                states += 1
                if states > state_cap:
                    return Verdict(CAP_EXCEEDED, d - 1, states - 1)
                if disc:
                    return Verdict(NOT_EQUIVALENT, d, states, _witness(moves, path),
                                   disc, [moves[i].label for i in path])
                new_frontier.append((ng, nh, path))
            frontier = new_frontier
            if not frontier:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return Verdict(NO_COUNTEREXAMPLE, depth, states)


# -- generators of equivalent families -------------------------------------

def gen_palindrome_pair(w: Word, g: Word, h: Word) -> tuple[Word, Word]:
    """(w(g, h), w^R(g, h)), always translation equivalent."""
    if w.rank != 2:
        raise RankError("the outer word must be in rank 2")
    if g.rank != h.rank:
        raise RankError(f"rank mismatch: {g.rank} vs {h.rank}")
    return substitute(w, [g, h]), substitute(palindromic_reverse(w), [g, h])


def gen_power_family(g: Word, f: Word, M: int) -> list[Word]:
    """g_i = g^i h^(2M - i), i = 1..M, with h = f g^-1 f^-1."""
    if g.is_trivial():
        raise TrivialWordError("g must be nontrivial")
    if M < 1:
        raise PreconditionError("M must be at least 1")
    h = f * ~g * ~f
    if h == ~g:
        raise PreconditionError("f commutes with g, so h = g^-1")
    return [g**i * h**(2 * M - i) for i in range(1, M + 1)]


def nonconjugacy_certificates(words: Sequence[Word]) -> list[dict]:
    """For each pair i < j: abelianizations showing g_i is not conjugate to g_j^{+-1}."""
    out = []
    for (i, u), (j, v) in itertools.combinations(enumerate(words, start=1), 2):
        au, av = abelianize(u), abelianize(v)
        neg = tuple(-x for x in av)
        out.append({"i": i, "j": j, "ab_i": au, "ab_j": av,
                    "distinct": au != av and au != neg})
    return out


def gen_iterated_palindromes(endos: Sequence[Endomorphism], g: Word, h: Word) -> list[Word]:
    """w(g, h) and w_i(g, h) = r_i^R(u_i, v_i)(g, h) for i = 1..N-1.

    With phi = phi_N o ... o phi_1 and w = phi(x): theta_i = phi_i o ... o phi_1
    gives r_i = theta_i(x), and psi_i = phi_N o ... o phi_{i+1} gives
    u_i = psi_i(x), v_i = psi_i(y).
    """
    endos = list(endos)
    if len(endos) < 2:
        raise PreconditionError("need at least two endomorphisms")
    if any(e.rank != 2 for e in endos):
        raise RankError("endomorphisms must act on F(x, y)")
    x = Word((1,), 2)
    ident = Endomorphism([x, Word((2,), 2)])
    n = len(endos)

    def chain(parts):
        out = ident
        for e in parts:
            out = compose(e, out)
        return out

    phi = chain(endos)
    w = phi(x)
    family = [substitute(w, [g, h])]
    for i in range(1, n):
        theta = chain(endos[:i])
        psi = chain(endos[i:])
        r = theta(x)
        u, v = psi.images
        w_i = substitute(palindromic_reverse(r), [u, v])
        family.append(substitute(w_i, [g, h]))
    return family
