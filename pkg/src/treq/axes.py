"""Axes of hyperbolic elements in the Cayley graph of F_k.

Vertices are reduced words and d(u, v) = |u^-1 v|.  For g = c u c^-1 with u
cyclically reduced, the axis of g is the bi-infinite path c * (prefixes of
u u u ...) together with c * (prefixes of u^-1 u^-1 ...), on which g
translates by ||g||.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, RadiusError, TrivialWordError
from .words import Word, cyclic_core, cyclic_length, invert_letters

SEPARATED = "separated"
OVERLAP = "overlap"
UNBOUNDED = "unbounded"
SAME = "same"
OPPOSITE = "opposite"


def _factor(g: Word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    t = g.letters
    core = cyclic_core(t)
    if not core:
        raise TrivialWordError("the identity has no axis")
    i = (len(t) - len(core)) // 2
    return t[:i], core


def _axis_letters(g: Word, radius: int) -> list[tuple[int, ...]]:
    """Axis vertices of length <= radius, ordered along the direction of g."""
    c, u = _factor(g)
    reach = radius - len(c)
    if reach < 0:
        return []
    fwd = (u * (reach // len(u) + 1))[:reach]
    back = (invert_letters(u) * (reach // len(u) + 1))[:reach]
    behind = [c + back[:m] for m in range(reach, 0, -1)]
    ahead = [c + fwd[:m] for m in range(0, reach + 1)]
    return behind + ahead


def axis_points(g: Word, radius: int) -> set[Word]:
    """All vertices v with |v| <= radius and d(v, g v) = ||g||."""
    if radius < 0:
        raise PreconditionError("radius must be nonnegative")
    return {Word._trusted(t, g.rank) for t in _axis_letters(g, radius)}


def _lcp(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def tree_distance(u, v) -> int:
    """d(u, v) = |u^-1 v| for reduced letter tuples (or Words)."""
    u = getattr(u, "letters", u)
    v = getattr(v, "letters", v)
    return len(u) + len(v) - 2 * _lcp(u, v)


def _act(g: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    k = _lcp(invert_letters(g), v)
    return g[:len(g) - k] + v[k:]


@dataclass(frozen=True)
class AxisConfig:
    kind: str
    distance: int | None = None     # separated: d(L_g, L_h)
    delta: int | None = None        # overlap: length of L_g cap L_h
    direction: str | None = None    # overlap / unbounded: same | opposite
    coincident: bool | None = None  # unbounded: the two axes are the same line

    def to_json(self) -> dict:
        if self.kind == SEPARATED:
            return {"kind": SEPARATED, "D": self.distance}
        if self.kind == OVERLAP:
            return {"kind": OVERLAP, "delta": self.delta, "dir": self.direction}
        return {"kind": UNBOUNDED, "dir": self.direction, "coincident": self.coincident}

    @classmethod
    def from_json(cls, data: dict) -> "AxisConfig":
        return cls(data["kind"], data.get("D"), data.get("delta"), data.get("dir"),
                   data.get("coincident"))


def default_radius(g: Word, h: Word) -> int:
    return len(g) + len(h) + cyclic_length(g * h) + 4


def _direction(g: tuple[int, ...], lg: int, seg: list[tuple[int, ...]]) -> int:
    # +1 if g pushes points of seg away from seg[0], -1 if toward it
    x = seg[max(1, len(seg) // 2)]
    s = tree_distance(seg[0], x)
    return 1 if tree_distance(seg[0], _act(g, x)) == s + lg else -1


def _intersection(ag: list, ah: list) -> list:
    hset = set(ah)
    return [v for v in ag if v in hset]


def _min_distance(ag: list, ah: list) -> int:
    return min(tree_distance(u, v) for u in ag for v in ah)


def classify(g: Word, h: Word, radius: int | None = None) -> AxisConfig:
    """Configuration of the axes of g and h, read off a ball of the given radius.

    Raises RadiusError when the ball does not show the whole interaction
    (the answer changes when the ball is enlarged).
    """
    if g.is_trivial() or h.is_trivial():
        raise TrivialWordError("classify expects nontrivial elements")
    r = default_radius(g, h) if radius is None else radius
    lg, lh = cyclic_length(g), cyclic_length(h)
    step = lg + lh
    ag, ah = _axis_letters(g, r), _axis_letters(h, r)
    if not ag or not ah:
        raise RadiusError(f"radius {r} does not reach both axes")
    inter = _intersection(ag, ah)
    bg, bh = _axis_letters(g, r + step), _axis_letters(h, r + step)
    inter2 = _intersection(bg, bh)

    if len(inter2) > len(inter):
        cg, ch = _axis_letters(g, r + 2 * step), _axis_letters(h, r + 2 * step)
        inter3 = _intersection(cg, ch)
        if len(inter3) > len(inter2) and len(inter) >= 2:
            same = _direction(g.letters, lg, inter) == _direction(h.letters, lh, inter)
            return AxisConfig(UNBOUNDED, direction=SAME if same else OPPOSITE,
                              coincident=set(cg) == set(ch))
        raise RadiusError(f"radius {r} is too small to see the axis intersection")

    if len(inter) >= 2:
        same = _direction(g.letters, lg, inter) == _direction(h.letters, lh, inter)
        return AxisConfig(OVERLAP, delta=len(inter) - 1,
                          direction=SAME if same else OPPOSITE)
    if len(inter) == 1:
        return AxisConfig(SEPARATED, distance=0)
    d = _min_distance(ag, ah)
    if _min_distance(bg, bh) != d:
        raise RadiusError(f"radius {r} is too small to see the bridge between the axes")
    return AxisConfig(SEPARATED, distance=d)


def predicted_product_length(cfg: AxisConfig, lg: int, lh: int) -> int:
    """ell(gh) from the axis configuration and ell(g), ell(h)."""
    if cfg.kind == SEPARATED:
        return lg + lh + 2 * cfg.distance
    if cfg.kind == OVERLAP:
        if cfg.direction == SAME:
            return lg + lh
        if lg >= cfg.delta and lh >= cfg.delta:
            return lg + lh - 2 * cfg.delta
        return abs(lg - lh)
    raise PreconditionError(
        "axes share a ray; use commensurable_product_length with the direction")


def commensurable_product_length(direction: str, lg: int, lh: int) -> int:
    """ell(gh) when the axes coincide or share a ray."""
    return lg + lh if direction == SAME else abs(lg - lh)


@dataclass(frozen=True)
class ProductReport:
    config: AxisConfig
    predicted: int
    actual: int

    @property
    def match(self) -> bool:
        return self.predicted == self.actual

    def to_json(self) -> dict:
        data = self.config.to_json()
        data.update(predicted=self.predicted, actual=self.actual, match=self.match)
        return data


def verify_product(g: Word, h: Word, radius: int | None = None) -> ProductReport:
    cfg = classify(g, h, radius)
    lg, lh = cyclic_length(g), cyclic_length(h)
    if cfg.kind == UNBOUNDED:
        predicted = commensurable_product_length(cfg.direction, lg, lh)
    else:
        predicted = predicted_product_length(cfg, lg, lh)
    return ProductReport(cfg, predicted, cyclic_length(g * h))


@dataclass(frozen=True)
class PowerReport:
    config: AxisConfig
    lengths: dict          # (p, q) -> ||g^p h^q||
    predicted: dict        # p + q -> case-formula value

    @property
    def all_equal(self) -> bool:
        by_sum: dict[int, set] = {}
        for (p, q), n in self.lengths.items():
            by_sum.setdefault(p + q, set()).add(n)
        return all(len(v) == 1 for v in by_sum.values())

    @property
    def formula_match(self) -> bool:
        return all(n == self.predicted[p + q] for (p, q), n in self.lengths.items())

    def to_json(self) -> dict:
        return {"config": self.config.to_json(),
                "lengths": [{"p": p, "q": q, "length": n}
                            for (p, q), n in sorted(self.lengths.items())],
                "predicted": {str(s): v for s, v in sorted(self.predicted.items())},
                "all_equal": self.all_equal, "formula_match": self.formula_match}


def check_power_redistribution(g: Word, h: Word, maxsum: int) -> PowerReport:
    """||g^p h^q|| for all positive p + q <= maxsum, with the case-formula replay."""
    a = cyclic_length(g)
    if a == 0 or cyclic_length(h) != a:
        raise PreconditionError("needs ||g|| = ||h|| > 0")
    if g == ~h:
        raise PreconditionError("needs g != h^-1")
    cfg = classify(g, h)
    lengths = {}
    predicted = {}
    for s in range(2, maxsum + 1):
        if cfg.kind == SEPARATED:
            predicted[s] = s * a + 2 * cfg.distance
        elif cfg.kind == OVERLAP and cfg.direction == OPPOSITE:
            predicted[s] = s * a - 2 * cfg.delta
        else:
            predicted[s] = s * a
        for p in range(1, s):
            lengths[(p, s - p)] = cyclic_length(g**p * h**(s - p))
    return PowerReport(cfg, lengths, predicted)
