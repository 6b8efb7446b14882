"""Orderings of minimal zero-sum sequences with partial sums in a narrow window.

Each ``order_lemma*`` function runs a greedy construction: start from a
designated element, then repeatedly pick an unused element according to the
sign (and a few exact values) of the current partial sum.  Ties go to the
smallest value, then the lowest occurrence index.

Constructions that are stated for positive designated elements are run on the
mirrored problem (negate the sequence, swap ``m`` and ``M``) when needed, and
the result is mapped back, so the window label always refers to the original
interval.

Structural outcomes (``L3_iii``, ``L4_iv``, ``L4_v``, ``L4_vi``) carry the
basic two-rule ordering and its wider window.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import PreconditionViolated
from .rho_chi import Interval, _as_interval
from .zsseq import ZSeq, is_minimal

Element = tuple[int, int]  # (value, occurrence index)

LABELS = ("L2", "L3_i", "L3_ii", "L3_iii", "L4_i", "L4_ii", "L4_iii", "L4_iv", "L4_v", "L4_vi")
STRUCTURAL = frozenset({"L3_iii", "L4_iv", "L4_v", "L4_vi"})


@dataclass(frozen=True)
class OrderingResult:
    order: tuple[Element, ...]
    window_lo: int
    window_hi: int
    case_label: str

    @property
    def values(self) -> list[int]:
        return [v for v, _ in self.order]

    @property
    def prefix_sums(self) -> list[int]:
        out, acc = [], 0
        for v, _ in self.order:
            acc += v
            out.append(acc)
        return out

    @property
    def structural(self) -> bool:
        return self.case_label in STRUCTURAL


class ConstructionError(RuntimeError):
    """A greedy rule asked for an element that is no longer available."""


def _elements(s: ZSeq) -> list[Element]:
    return [(v, i) for v, c in s.items for i in range(c)]


def off_extreme(s: ZSeq, iv: Interval) -> list[Element]:
    return [e for e in _elements(s) if e[0] not in (-iv.m, iv.M)]


def _check_sequence(s: ZSeq, iv: Interval) -> None:
    if not s.within(iv):
        raise PreconditionViolated(f"{s} has elements outside {iv}")
    if not is_minimal(s):
        raise PreconditionViolated(f"{s} is not a minimal zero-sum sequence")


Chooser = Callable[[int, list[Element]], Element]


def _run(s: ZSeq, start: Element, choose: Chooser) -> tuple[Element, ...]:
    unused = _elements(s)
    unused.remove(start)
    order = [start]
    total = start[0]
    while unused:
        nxt = choose(total, unused)
        if nxt not in unused:
            raise ConstructionError(f"element {nxt} requested at partial sum {total} is used")
        unused.remove(nxt)
        order.append(nxt)
        total += nxt[0]
    return tuple(order)


def _first(pool: list[Element], pred: Callable[[int], bool], exclude=()) -> Optional[Element]:
    for e in pool:
        if pred(e[0]) and e not in exclude:
            return e
    return None


def _neg(v: int) -> bool:
    return v < 0


def _pos(v: int) -> bool:
    return v > 0


def _sign_rule(total: int, unused: list[Element]) -> Element:
    e = _first(unused, _neg) if total > 0 else _first(unused, _pos)
    if e is None:
        raise ConstructionError(f"no element of opposite sign to partial sum {total}")
    return e


def _mirror_result(res: OrderingResult, label: Callable[[int, int], str]) -> OrderingResult:
    order = tuple((-v, i) for v, i in res.order)
    lo, hi = -res.window_hi, -res.window_lo
    return OrderingResult(order, lo, hi, label(lo, hi))


def _labeler(iv: Interval) -> Callable[[int, int], str]:
    m, M = iv.m, iv.M
    table = {
        (-(m - 1), M - 1): "L2",
        (-(m - 1), M - 2): "L3_i",
        (-(m - 2), M - 1): "L3_ii",
        (-(m - 1), M - 3): "L4_i",
        (-(m - 2), M - 2): "L4_ii",
        (-(m - 3), M - 1): "L4_iii",
    }
    return lambda lo, hi: table[(lo, hi)]


def _lemma2_order(s: ZSeq, iv: Interval) -> tuple[Element, ...]:
    start = min(off_extreme(s, iv))
    return _run(s, start, _sign_rule)


def order_lemma2(s: ZSeq, iv: Interval | tuple[int, int]) -> OrderingResult:
    """Alternate signs starting from an element other than ``-m`` and ``M``.

    Partial sums stay in ``[-(m-1), M-1]``.
    """
    iv = _as_interval(iv)
    _check_sequence(s, iv)
    if not off_extreme(s, iv):
        raise PreconditionViolated(f"every element of {s} is -m or M")
    return OrderingResult(_lemma2_order(s, iv), -(iv.m - 1), iv.M - 1, "L2")


def _structural(s: ZSeq, iv: Interval, label: str) -> OrderingResult:
    return OrderingResult(_lemma2_order(s, iv), -(iv.m - 1), iv.M - 1, label)


def _lemma3_mixed(s: ZSeq, iv: Interval) -> OrderingResult:
    off = off_extreme(s, iv)
    s1 = min((e for e in off if e[0] > 0), key=lambda e: (abs(e[0]), e[1]))
    s2 = min((e for e in off if e[0] < 0), key=lambda e: (abs(e[0]), e[1]))

    def choose(total: int, unused: list[Element]) -> Element:
        if total < 0:
            return _first(unused, _pos)
        if total == 1:
            return s2
        rest = _first(unused, _neg, exclude=(s2,))
        return rest if rest is not None else s2

    return OrderingResult(_run(s, s1, choose), -(iv.m - 2), iv.M - 1, "L3_ii")


def _lemma3_positive(s: ZSeq, iv: Interval) -> OrderingResult:
    # every off-extreme element is positive; s1 <= M - 2 is guaranteed by the caller
    off = sorted(e for e in off_extreme(s, iv) if e[0] > 0)
    s1, s2 = off[0], off[1]

    def choose(total: int, unused: list[Element]) -> Element:
        if total > 0:
            return _first(unused, _neg)
        if total == -1:
            return s2
        rest = _first(unused, _pos, exclude=(s2,))
        return rest if rest is not None else s2

    return OrderingResult(_run(s, s1, choose), -(iv.m - 1), iv.M - 2, "L3_i")


def order_lemma3(s: ZSeq, iv: Interval | tuple[int, int]) -> OrderingResult:
    """Window ``[-(m-1), M-2]`` (L3_i) or ``[-(m-2), M-1]`` (L3_ii), or the structural label L3_iii.

    L3_iii is reported when all elements other than ``-m``, ``M`` equal
    ``M - 1``, or all equal ``-(m - 1)``; it is tested first.
    """
    iv = _as_interval(iv)
    if iv.m < 2 or iv.M < 2:
        raise PreconditionViolated("this construction needs m, M >= 2")
    _check_sequence(s, iv)
    off = off_extreme(s, iv)
    if len(off) < 2:
        raise PreconditionViolated(f"{s} has fewer than two elements other than -m and M")
    offv = {v for v, _ in off}
    if offv == {iv.M - 1} or offv == {-(iv.m - 1)}:
        return _structural(s, iv, "L3_iii")
    if any(v > 0 for v in offv) and any(v < 0 for v in offv):
        return _lemma3_mixed(s, iv)
    if all(v > 0 for v in offv):
        return _lemma3_positive(s, iv)
    return _mirror_result(_lemma3_positive(s.negate(), iv.mirror()), _labeler(iv))


def _lemma4_structural(offv: list[int], iv: Interval) -> Optional[str]:
    m, M = iv.m, iv.M
    values = set(offv)
    if values <= {M - 1, M - 2} or values <= {-(m - 1), -(m - 2)}:
        return "L4_iv"
    if values <= {M - 1, -(m - 1)}:
        return "L4_v"
    if sum(v != M - 1 for v in offv) <= 1 or sum(v != -(m - 1) for v in offv) <= 1:
        return "L4_vi"
    return None


def _lemma4_positive(s: ZSeq, iv: Interval) -> OrderingResult:
    off = sorted(e for e in off_extreme(s, iv) if e[0] > 0)
    s1, s2, s3 = off[0], off[1], off[2]

    def choose(total: int, unused: list[Element]) -> Element:
        if total > 0:
            return _first(unused, _neg)
        if total == -1:
            return s2
        if total == -2:
            return s3 if s3 in unused else s2
        rest = _first(unused, _pos, exclude=(s2, s3))
        if rest is not None:
            return rest
        return s3 if s3 in unused else s2

    return OrderingResult(_run(s, s1, choose), -(iv.m - 1), iv.M - 3, "L4_i")


def _lemma4_mixed_triple(s: ZSeq, iv: Interval) -> Optional[tuple[Element, Element, Element]]:
    off = off_extreme(s, iv)
    key = lambda e: (abs(e[0]), e[0] < 0, e[1])
    lead = [e for e in off if 0 < e[0] <= iv.M - 2]
    if not lead:
        return None
    s2 = min(lead, key=key)
    negs = [e for e in off if e[0] < 0]
    poss = [e for e in off if e[0] > 0 and e != s2]
    if not negs or not poss:
        return None
    return min(negs, key=key), s2, min(poss, key=key)


def _lemma4_mixed(s: ZSeq, iv: Interval, triple) -> OrderingResult:
    s1, s2, s3 = triple

    def choose(total: int, unused: list[Element]) -> Element:
        if total == 1:
            return s1
        if total > 1:
            # s1 is kept back for partial sum 1 unless nothing else is left
            rest = _first(unused, _neg, exclude=(s1,))
            return rest if rest is not None else s1
        if total == -1:
            return s3
        rest = _first(unused, _pos, exclude=(s3,))
        return rest if rest is not None else s3

    return OrderingResult(_run(s, s2, choose), -(iv.m - 2), iv.M - 2, "L4_ii")


def order_lemma4(s: ZSeq, iv: Interval | tuple[int, int]) -> OrderingResult:
    """Windows ``[-(m-1), M-3]``, ``[-(m-2), M-2]``, ``[-(m-3), M-1]`` or a structural label.

    Structural cases are tested first, in the order L4_iv, L4_v, L4_vi.
    """
    iv = _as_interval(iv)
    if iv.m < 4 or iv.M < 4:
        raise PreconditionViolated("this construction needs m, M >= 4")
    _check_sequence(s, iv)
    off = off_extreme(s, iv)
    if len(off) < 3:
        raise PreconditionViolated(f"{s} has fewer than three elements other than -m and M")
    offv = [v for v, _ in off]
    label = _lemma4_structural(offv, iv)
    if label:
        return _structural(s, iv, label)
    if all(v > 0 for v in offv):
        return _lemma4_positive(s, iv)
    if all(v < 0 for v in offv):
        return _mirror_result(_lemma4_positive(s.negate(), iv.mirror()), _labeler(iv))
    triple = _lemma4_mixed_triple(s, iv)
    if triple is not None:
        return _lemma4_mixed(s, iv, triple)
    flipped, miv = s.negate(), iv.mirror()
    triple = _lemma4_mixed_triple(flipped, miv)
    if triple is None:
        raise ConstructionError(f"no designated elements for {s} over {iv}")
    return _mirror_result(_lemma4_mixed(flipped, miv, triple), _labeler(iv))


def order_for(lemma: int, s: ZSeq, iv: Interval | tuple[int, int]) -> OrderingResult:
    fn = {2: order_lemma2, 3: order_lemma3, 4: order_lemma4}.get(lemma)
    if fn is None:
        raise ValueError(f"unknown lemma {lemma}; expected 2, 3 or 4")
    return fn(s, iv)


def verify_window(s: ZSeq, result: OrderingResult) -> bool:
    """Check coverage, window membership, distinct and nonzero proper prefixes, zero total."""
    if Counter(v for v, _ in result.order) != Counter(dict(s.items)):
        return False
    if len(set(result.order)) != len(result.order):
        return False
    if any(not 0 <= i < s.multiplicity(v) for v, i in result.order):
        return False
    sums = result.prefix_sums
    if not sums or sums[-1] != 0:
        return False
    if any(t == 0 for t in sums[:-1]):
        return False
    if len(set(sums)) != len(sums):
        return False
    return all(result.window_lo <= t <= result.window_hi for t in sums)


def search_ordering(s: ZSeq, lo: int, hi: int) -> Optional[list[int]]:
    """Exhaustive search for an ordering with all partial sums in ``[lo, hi]``.

    Returns the value sequence or None.  Distinct and nonzero prefixes are
    required along the way, so only valid orderings are produced.
    """
    remaining = dict(s.items)
    n = s.length
    order: list[int] = []
    seen: set[int] = set()

    def dfs(total: int) -> bool:
        if len(order) == n:
            return total == 0
        for v in sorted(remaining):
            if not remaining[v]:
                continue
            nxt = total + v
            if not lo <= nxt <= hi or nxt in seen:
                continue
            if nxt == 0 and len(order) + 1 < n:
                continue
            remaining[v] -= 1
            order.append(v)
            seen.add(nxt)
            if dfs(nxt):
                return True
            seen.discard(nxt)
            order.pop()
            remaining[v] += 1
        return False

    return list(order) if dfs(0) else None
