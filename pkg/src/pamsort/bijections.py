"""Explicit bijections between sortable sets, restricted growth functions
and lattice paths.

Every map validates its stated domain and raises ``ValueError`` outside
it.  Inverses are provided wherever they exist in closed form; the
labeled-Motzkin encoding ``beta_motzkin`` is forward-only.

>>> dyck_to_av213(dyck_path("UUDUUDDDUD"))
(2, 5, 3, 4, 1)
>>> from .words_core import parse_word
>>> eta(parse_word("13 14 15 10 12 6 7 8 11 9 3 1 4 5 2"))
(1, 1, 1, 2, 2, 3, 3, 3, 2, 3, 4, 5, 4, 4, 5)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .paths_trees import LatticePath, PathKind, dyck_path, schroder_path
from .patterns import contains, contains_classical
from .words_core import (Domain, Which, Word, inflate, is_member,
                         ltr_decompose, ltr_minima, standardize)

Steps = tuple[str, ...]


def _dyck_steps(p: LatticePath | str | Sequence[str]) -> Steps:
    if not isinstance(p, LatticePath):
        p = dyck_path(p)
    if p.kind is not PathKind.DYCK:
        raise ValueError("expected a Dyck path")
    return p.steps


# ---------------------------------------------------------------------------
# Dyck paths <-> 213-avoiding permutations

def dyck_to_av213(p: LatticePath | str | Sequence[str]) -> Word:
    """Label the down steps from right to left with 1..n; each up step
    inherits the label of its matching down step; read the up labels."""
    steps = _dyck_steps(p)
    label: dict[int, int] = {}
    next_label = 1
    for i in range(len(steps) - 1, -1, -1):
        if steps[i] == "D":
            label[i] = next_label
            next_label += 1
    out: list[int] = []
    stack: list[int] = []
    up_label: dict[int, int] = {}
    for i, s in enumerate(steps):
        if s == "U":
            stack.append(i)
        else:
            up_label[stack.pop()] = label[i]
    for i, s in enumerate(steps):
        if s == "U":
            out.append(up_label[i])
    return tuple(out)


def av213_to_dyck(pi: Sequence[int]) -> LatticePath:
    """Inverse of :func:`dyck_to_av213`."""
    pi = tuple(pi)
    if not is_member(pi, Domain.PERM) or contains_classical(pi, (2, 1, 3)):
        raise ValueError(f"not a 213-avoiding permutation: {pi}")

    def rec(w: Word) -> list[str]:
        if not w:
            return []
        b = w[0] - 1
        mid, tail = w[1:len(w) - b], w[len(w) - b:]
        if sorted(tail) != list(range(1, b + 1)) or any(v <= w[0] for v in mid):
            raise ValueError(f"not in the image of the labeling map: {pi}")
        return ["U"] + rec(standardize(mid)) + ["D"] + rec(tail)

    return dyck_path(rec(pi))


# ---------------------------------------------------------------------------
# phi: append a new maximum to a descent-starting 123-sortable permutation

def phi_add_max(pi: Sequence[int]) -> Word:
    """Insert the new maximum m+1 immediately after m (if pi_1 != m) or
    after m-1 (if pi_1 = m)."""
    w = tuple(pi)
    if not is_member(w, Domain.PERM) or not w:
        raise ValueError(f"phi requires a nonempty permutation: {w}")
    m = len(w)
    anchor = m if w[0] != m else m - 1
    if anchor < 1:
        raise ValueError("phi is undefined on the singleton permutation")
    i = w.index(anchor) + 1
    return w[:i] + (m + 1,) + w[i:]


def _strip_max(w: Word) -> Word:
    """Inverse step of phi: remove the maximum, checking it sits
    immediately after its anchor."""
    n = len(w)
    pos = w.index(n)
    anchor = n - 1 if w[0] != n - 1 else n - 2
    if pos == 0 or w[pos - 1] != anchor:
        raise ValueError(f"maximum of {w} is not anchored")
    return w[:pos] + w[pos + 1:]


# ---------------------------------------------------------------------------
# 123-sortable permutations <-> Schroeder paths

def sort123_to_schroder(pi: Sequence[int]) -> LatticePath:
    """Encode a 123-sortable permutation of length n as a Schroeder path
    of semilength n-1: leading consecutive-ascent prefix -> leading H2
    run, stripped maxima -> trailing H2 run, core -> Dyck path."""
    from .oracles import sortable_123

    w = tuple(pi)
    if not is_member(w, Domain.PERM) or not w:
        raise ValueError(f"expected a nonempty permutation: {w}")
    if not sortable_123(w):
        raise ValueError(f"{w} is not 123-sortable")
    r = 0
    while r + 1 < len(w) and w[r + 1] == w[r] + 1:
        r += 1
    beta = standardize(w[r:])
    s = 0
    while beta[0] != len(beta):
        beta = _strip_max(beta)
        s += 1
    rho = standardize(beta[1:])
    middle = av213_to_dyck(rho).steps if rho else ()
    return schroder_path(("H2",) * r + middle + ("H2",) * s)


def schroder_to_sort123(p: LatticePath | str | Sequence[str]) -> Word:
    """Inverse of :func:`sort123_to_schroder`."""
    if not isinstance(p, LatticePath):
        p = schroder_path(p)
    if p.kind is not PathKind.SCHRODER:
        raise ValueError("expected a Schroeder path")
    steps = p.steps
    a = 0
    while a < len(steps) and steps[a] == "H2":
        a += 1
    b = 0
    while b < len(steps) - a and steps[len(steps) - 1 - b] == "H2":
        b += 1
    middle = steps[a:len(steps) - b]
    if "H2" in middle:
        raise ValueError(f"not in the image of the encoding: {steps}")
    r, s = a, b
    rho = dyck_to_av213(dyck_path(middle)) if middle else ()
    w = (len(rho) + 1,) + rho
    for _ in range(s):
        w = phi_add_max(w)
    return inflate(w, 1, r + 1)


# ---------------------------------------------------------------------------
# eta: 132-sortable permutations <-> RGFs avoiding 12231

def _strips(pi: Word) -> list[tuple[int, int]]:
    """Half-open value intervals [m_j, m_{j-1}) of the horizontal strips,
    indexed from 1 by the ltr minima of pi."""
    mins = ltr_minima(pi)
    out: list[tuple[int, int]] = []
    prev = max(pi) + 1
    for m in mins:
        out.append((m, prev))
        prev = m
    return out


def _strip_index(strips: list[tuple[int, int]], v: int) -> int:
    for j, (lo, hi) in enumerate(strips, start=1):
        if lo <= v < hi:
            return j
    raise AssertionError("value outside all strips")


def eta(pi: Sequence[int]) -> Word:
    """Record, for each element, the index of its horizontal strip (the
    value interval between consecutive ltr minima)."""
    from .oracles import oracle_for
    from .machine import MachineSpec
    from .patterns import classical

    w = tuple(pi)
    if not is_member(w, Domain.PERM):
        raise ValueError(f"expected a permutation: {w}")
    if w and not oracle_for(MachineSpec((classical((1, 3, 2)),)))(w):
        raise ValueError(f"{w} is not 132-sortable")
    if not w:
        return ()
    strips = _strips(w)
    return tuple(_strip_index(strips, v) for v in w)


def eta_inverse(R: Sequence[int]) -> Word:
    """Rebuild the 132-sortable permutation from its strip word by the
    left-to-right insertion rules."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    if contains_classical(R, (1, 2, 2, 3, 1)):
        raise ValueError(f"RGF contains 12231: {R}")
    pi: list[int] = []
    cur_max = 0

    def shift_append(v: int) -> None:
        for p, u in enumerate(pi):
            if u >= v:
                pi[p] = u + 1
        pi.append(v)

    for j in R:
        if j == cur_max + 1:
            cur_max += 1
            shift_append(1)
            continue
        word_now = tuple(pi)
        strips = _strips(word_now)
        m_j = strips[j - 1][0]
        dec = ltr_decompose(word_now, Which.MIN)
        last_block = dec.blocks[-1]
        C = [v for v in last_block if strips[j - 1][0] < v < strips[j - 1][1]]
        if not C:
            shift_append(m_j + 1)
            continue
        ell = _strip_index(strips, word_now[-1])
        if ell > j:
            shift_append(m_j + 1)
        else:
            shift_append(C[-1] + 1)
    return tuple(pi)


# ---------------------------------------------------------------------------
# RGFs avoiding 1221 <-> Dyck paths

def _rgf1221_stats(prefix: Word) -> tuple[int, int]:
    """(max, largest repeated letter or 1) of a nonempty 1221-avoiding
    RGF prefix."""
    M = max(prefix)
    reps = [v for v in set(prefix) if prefix.count(v) > 1]
    return M, (max(reps) if reps else 1)


def rgf1221_to_dyck(R: Sequence[int]) -> LatticePath:
    """Grow a Dyck path letter by letter: appending j inserts a peak into
    the last descending run at the slot determined by j."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    if contains_classical(R, (1, 2, 2, 1)):
        raise ValueError(f"RGF contains 1221: {R}")
    if not R:
        return dyck_path(())
    steps = ["U", "D"]
    for pos in range(1, len(R)):
        M, t = _rgf1221_stats(R[:pos])
        L = M - t + 1
        j = R[pos]
        i = 0 if j == M + 1 else j - t + 1
        run_start = len(steps)
        while run_start > 0 and steps[run_start - 1] == "D":
            run_start -= 1
        if len(steps) - run_start != L:
            raise AssertionError("descending-run length out of sync")
        steps[run_start + i:run_start + i] = ["U", "D"]
    return dyck_path(steps)


def dyck_to_rgf1221(p: LatticePath | str | Sequence[str]) -> Word:
    """Inverse of :func:`rgf1221_to_dyck`: peel the rightmost peak down
    to UD, then replay the insertions as letters."""
    steps = list(_dyck_steps(p))
    if not steps:
        return ()
    tail_counts: list[int] = []
    while len(steps) > 2:
        q = max(i for i in range(len(steps) - 1)
                if steps[i] == "U" and steps[i + 1] == "D")
        tail_counts.append(len(steps) - (q + 2))
        del steps[q:q + 2]
    R = [1]
    for c in reversed(tail_counts):
        M, t = _rgf1221_stats(tuple(R))
        L = M - t + 1
        i = L - c
        if i == 0:
            R.append(M + 1)
        elif 1 <= i <= L:
            R.append(t + i - 1)
        else:
            raise ValueError("path is not in the image of the insertion map")
    return tuple(R)


# ---------------------------------------------------------------------------
# Labeled Motzkin paths -> RGFs (forward only)

class StoreMode(enum.Enum):
    STACK = "stack"
    QUEUE = "queue"


_MOTZKIN_TOKENS = ("U", "D", "H0", "H1", "H2")


@dataclass(frozen=True)
class LabeledMotzkinPath:
    """Motzkin path whose horizontal steps carry labels 0, 1 or 2;
    label 2 is forbidden at height zero."""

    steps: Steps

    def __post_init__(self) -> None:
        h = 0
        for s in self.steps:
            if s not in _MOTZKIN_TOKENS:
                raise ValueError(f"unknown step token {s!r}")
            if s == "U":
                h += 1
            elif s == "D":
                h -= 1
                if h < 0:
                    raise ValueError("path falls below the x-axis")
            elif s == "H2" and h == 0:
                raise ValueError("label 2 is forbidden at height zero")
        if h != 0:
            raise ValueError("path does not end on the x-axis")

    def __len__(self) -> int:
        return len(self.steps)


def parse_labeled_motzkin(text: str) -> LabeledMotzkinPath:
    """Parse tokens U, D, H0, H1, H2, optionally whitespace-separated."""
    toks: list[str] = []
    i = 0
    text = text.strip()
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "UD":
            toks.append(c)
            i += 1
        elif c == "H" and i + 1 < len(text) and text[i + 1] in "012":
            toks.append(text[i:i + 2])
            i += 2
        else:
            raise ValueError(f"cannot parse labeled Motzkin path: {text!r}")
    return LabeledMotzkinPath(tuple(toks))


def beta_motzkin(p: LabeledMotzkinPath | str | Sequence[str],
                 mode: StoreMode = StoreMode.STACK) -> Word:
    """Decode a labeled Motzkin path of length n into an RGF of length
    n+1; with a stack store the image avoids 12323, with a queue 12332."""
    if isinstance(p, str):
        p = parse_labeled_motzkin(p)
    elif not isinstance(p, LabeledMotzkinPath):
        p = LabeledMotzkinPath(tuple(p))
    R = [1]
    store: list[int] = []

    def peek() -> int:
        if not store:
            raise ValueError("D or H2 with an empty store")
        return store[-1] if mode is StoreMode.STACK else store[0]

    for s in p.steps:
        if s == "U":
            v = max(R) + 1
            R.append(v)
            store.append(v)
        elif s == "D":
            R.append(peek())
            if mode is StoreMode.STACK:
                store.pop()
            else:
                store.pop(0)
        elif s == "H0":
            R.append(max(R) + 1)
        elif s == "H1":
            R.append(1)
        else:  # H2
            R.append(peek())
    return tuple(R)


# ---------------------------------------------------------------------------
# RGFs without repeated ltr-maxima <-> 321-avoiding permutations

def alpha_strip(R: Sequence[int]) -> Word:
    """Remove the repeated ltr-maxima: entries equal to the running
    maximum that are not strict new maxima."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    out: list[int] = []
    m = 0
    for v in R:
        if v > m:
            m = v
            out.append(v)
        elif v < m:
            out.append(v)
    return tuple(out)


def _split_strict_max_positions(R: Word) -> tuple[list[int], list[int]]:
    strict: list[int] = []
    other: list[int] = []
    m = 0
    for i, v in enumerate(R):
        if v > m:
            m = v
            strict.append(i)
        else:
            other.append(i)
    return strict, other


def rgfnr12321_to_av321(R: Sequence[int]) -> Word:
    """Non-strict positions receive the values s_1 = r_{i_1},
    s_j = s_{j-1} + (r_{i_j} - r_{i_{j-1}}) + 1; strict ltr-max positions
    receive the remaining values in increasing order."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    if contains_classical(R, (1, 2, 3, 2, 1)):
        raise ValueError(f"RGF contains 12321: {R}")
    if not R:
        return ()
    strict, other = _split_strict_max_positions(R)
    n = len(R)
    pi = [0] * n
    s = 0
    prev = None
    svals: list[int] = []
    for i in other:
        s = R[i] if prev is None else s + (R[i] - R[prev]) + 1
        prev = i
        svals.append(s)
    if len(set(svals)) != len(svals) or any(not 1 <= v <= n for v in svals):
        raise ValueError(f"RGF is outside the bijection's domain: {R}")
    for i, v in zip(other, svals):
        pi[i] = v
    rest = sorted(set(range(1, n + 1)) - set(svals))
    if len(rest) != len(strict):
        raise ValueError(f"RGF is outside the bijection's domain: {R}")
    for i, v in zip(strict, rest):
        pi[i] = v
    return tuple(pi)


def av321_to_rgfnr12321(pi: Sequence[int]) -> Word:
    """Inverse of :func:`rgfnr12321_to_av321`."""
    w = tuple(pi)
    if not is_member(w, Domain.PERM) or contains_classical(w, (3, 2, 1)):
        raise ValueError(f"expected a 321-avoiding permutation: {w}")
    if not w:
        return ()
    R = [0] * len(w)
    m = 0
    j = 0
    prev_s = None
    prev_r = 0
    for i, v in enumerate(w):
        if v > m:
            m = v
            j += 1
            R[i] = j
        else:
            r = v if prev_s is None else prev_r + (v - prev_s) - 1
            R[i] = r
            prev_s, prev_r = v, r
    out = tuple(R)
    if not is_member(out, Domain.RGF):
        raise ValueError(f"permutation is outside the bijection's image: {w}")
    return out


# ---------------------------------------------------------------------------
# delta: RGFs avoiding 12231 <-> RGFs avoiding 12321

def _occurrences(R: Word, vals: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    """Index triples realizing the classical value pattern (by relative
    order with strict inequalities as in 321 / 231)."""
    n = len(R)
    out: list[tuple[int, int, int]] = []
    for i1 in range(n):
        for i2 in range(i1 + 1, n):
            for i3 in range(i2 + 1, n):
                trip = (R[i1], R[i2], R[i3])
                ranks = standardize(trip)
                if ranks == vals and len(set(trip)) == 3:
                    out.append((i1, i2, i3))
    return out


def delta(R: Sequence[int]) -> Word:
    """Repeatedly swap the first two letters of the lexicographically
    rightmost occurrence of 321 until the word avoids 321."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    if contains_classical(R, (1, 2, 2, 3, 1)):
        raise ValueError(f"RGF contains 12231: {R}")
    w = list(R)
    for _ in range(len(R) ** 3 + 1):
        occs = _occurrences(tuple(w), (3, 2, 1))
        if not occs:
            return tuple(w)
        i1, i2, _ = max(occs)
        w[i1], w[i2] = w[i2], w[i1]
    raise AssertionError("delta failed to terminate")


def delta_inverse(R: Sequence[int]) -> Word:
    """Repeatedly swap the first two letters of the leftmost occurrence
    of 231 whose first letter is a repeated value (not the leftmost
    occurrence of that value)."""
    R = tuple(R)
    if not is_member(R, Domain.RGF):
        raise ValueError(f"expected an RGF: {R}")
    if contains_classical(R, (1, 2, 3, 2, 1)):
        raise ValueError(f"RGF contains 12321: {R}")
    w = list(R)
    for _ in range(len(R) ** 3 + 1):
        found = None
        for occ in sorted(_occurrences(tuple(w), (2, 3, 1))):
            i1 = occ[0]
            if w.index(w[i1]) < i1:  # repeated value
                found = occ
                break
        if found is None:
            return tuple(w)
        i1, i2, _ = found
        w[i1], w[i2] = w[i2], w[i1]
    raise AssertionError("delta_inverse failed to terminate")
