"""The right-greedy Sigma-avoiding stack and the two-stack sorting machine.

A machine is a Sigma-avoiding stack (which may never contain an occurrence
of a forbidden pattern, reading from top to bottom) followed by a classical
21-stack.  The first stack is operated right-greedily: before pushing the
next input letter, the top is popped for as long as pushing the letter
would create a forbidden occurrence; the stack is drained when the input is
exhausted.  An input is sortable when the final output is weakly
increasing, equivalently when the first stack's output avoids 231.

>>> from .patterns import classical
>>> spec = MachineSpec((classical((2, 3, 1)),))
>>> sigma_stack_output((2, 4, 1, 3), spec)
(1, 4, 3, 2)
>>> is_sortable((2, 4, 1, 3), spec)
True
"""

from __future__ import annotations

import json
from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .patterns import Pattern, PatternKind, contains_classical, format_pattern
from .words_core import Domain, Word

DEFAULT_GUARDS = {
    Domain.PERM: 11,
    Domain.CAYLEY: 8,
    Domain.RGF: 11,
    Domain.ASC: 10,
    Domain.MODASC: 10,
}


@dataclass(frozen=True)
class MachineSpec:
    """Forbidden-pattern set for the first stack plus the input domain."""

    sigma: tuple[Pattern, ...]
    domain: Domain = Domain.PERM

    def __post_init__(self) -> None:
        if not self.sigma:
            raise ValueError("machine needs at least one forbidden pattern")
        for p in self.sigma:
            if p.kind is not PatternKind.CLASSICAL:
                raise ValueError(
                    f"stack patterns must be classical: {format_pattern(p)}"
                )
            if len(p.body) < 2:
                raise ValueError("stack patterns must have length >= 2")

    @property
    def bodies(self) -> tuple[Word, ...]:
        return tuple(p.body for p in self.sigma)


@dataclass
class MachineTrace:
    """Push/pop event log of a machine run."""

    input: Word = ()
    sigma: tuple[str, ...] = ()
    steps: list[tuple[int, str, int]] = field(default_factory=list)
    first_output: Word = ()
    final_output: Word = ()
    sortable: bool = False

    def to_json(self) -> str:
        return json.dumps({
            "input": list(self.input),
            "sigma": list(self.sigma),
            "steps": [{"stack": s, "op": op, "value": v}
                      for s, op, v in self.steps],
            "first_output": list(self.first_output),
            "final_output": list(self.final_output),
            "sortable": self.sortable,
        })


def _must_pop(stack: tuple[int, ...], x: int, bodies: tuple[Word, ...]) -> bool:
    """Would the stack, with ``x`` on top and read top to bottom, contain a
    forbidden pattern?"""
    seq = (x,) + stack[::-1]
    return any(contains_classical(seq, b) for b in bodies)


def sigma_stack_output(w: Sequence[int], spec: MachineSpec,
                       trace: MachineTrace | None = None) -> Word:
    """Output of the Sigma-avoiding stack on ``w`` (the map s^Sigma)."""
    bodies = spec.bodies
    stack: list[int] = []
    out: list[int] = []
    for x in w:
        while stack and _must_pop(tuple(stack), x, bodies):
            v = stack.pop()
            out.append(v)
            if trace is not None:
                trace.steps.append((1, "pop", v))
        stack.append(x)
        if trace is not None:
            trace.steps.append((1, "push", x))
    while stack:
        v = stack.pop()
        out.append(v)
        if trace is not None:
            trace.steps.append((1, "pop", v))
    return tuple(out)


def stack21_output(w: Sequence[int],
                   trace: MachineTrace | None = None) -> Word:
    """Classical 21-stack pass: equal letters may sit on each other."""
    stack: list[int] = []
    out: list[int] = []
    for x in w:
        while stack and stack[-1] < x:
            v = stack.pop()
            out.append(v)
            if trace is not None:
                trace.steps.append((2, "pop", v))
        stack.append(x)
        if trace is not None:
            trace.steps.append((2, "push", x))
    while stack:
        v = stack.pop()
        out.append(v)
        if trace is not None:
            trace.steps.append((2, "pop", v))
    return tuple(out)


def machine_run(w: Sequence[int], spec: MachineSpec,
                with_trace: bool = False) -> tuple[Word, MachineTrace | None]:
    """Run the full two-stack machine; returns (final output, trace)."""
    w = tuple(w)
    trace = MachineTrace(input=w,
                         sigma=tuple(format_pattern(p) for p in spec.sigma)) \
        if with_trace else None
    first = sigma_stack_output(w, spec, trace)
    final = stack21_output(first, trace)
    if trace is not None:
        trace.first_output = first
        trace.final_output = final
        trace.sortable = all(final[i] <= final[i + 1]
                             for i in range(len(final) - 1))
    return final, trace


def avoids_231(w: Sequence[int]) -> bool:
    """Incremental check that ``w`` avoids the classical pattern 231."""
    threshold = 0
    seen: list[int] = []
    for y in w:
        if y < threshold:
            return False
        i = bisect_left(seen, y)
        if i > 0 and seen[i - 1] > threshold:
            threshold = seen[i - 1]
        insort(seen, y)
    return True


def is_sortable(w: Sequence[int], spec: MachineSpec) -> bool:
    """Sortable iff the first stack's output avoids 231."""
    return avoids_231(sigma_stack_output(w, spec))


# ---------------------------------------------------------------------------
# Domain enumeration

def _check_guard(d: Domain, n: int, max_n: int | None) -> None:
    limit = max_n if max_n is not None else DEFAULT_GUARDS[d]
    if n > limit:
        raise ValueError(
            f"n={n} exceeds the guard {limit} for domain {d.value}; "
            "pass max_n to override")


def _extensions(d: Domain, n: int, prefix: list[int],
                used: dict[int, int], state: tuple[int, int]) -> Iterator[int]:
    """Legal next letters for a length-n word of domain ``d``.

    ``used`` maps letters to multiplicities; ``state`` carries
    (current max, current ascent count).
    """
    k = len(prefix)
    cur_max, ascents = state
    if d is Domain.PERM:
        for v in range(1, n + 1):
            if v not in used:
                yield v
        return
    if d is Domain.RGF:
        hi = 1 if k == 0 else cur_max + 1
        yield from range(1, hi + 1)
        return
    if d is Domain.ASC:
        hi = 1 if k == 0 else 2 + ascents
        yield from range(1, hi + 1)
        return
    # CAYLEY / MODASC: letters must finally cover 1..max
    slots_left = n - k - 1
    for v in range(1, n + 1):
        new_max = max(cur_max, v)
        missing = sum(1 for u in range(1, new_max + 1)
                      if u != v and u not in used)
        if missing > slots_left:
            continue
        if d is Domain.MODASC:
            if k == 0:
                if v != 1:
                    continue
            elif v > 1:
                leftmost = v not in used
                ascent_top = prefix[-1] < v
                if leftmost != ascent_top:
                    continue
        yield v


def iter_domain(d: Domain, n: int, max_n: int | None = None) -> Iterator[Word]:
    """All length-n words of the domain, in lexicographic order."""
    _check_guard(d, n, max_n)
    if n == 0:
        yield ()
        return
    prefix: list[int] = []
    used: dict[int, int] = {}

    def rec(state: tuple[int, int]) -> Iterator[Word]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in _extensions(d, n, prefix, used, state):
            new_state = (max(state[0], v),
                         state[1] + (1 if prefix and prefix[-1] < v else 0))
            prefix.append(v)
            used[v] = used.get(v, 0) + 1
            yield from rec(new_state)
            prefix.pop()
            if used[v] == 1:
                del used[v]
            else:
                used[v] -= 1

    yield from rec((0, 0))


# ---------------------------------------------------------------------------
# Brute-force engines (shared-prefix DFS over the domain)

class _PopCache:
    """Memoized pop decisions of a Sigma-stack: (stack, incoming) ->
    (new stack, popped letters)."""

    def __init__(self, bodies: tuple[Word, ...]):
        self.bodies = bodies
        self.cache: dict[tuple[tuple[int, ...], int],
                         tuple[tuple[int, ...], tuple[int, ...]]] = {}

    def push(self, stack: tuple[int, ...], x: int
             ) -> tuple[tuple[int, ...], tuple[int, ...]]:
        key = (stack, x)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        popped: list[int] = []
        st = list(stack)
        while st and _must_pop(tuple(st), x, self.bodies):
            popped.append(st.pop())
        st.append(x)
        result = (tuple(st), tuple(popped))
        self.cache[key] = result
        return result


def _sortable_dfs(spec: MachineSpec, n: int,
                  on_word: Callable[[Word], None] | None = None,
                  first_letter: int | None = None) -> int:
    """Count (and optionally collect) the sortable length-n words, pruning
    every subtree whose partial first-stack output already contains 231."""
    d = spec.domain
    cache = _PopCache(spec.bodies)
    prefix: list[int] = []
    used: dict[int, int] = {}
    out_sorted: list[int] = []  # letters already emitted by the first stack
    count = 0

    def emit_ok(values: Sequence[int], threshold: int,
                extra: list[int]) -> tuple[bool, int]:
        """Feed popped values through the incremental 231 detector."""
        for y in values:
            if y < threshold:
                return False, threshold
            pool = out_sorted if not extra else sorted(out_sorted + extra)
            i = bisect_left(pool, y)
            if i > 0 and pool[i - 1] > threshold:
                threshold = pool[i - 1]
            extra.append(y)
        return True, threshold

    def rec(stack: tuple[int, ...], threshold: int,
            state: tuple[int, int]) -> None:
        nonlocal count
        k = len(prefix)
        if k == n:
            drained = stack[::-1]
            ok, _ = emit_ok(drained, threshold, [])
            if ok:
                count += 1
                if on_word is not None:
                    on_word(tuple(prefix))
            return
        for v in _extensions(d, n, prefix, used, state):
            if k == 0 and first_letter is not None and v != first_letter:
                continue
            new_stack, popped = cache.push(stack, v)
            extra: list[int] = []
            ok, new_threshold = emit_ok(popped, threshold, extra)
            if not ok:
                continue
            for y in popped:
                insort(out_sorted, y)
            prefix.append(v)
            used[v] = used.get(v, 0) + 1
            new_state = (max(state[0], v),
                         state[1] + (1 if k > 0 and prefix[-2] < v else 0))
            rec(new_stack, new_threshold, new_state)
            prefix.pop()
            if used[v] == 1:
                del used[v]
            else:
                used[v] -= 1
            for y in popped:
                out_sorted.remove(y)
        return

    if n == 0:
        if on_word is not None:
            on_word(())
        return 1
    rec((), 0, (0, 0))
    return count


def sortable_count(spec: MachineSpec, n: int, max_n: int | None = None,
                   threads: int = 1) -> int:
    """Number of sortable length-n words of the machine's domain."""
    _check_guard(spec.domain, n, max_n)
    if threads > 1 and n > 0:
        from concurrent.futures import ThreadPoolExecutor

        letters = sorted({w0 for w0 in range(1, n + 1)})
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(
                lambda v: _sortable_dfs(spec, n, first_letter=v), letters)
        return sum(parts)
    return _sortable_dfs(spec, n)


def sortable_words(spec: MachineSpec, n: int,
                   max_n: int | None = None) -> list[Word]:
    """The sortable length-n words, in lexicographic order."""
    _check_guard(spec.domain, n, max_n)
    found: list[Word] = []
    _sortable_dfs(spec, n, on_word=found.append)
    return found


def machine_outputs(spec: MachineSpec, n: int,
                    max_n: int | None = None) -> Iterator[tuple[Word, Word]]:
    """Yield (input, first-stack output) over the whole domain at length n,
    sharing machine state across common prefixes."""
    _check_guard(spec.domain, n, max_n)
    d = spec.domain
    cache = _PopCache(spec.bodies)
    prefix: list[int] = []
    used: dict[int, int] = {}
    out: list[int] = []

    def rec(stack: tuple[int, ...],
            state: tuple[int, int]) -> Iterator[tuple[Word, Word]]:
        k = len(prefix)
        if k == n:
            yield tuple(prefix), tuple(out) + stack[::-1]
            return
        for v in _extensions(d, n, prefix, used, state):
            new_stack, popped = cache.push(stack, v)
            out.extend(popped)
            prefix.append(v)
            used[v] = used.get(v, 0) + 1
            new_state = (max(state[0], v),
                         state[1] + (1 if k > 0 and prefix[-2] < v else 0))
            yield from rec(new_stack, new_state)
            prefix.pop()
            if used[v] == 1:
                del used[v]
            else:
                used[v] -= 1
            del out[len(out) - len(popped):]

    if n == 0:
        yield (), ()
        return
    yield from rec((), (0, 0))


def fertility(w: Sequence[int], spec: MachineSpec,
              max_n: int | None = None) -> tuple[int, list[Word]]:
    """Number (and list) of preimages of ``w`` under the first-stack map,
    scanning the whole domain at the word's length."""
    w = tuple(w)
    preimages = [src for src, out in machine_outputs(spec, len(w), max_n)
                 if out == w]
    return len(preimages), preimages


def image_set(spec: MachineSpec, n: int, sorted_only: bool = False,
              max_n: int | None = None) -> set[Word]:
    """Image of the first-stack map on the length-n domain; with
    ``sorted_only`` intersect with the 231-avoiding words (the sorted set)."""
    out: set[Word] = set()
    for _, o in machine_outputs(spec, n, max_n):
        if not sorted_only or avoids_231(o):
            out.add(o)
    return out


# ---------------------------------------------------------------------------
# Labeled Dyck path encoding of a run

@dataclass(frozen=True)
class LabeledDyckPath:
    """Dyck path whose matched up/down steps carry equal labels."""

    steps: tuple[str, ...]
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        h = 0
        for s in self.steps:
            if s not in ("U", "D"):
                raise ValueError(f"invalid Dyck step {s!r}")
            h += 1 if s == "U" else -1
            if h < 0:
                raise ValueError("path falls below the x-axis")
        if h != 0:
            raise ValueError("path does not end on the x-axis")
        if len(self.labels) != len(self.steps):
            raise ValueError("one label per step required")
        for i, j in matching_pairs(self.steps):
            if self.labels[i] != self.labels[j]:
                raise ValueError("matching steps must share labels")

    def step_word(self) -> str:
        return "".join(self.steps)


def matching_pairs(steps: Sequence[str]) -> list[tuple[int, int]]:
    """Indices (up, matching down) for each up step of a Dyck path."""
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i, s in enumerate(steps):
        if s == "U":
            stack.append(i)
        else:
            pairs.append((stack.pop(), i))
    return sorted(pairs)


def encode_labeled_path(w: Sequence[int], spec: MachineSpec) -> LabeledDyckPath:
    """The labeled Dyck path of a Sigma-stack run: an up step labeled ``a``
    per push, a down step labeled ``a`` per pop.  Up labels read the input,
    down labels read the first-stack output."""
    _, trace = machine_run(w, spec, with_trace=True)
    assert trace is not None
    steps: list[str] = []
    labels: list[int] = []
    for stk, op, v in trace.steps:
        if stk != 1:
            continue
        steps.append("U" if op == "push" else "D")
        labels.append(v)
    return LabeledDyckPath(tuple(steps), tuple(labels))
