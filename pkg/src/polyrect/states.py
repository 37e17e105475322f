"""Automaton states: label words over a row plus side-contact flags.

A state is a width-b word of component labels (0 = empty cell, equal labels =
same connected component of everything read so far) together with two flags
recording whether the left and right sides of the bounding rectangle have been
touched.  Words are kept in canonical form: first occurrences of nonzero
labels read 1, 2, 3, ... from left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def max_label(width: int) -> int:
    """Largest label a width-b word can need: ceil(b / 2)."""
    return (width + 1) // 2


def separation_ok(labels: Sequence[int]) -> bool:
    """Adjacent nonzero cells must carry the same label."""
    return all(
        not (a and b and a != b) for a, b in zip(labels, labels[1:])
    )


def non_crossing_ok(labels: Sequence[int]) -> bool:
    """No two components interleave as i < k < j < l with labels a,c,a,c.

    Balanced-bracket test: walk left to right keeping a stack of components
    whose span is still open.  Returning to a component demands that every
    component opened after it is already finished.
    """
    last: dict[int, int] = {}
    for i, a in enumerate(labels):
        if a:
            last[a] = i
    stack: list[int] = []
    opened: set[int] = set()
    for i, a in enumerate(labels):
        if not a:
            continue
        if a not in opened:
            stack.append(a)
            opened.add(a)
            continue
        while stack[-1] != a:
            t = stack.pop()
            if last[t] > i:
                return False
    return True


def canonical_ok(labels: Sequence[int]) -> bool:
    """First occurrences of nonzero labels must read 1, 2, 3, ..."""
    seen = 0
    for a in labels:
        if a > seen:
            if a != seen + 1:
                return False
            seen += 1
    return True


def first_occurrence_relabel(labels: Sequence[int]) -> tuple[int, ...]:
    """Rename nonzero labels in order of first appearance, one left-to-right pass."""
    mapping: dict[int, int] = {}
    out = []
    for a in labels:
        if not a:
            out.append(0)
            continue
        if a not in mapping:
            mapping[a] = len(mapping) + 1
        out.append(mapping[a])
    return tuple(out)


@dataclass(frozen=True, slots=True)
class LabeledWord:
    """Canonical component-label word for one row.

    Width 0 is permitted only so the degenerate width-0 state table (a lone
    initial state) stays expressible; everything else uses width >= 1.
    """

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = self.labels
        bound = max_label(len(labels))
        for a in labels:
            if not isinstance(a, int) or a < 0 or a > bound:
                raise ValueError(f"label {a!r} out of range 0..{bound}")
        if not separation_ok(labels):
            raise ValueError(f"separation violated: {labels}")
        if not non_crossing_ok(labels):
            raise ValueError(f"crossing components: {labels}")
        if not canonical_ok(labels):
            raise ValueError(f"not canonically labeled: {labels}")

    @property
    def width(self) -> int:
        return len(self.labels)

    def is_zero(self) -> bool:
        return not any(self.labels)

    def component_count(self) -> int:
        return len(set(self.labels) - {0})

    def __str__(self) -> str:
        return "".join(str(a) for a in self.labels)


@dataclass(frozen=True, slots=True)
class AutomatonState:
    """A canonical word plus left/right side-contact flags."""

    word: LabeledWord
    left_touched: bool
    right_touched: bool

    def __post_init__(self):
        labels = self.word.labels
        if not any(labels) and (self.left_touched or self.right_touched):
            raise ValueError("empty word cannot have touched a side")
        if labels and labels[0] and not self.left_touched:
            raise ValueError("leftmost cell filled but left flag unset")
        if labels and labels[-1] and not self.right_touched:
            raise ValueError("rightmost cell filled but right flag unset")

    @property
    def width(self) -> int:
        return self.word.width

    def __str__(self) -> str:
        flag = {True: "T", False: "F"}
        return f"({self.word},{flag[self.left_touched]},{flag[self.right_touched]})"


def initial_state(width: int) -> AutomatonState:
    """All-empty word with both flags down."""
    return AutomatonState(LabeledWord((0,) * width), False, False)


def is_valid_triplet(labels: Sequence[int], left: bool, right: bool) -> bool:
    """Check the four state-validity conditions on a raw label sequence.

    Empty row: the all-zero word carries no flags.  Inscription: a filled
    border cell forces its flag.  Separation and Non-crossing as above.
    """
    if not labels:
        raise ValueError("labels must be nonempty")
    bound = max_label(len(labels))
    for a in labels:
        if not isinstance(a, int) or a < 0 or a > bound:
            raise ValueError(f"label {a!r} out of range 0..{bound}")
    if not any(labels):
        return not left and not right
    if labels[0] and not left:
        return False
    if labels[-1] and not right:
        return False
    return separation_ok(labels) and non_crossing_ok(labels)


def canonicalize(labels: Sequence[int]) -> LabeledWord:
    """Canonical representative of the labeling-equivalence class.

    First-occurrence renaming is the lexicographically least relabeling, so a
    single pass suffices.  Rejects sequences violating Separation or
    Non-crossing; those belong to no equivalence class.
    """
    if not separation_ok(labels):
        raise ValueError(f"separation violated: {tuple(labels)}")
    if not non_crossing_ok(labels):
        raise ValueError(f"crossing components: {tuple(labels)}")
    return LabeledWord(first_occurrence_relabel(labels))


def are_equivalent(a: Sequence[int] | LabeledWord, b: Sequence[int] | LabeledWord) -> bool:
    """Same zero positions and same component structure up to label renaming."""
    if isinstance(a, LabeledWord):
        a = a.labels
    if isinstance(b, LabeledWord):
        b = b.labels
    if len(a) != len(b):
        return False
    return canonicalize(a) == canonicalize(b)


def is_accepting(state: AutomatonState) -> bool:
    """Single component covering every filled cell, both sides touched."""
    labels = state.word.labels
    return (
        any(labels)
        and all(a <= 1 for a in labels)
        and state.left_touched
        and state.right_touched
    )


def _run_spans(width: int, mask: int) -> list[tuple[int, int]]:
    """Maximal blocks of filled cells, as inclusive (start, end) cell indices."""
    spans = []
    start = None
    for i in range(width):
        filled = (mask >> (width - 1 - i)) & 1
        if filled and start is None:
            start = i
        elif not filled and start is not None:
            spans.append((start, i - 1))
            start = None
    if start is not None:
        spans.append((start, width - 1))
    return spans


def _growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n: every set partition, first-occurrence numbered."""
    a = [0] * n

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, max(mx, v))

    if n == 0:
        yield ()
    else:
        yield from rec(0, -1)


def enumerate_valid_states(width: int) -> list[AutomatonState]:
    """Every valid state of the given width, initial state first.

    Candidates are generated structurally: for each nonempty fill mask the
    label word is constant on each maximal run, so the words for that mask are
    exactly the non-crossing set partitions of its runs.  Deterministic order:
    masks ascending, partition strings in generation order, left flag before
    right flag.
    """
    if width < 0:
        raise ValueError(f"width must be >= 0, got {width}")
    if width == 0:
        return [AutomatonState(LabeledWord(()), False, False)]
    states = [initial_state(width)]
    for mask in range(1, 1 << width):
        spans = _run_spans(width, mask)
        for rgs in _growth_strings(len(spans)):
            labels = [0] * width
            for (start, end), block in zip(spans, rgs):
                for i in range(start, end + 1):
                    labels[i] = block + 1
            if not non_crossing_ok(labels):
                continue
            word = LabeledWord(tuple(labels))
            left_choices = (True,) if labels[0] else (False, True)
            right_choices = (True,) if labels[-1] else (False, True)
            for left in left_choices:
                for right in right_choices:
                    states.append(AutomatonState(word, left, right))
    return states
