"""Automaton construction, the closed-form state count, and persistence.

build() explores states breadth-first from the all-empty initial state, with
rows fed in ascending numeric order, so state indices are a deterministic
discovery order.  The transition table is dense: one row per state, one slot
per alphabet letter, -1 marking undefined transitions.
"""

from __future__ import annotations

import json
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from .errors import (
    AutomatonFormatError,
    AutomatonInvariantError,
    AutomatonVersionError,
    ResourceLimitError,
)
from .rowconfig import MAX_WIDTH, RowConfig, enumerate_alphabet
from .states import AutomatonState, LabeledWord, initial_state, is_accepting
from .transition import step

FORMAT_VERSION = 1
DEFAULT_STATE_CEILING = 10**6


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return comb(2 * n, n) // (n + 1)


def runs_of_ones(k: int) -> int:
    """Number of maximal blocks of 1s in the binary expansion of k >= 1."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return (k & ~(k >> 1)).bit_count()


def state_count_formula(width: int) -> int:
    """Exact number of valid states for the given width.

    1 for the initial state, plus one term per nonempty fill mask k: the
    Catalan number of its run count (the non-crossing groupings of the runs),
    doubled once when the rightmost cell is empty (free right flag) and once
    when the leftmost cell is empty (free left flag).
    """
    if not 0 <= width <= 62:
        raise ValueError(f"width must be in 0..62, got {width}")
    total = 1
    half = 1 << (width - 1) if width else 0
    cache: dict[int, int] = {}
    for k in range(1, 1 << width):
        r = runs_of_ones(k)
        c = cache.get(r)
        if c is None:
            c = cache[r] = catalan(r)
        if k % 2 == 0:
            c *= 2
        if k < half:
            c *= 2
        total += c
    return total


@dataclass(frozen=True, eq=True)
class Automaton:
    """Built automaton: states in discovery order, dense transition table."""

    width: int
    states: tuple[AutomatonState, ...]
    accepting: frozenset[int]
    transitions: tuple[array, ...]

    @property
    def n_states(self) -> int:
        return len(self.states)

    def target(self, state_index: int, row: RowConfig) -> int | None:
        """Index of the successor state, or None when undefined."""
        if row.width != self.width:
            raise ValueError(f"width mismatch: {row.width} vs {self.width}")
        t = self.transitions[state_index][row.bits - 1]
        return None if t < 0 else t


def build(
    width: int,
    max_states: int = DEFAULT_STATE_CEILING,
    workers: int | None = None,
) -> Automaton:
    """Breadth-first closure of the transition map from the initial state.

    workers > 1 expands each BFS level in a thread pool; results are merged
    in (state, letter) order, so the output is identical to the sequential
    build.  Raises ResourceLimitError when the projected or discovered state
    count exceeds max_states.
    """
    if not 1 <= width <= MAX_WIDTH:
        raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    projected = state_count_formula(width)
    if projected > max_states:
        raise ResourceLimitError(
            f"width {width} projects {projected} states, ceiling is {max_states}"
        )
    alphabet = enumerate_alphabet(width)

    def expand(state: AutomatonState) -> list[AutomatonState | None]:
        return [step(state, row) for row in alphabet]

    states: list[AutomatonState] = [initial_state(width)]
    index: dict[AutomatonState, int] = {states[0]: 0}
    rows: list[array] = []
    frontier = [0]
    pool = ThreadPoolExecutor(workers) if workers and workers > 1 else None
    try:
        while frontier:
            if pool is not None:
                expanded = list(pool.map(expand, [states[i] for i in frontier]))
            else:
                expanded = [expand(states[i]) for i in frontier]
            next_frontier: list[int] = []
            for results in expanded:
                row = array("i", [-1]) * len(alphabet)
                for rank, target in enumerate(results):
                    if target is None:
                        continue
                    j = index.get(target)
                    if j is None:
                        j = len(states)
                        if j >= max_states:
                            raise ResourceLimitError(
                                f"state ceiling {max_states} hit while building width {width}"
                            )
                        index[target] = j
                        states.append(target)
                        next_frontier.append(j)
                    row[rank] = j
                rows.append(row)
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    accepting = frozenset(i for i, s in enumerate(states) if is_accepting(s))
    return Automaton(width, tuple(states), accepting, tuple(rows))


def transfer_matrix(a: Automaton) -> list[list[int]]:
    """M[i][j] = number of letters carrying state i to state j."""
    n = a.n_states
    m = [[0] * n for _ in range(n)]
    for i, row in enumerate(a.transitions):
        for t in row:
            if t >= 0:
                m[i][t] += 1
    return m


def _render_word(word: LabeledWord, width: int) -> str:
    if width <= 9:
        return str(word)
    return ",".join(str(a) for a in word.labels)


def _parse_word(text: str, width: int) -> tuple[int, ...]:
    if width <= 9:
        if len(text) != width or not text.isdigit():
            raise AutomatonFormatError(f"bad word string {text!r} for width {width}")
        return tuple(int(c) for c in text)
    parts = text.split(",")
    if len(parts) != width or not all(p.isdigit() for p in parts):
        raise AutomatonFormatError(f"bad word string {text!r} for width {width}")
    return tuple(int(p) for p in parts)


def serialize(a: Automaton) -> bytes:
    """Versioned JSON encoding; byte-identical for equal automata."""
    doc = {
        "version": FORMAT_VERSION,
        "b": a.width,
        "states": [
            {"word": _render_word(s.word, a.width), "l": s.left_touched, "r": s.right_touched}
            for s in a.states
        ],
        "accepting": sorted(a.accepting),
        "transitions": [
            [[rank + 1, t] for rank, t in enumerate(row) if t >= 0]
            for row in a.transitions
        ],
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=False).encode("ascii")


def deserialize(data: bytes | str) -> Automaton:
    """Parse and fully re-validate a serialized automaton.

    Malformed or truncated input raises AutomatonFormatError, an unsupported
    version AutomatonVersionError, and structurally parseable data violating
    an automaton invariant (wrong accepting set, wrong or missing transition,
    unreachable state, non-canonical word) AutomatonInvariantError.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise AutomatonFormatError(f"not utf-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise AutomatonFormatError(f"bad json: {exc}") from exc
    if not isinstance(doc, dict):
        raise AutomatonFormatError("top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise AutomatonVersionError(f"unsupported format version {version!r}")
    for key in ("b", "states", "accepting", "transitions"):
        if key not in doc:
            raise AutomatonFormatError(f"missing key {key!r}")
    width = doc["b"]
    if not isinstance(width, int) or not 1 <= width <= MAX_WIDTH:
        raise AutomatonFormatError(f"bad width {width!r}")
    raw_states = doc["states"]
    raw_accepting = doc["accepting"]
    raw_transitions = doc["transitions"]
    if not isinstance(raw_states, list) or not raw_states:
        raise AutomatonFormatError("states must be a nonempty list")
    if not isinstance(raw_accepting, list):
        raise AutomatonFormatError("accepting must be a list")
    if not isinstance(raw_transitions, list) or len(raw_transitions) != len(raw_states):
        raise AutomatonFormatError("transitions must list one row per state")

    states = []
    for entry in raw_states:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("word"), str)
            or not isinstance(entry.get("l"), bool)
            or not isinstance(entry.get("r"), bool)
        ):
            raise AutomatonFormatError(f"bad state entry {entry!r}")
        labels = _parse_word(entry["word"], width)
        try:
            states.append(AutomatonState(LabeledWord(labels), entry["l"], entry["r"]))
        except ValueError as exc:
            raise AutomatonInvariantError(f"invalid state {entry['word']!r}: {exc}") from exc

    n = len(states)
    n_letters = (1 << width) - 1
    if states[0] != initial_state(width):
        raise AutomatonInvariantError("state 0 must be the all-empty initial state")
    if len(set(states)) != n:
        raise AutomatonInvariantError("duplicate states")

    rows: list[array] = []
    for i, pairs in enumerate(raw_transitions):
        if not isinstance(pairs, list):
            raise AutomatonFormatError(f"transition row {i} must be a list")
        row = array("i", [-1]) * n_letters
        for pair in pairs:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)
            ):
                raise AutomatonFormatError(f"bad transition entry {pair!r} in row {i}")
            bits, target = pair
            if not 1 <= bits <= n_letters:
                raise AutomatonFormatError(f"letter {bits} out of range in row {i}")
            if not 0 <= target < n:
                raise AutomatonInvariantError(f"target {target} out of range in row {i}")
            row[bits - 1] = target
        rows.append(row)

    # Every defined transition must agree with the transition map, and every
    # defined step must be present.
    for i, state in enumerate(states):
        row = rows[i]
        for bits in range(1, n_letters + 1):
            want = step(state, RowConfig(width, bits))
            have = row[bits - 1]
            if want is None:
                if have != -1:
                    raise AutomatonInvariantError(
                        f"row {i} defines letter {bits} but the step is undefined"
                    )
            else:
                if have < 0 or states[have] != want:
                    raise AutomatonInvariantError(
                        f"row {i} letter {bits} should map to {want}"
                    )

    want_accepting = frozenset(i for i, s in enumerate(states) if is_accepting(s))
    if frozenset(raw_accepting) != want_accepting:
        raise AutomatonInvariantError("accepting set does not match the states")

    seen = {0}
    queue = [0]
    while queue:
        i = queue.pop()
        for t in rows[i]:
            if t >= 0 and t not in seen:
                seen.add(t)
                queue.append(t)
    if len(seen) != n:
        raise AutomatonInvariantError("serialized automaton has unreachable states")

    return Automaton(width, tuple(states), want_accepting, tuple(rows))


def export_dot(a: Automaton) -> str:
    """Graphviz rendering: accepting states doubled, initial state marked."""
    lines = [
        "digraph automaton {",
        "  rankdir=TB;",
        '  __start [shape=point, label=""];',
    ]
    for i, s in enumerate(a.states):
        shape = "doublecircle" if i in a.accepting else "circle"
        lines.append(f'  q{i} [shape={shape}, label="{s}"];')
    lines.append("  __start -> q0;")
    for i, row in enumerate(a.transitions):
        for rank, t in enumerate(row):
            if t >= 0:
                label = format(rank + 1, f"0{a.width}b")
                lines.append(f'  q{i} -> q{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
