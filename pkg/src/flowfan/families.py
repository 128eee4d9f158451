"""Constructors for the worked graph families and their closed-form counts,
plus the barred-word encoding of cyclic integer flows on blossomed cycles.

Naming matters here: cycle edge ids sort before spoke ids, so canonical
route order starts with the cycles and framing recovery from an exceptional
set colours them red.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from .flowgraph import BLUE, RED, Edge, FramedGraph, Route
from .intflow import CyclicVolumeFlow, NotCyclicFlow, is_cyclic_volume_flow


class MalformedWord(Exception):
    """The barred word is not of the prescribed shape."""


# ----------------------------------------------------------------------
# graphs


def x_graph() -> FramedGraph:
    """Two full vertices in a path, five outer spokes; flow polytope of
    normalized volume 5 (the running acyclic example)."""
    return FramedGraph(
        vertices=("A", "B", "C", "u", "v", "D", "E", "F"),
        edges=(
            Edge("e1", "A", "u", BLUE),
            Edge("e2", "B", "u", RED),
            Edge("e3", "C", "v", RED),
            Edge("e4", "u", "D", RED),
            Edge("e5", "u", "v", BLUE),
            Edge("e6", "v", "E", RED),
            Edge("e7", "v", "F", BLUE),
        ),
    )


def xx_graph() -> FramedGraph:
    """Four full vertices in a diamond; normalized volume 42."""
    return FramedGraph(
        vertices=("A1", "A2", "B1", "B2", "l", "d", "u", "r", "Z1", "Z2", "Z3", "Z4"),
        edges=(
            Edge("r1", "A1", "l", RED),
            Edge("r2", "l", "d", RED),
            Edge("r3", "d", "Z1", RED),
            Edge("r4", "A2", "u", RED),
            Edge("r5", "u", "r", RED),
            Edge("r6", "r", "Z2", RED),
            Edge("b1", "B1", "d", BLUE),
            Edge("b2", "d", "r", BLUE),
            Edge("b3", "r", "Z3", BLUE),
            Edge("b4", "B2", "l", BLUE),
            Edge("b5", "l", "u", BLUE),
            Edge("b6", "u", "Z4", BLUE),
        ),
    )


def blossomed_cycle(n: int) -> FramedGraph:
    """Red n-cycle with a blue source and sink spoke at every vertex."""
    if n < 2:
        raise ValueError("need n >= 2")
    vertices = []
    edges = []
    for a in range(1, n + 1):
        vertices += [f"v{a}", f"s{a}", f"t{a}"]
        edges.append(Edge(f"c{a}", f"v{a}", f"v{a % n + 1}", RED))
        edges.append(Edge(f"in{a}", f"s{a}", f"v{a}", BLUE))
        edges.append(Edge(f"out{a}", f"v{a}", f"t{a}", BLUE))
    return FramedGraph(tuple(vertices), tuple(edges))


def cycle_route_pair(n: int, a: int, b: int) -> Route:
    """The good route of the blossomed n-cycle entering at a and leaving at
    its first arrival at b."""
    edges = [f"in{a}"]
    k = a
    while k != b:
        edges.append(f"c{k}")
        k = k % n + 1
    edges.append(f"out{b}")
    return Route(tuple(edges))


def h_cp(c: int, p: int) -> FramedGraph:
    """c nested red p-cycles joined by blue spoke paths: vertices
    [0, c+1] x [p], cycle edges at levels 1..c."""
    if c < 1 or p < 2:
        raise ValueError("need c >= 1 and p >= 2")
    vertices = [f"{a}.{b}" for a in range(c + 2) for b in range(1, p + 1)]
    edges = []
    for a in range(1, c + 1):
        for b in range(1, p + 1):
            edges.append(Edge(f"c{a}.{b}", f"{a}.{b}", f"{a}.{b % p + 1}", RED))
    for a in range(c + 1):
        for b in range(1, p + 1):
            edges.append(Edge(f"s{a}.{b}", f"{a}.{b}", f"{a + 1}.{b}", BLUE))
    return FramedGraph(tuple(vertices), tuple(edges))


def path_of_full_graphs(n: int) -> FramedGraph:
    """Path of n-1 full vertices with an ample framing; the flow polytope has
    normalized volume Catalan(n).  n=3 is the X-graph pattern."""
    if n < 2:
        raise ValueError("need n >= 2")
    m = n - 1
    vertices = ["A", "Z"] + [f"p{i}" for i in range(1, m + 1)]
    vertices += [f"B{i}" for i in range(1, m + 1)] + [f"T{i}" for i in range(1, m + 1)]
    edges = [Edge("a", "A", "p1", BLUE)]
    for i in range(1, m + 1):
        edges.append(Edge(f"b{i}", f"B{i}", f"p{i}", RED))
        edges.append(Edge(f"y{i}", f"p{i}", f"T{i}", RED))
    for i in range(1, m):
        edges.append(Edge(f"q{i}", f"p{i}", f"p{i + 1}", BLUE))
    edges.append(Edge("z", f"p{m}", "Z", BLUE))
    return FramedGraph(tuple(vertices), tuple(edges))


# ----------------------------------------------------------------------
# closed-form counts


def multinomial_volume(c: int, p: int) -> int:
    """binom((c+1)(p-1); p-1, ..., p-1): the flow-complex volume of H_{c,p}."""
    total = (c + 1) * (p - 1)
    out = 1
    for i in range(c + 1):
        out *= comb(total - i * (p - 1), p - 1)
    return out


def count_barred_words(p: int, a) -> int:
    return comb(sum(a) + 2 * p - 2, p - 1)


# ----------------------------------------------------------------------
# barred words


@dataclass(frozen=True)
class BarredWord:
    """Letters 1^(a_1+1) ... p^(a_p+1) in sorted order with p-1 bars placed
    in slots 0..L-1 (slot k = after the k-th letter), repetition allowed."""

    p: int
    a: tuple
    bars: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "bars", tuple(sorted(int(x) for x in self.bars)))
        if self.p < 2 or len(self.a) != self.p:
            raise MalformedWord("need p >= 2 multiplicities")
        if any(x < 0 for x in self.a):
            raise MalformedWord("negative multiplicity")
        if len(self.bars) != self.p - 1:
            raise MalformedWord(f"need exactly {self.p - 1} bars")
        length = sum(self.a) + self.p
        if any(not 0 <= s < length for s in self.bars):
            raise MalformedWord("bar slot out of range")

    @property
    def letters(self) -> list:
        return [i for i in range(1, self.p + 1) for _ in range(self.a[i - 1] + 1)]

    def __str__(self):
        bars = Counter(self.bars)
        out = ["|" * bars.get(0, 0)]
        for k, letter in enumerate(self.letters, 1):
            out.append(str(letter))
            out.append("|" * bars.get(k, 0))
        return "".join(out)


def parse_word(text: str) -> BarredWord:
    """Parse strings like "11112|22334|44|456||66" (single-digit letters)."""
    bars = []
    letters = []
    for ch in text:
        if ch == "|":
            bars.append(len(letters))
        elif ch.isdigit() and ch != "0":
            letters.append(int(ch))
        else:
            raise MalformedWord(f"unexpected character {ch!r}")
    if not letters or letters != sorted(letters):
        raise MalformedWord("letters must be a nonempty sorted word")
    p = max(letters)
    counts = Counter(letters)
    if set(counts) != set(range(1, p + 1)):
        raise MalformedWord("every letter value up to the maximum must occur")
    a = tuple(counts[i] - 1 for i in range(1, p + 1))
    return BarredWord(p, a, tuple(bars))


def _rotation(word: BarredWord):
    """The zero-edge label j (down-step into the leftmost path minimum), the
    rotated letter word W', and the labelled bar slots of W'."""
    letters = word.letters
    length = len(letters)
    last = {}
    for k, letter in enumerate(letters, 1):
        last[letter] = k
    down_at = {k: letter for letter, k in last.items()}
    bars = Counter(word.bars)

    height = bars.get(0, 0)
    best = 1
    j = None
    for k in range(1, length + 1):
        if k in down_at:
            height -= 1
            if height < best:
                best = height
                j = down_at[k]
        height += bars.get(k, 0)
    assert j is not None

    cut = last[j]
    rotated = letters[cut:] + letters[:cut]
    slots = sorted((s - cut) % length for s in word.bars)
    labels = [i % word.p + 1 for i in range(j, j + word.p - 1)]
    return j, rotated, dict(zip(labels, slots)), list(zip(labels, slots))


def barred_word_to_flow(p: int, a, word) -> CyclicVolumeFlow:
    """The cyclic integer flow on the blossomed p-cycle encoded by a barred
    word: rotate at the leftmost path minimum, then read inter-bar letter
    counts into spoke outflows and post-bar letter counts into cycle flows."""
    if isinstance(word, str):
        word = parse_word(word)
    if word.p != p or word.a != tuple(a):
        raise MalformedWord("word does not match the prescribed multiplicities")
    j, rotated, bar_of, ordered = _rotation(word)
    length = len(rotated)
    last = {}
    for k, letter in enumerate(rotated, 1):
        last[letter] = k

    out = {}
    prev = None
    for label, slot in ordered:
        out[label] = slot - (bar_of[prev] if prev is not None else 0)
        prev = label
    out[j] = (length - bar_of[prev]) - 1

    values = {}
    for i in range(1, p + 1):
        values[f"in{i}"] = word.a[i - 1]
        values[f"out{i}"] = out[i]
        values[f"c{i}"] = 0 if i == j else last[i] - bar_of[i]
    graph = blossomed_cycle(p)
    flow = CyclicVolumeFlow(tuple(sorted(values.items())), (f"c{j}",))
    sources = {f"s{i}": word.a[i - 1] for i in range(1, p + 1)}
    assert is_cyclic_volume_flow(graph, values, flow.zero_edges, sources)
    return flow


def flow_to_barred_word(p: int, flow) -> BarredWord:
    """Inverse reading: place bars by cumulative spoke outflows in the rotated
    word, then rotate back (cut before the block of letters <= j)."""
    graph = blossomed_cycle(p)
    if isinstance(flow, CyclicVolumeFlow):
        values, zero_edges = flow.as_dict(), flow.zero_edges
    else:
        values, zero_edges = flow
    a = tuple(values.get(f"in{i}", 0) for i in range(1, p + 1))
    sources = {f"s{i}": a[i - 1] for i in range(1, p + 1)}
    if len(zero_edges) != 1 or not is_cyclic_volume_flow(
        graph, values, zero_edges, sources
    ):
        raise NotCyclicFlow("not a cyclic integer flow on the blossomed cycle")
    j = int(zero_edges[0][1:])
    length = sum(a) + p

    labels = [i % p + 1 for i in range(j, j + p - 1)]
    slots = []
    position = 0
    for label in labels:
        position += values[f"out{label}"]
        slots.append(position)

    rotated = [i for i in labels for _ in range(a[i - 1] + 1)] + [
        j for _ in range(a[j - 1] + 1)
    ]
    last = {}
    for k, letter in enumerate(rotated, 1):
        last[letter] = k
    for label, slot in zip(labels, slots):
        if values[f"c{label}"] != last[label] - slot:
            raise NotCyclicFlow("cycle flows disagree with the bar positions")

    cut = sum(a[i - 1] + 1 for i in range(1, j + 1))  # |letters <= j|
    bars = tuple(sorted((s + cut) % length for s in slots))
    word = BarredWord(p, a, bars)
    assert barred_word_to_flow(p, a, word).as_dict() == dict(values)
    return word
