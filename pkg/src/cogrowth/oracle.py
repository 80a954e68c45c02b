"""Exact cogrowth sequences by dynamic programming over normal forms.

States are reduced words of the free product.  A state is dropped once the
letters still needed to return to the identity exceed the remaining steps,
which is exact because that count is a true lower bound.

Copies of the same factor are interchangeable, so states are kept up to a
relabelling of copies: copies are numbered in order of first appearance
and the unused copies are represented by the next free label, with a
weight equal to the number of unused copies.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .algebra.series import TruncatedSeries
from .errors import CapacityError, DomainError
from .groups import FiniteGroupTable, FreeProductSpec, GeneratingSet

DEFAULT_N_CAP = 30
DEFAULT_STATE_CAP = 50_000_000


@dataclass(frozen=True)
class CogrowthSequence:
    spec: FreeProductSpec
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def as_series(self) -> TruncatedSeries:
        return TruncatedSeries(self.values)


def _factor_data(spec: FreeProductSpec, inverted: bool = False) -> tuple:
    """Per-factor transition tables as plain tuples.

    Each entry is (infinite, multiplicity, start, step, identity_letters,
    inverse): ``start`` lists (value, cost) for letters opening a new
    syllable and ``step[v]`` lists (new value or None, change in return
    length) for letters extending a syllable with value v.  With
    ``inverted`` every generator is replaced by its inverse.
    """
    out = []
    for i, f in enumerate(spec.factors):
        if f.is_infinite:
            out.append((True, f.multiplicity, ((1, 1), (-1, 1)), None, 0))
            continue
        g = f.group
        cost = [spec.syllable_cost(i, v) for v in range(g.order)]
        gens = f.gens.elements
        if inverted:
            gens = tuple(g.inverse[s] for s in gens)
        start = tuple((s, cost[s]) for s in gens if s != g.identity)
        nid = sum(1 for s in gens if s == g.identity)
        step = []
        for v in range(g.order):
            row = []
            for s in gens:
                v2 = g.mul[v][s]
                row.append((None if v2 == g.identity else v2, cost[v2] - cost[v]))
            step.append(tuple(row))
        out.append((False, f.multiplicity, start, tuple(step), nid))
    return tuple(out)


class _Trie:
    """Normal forms stored as integer ids; node 0 is the identity.

    A node records its parent (the form without its last syllable), the
    last syllable, the minimal return length and the copies used per factor.
    """

    def __init__(self, nfac: int):
        self.parent = [-1]
        self.tag = [None]
        self.value = [None]
        self.mrl = [0]
        self.used = [(0,) * nfac]
        self.children: dict = {}


def _z_step(v: int) -> tuple:
    a, b = v + 1, v - 1
    return ((a or None, abs(a) - abs(v)), (b or None, abs(b) - abs(v)))


def _expand(fdata: tuple, trie: _Trie, states: dict, rem: int) -> dict:
    """Advance every state by one letter, keeping states with return length <= rem."""
    new: dict = defaultdict(int)
    parent, tags, values, mrls, useds = trie.parent, trie.tag, trie.value, trie.mrl, trie.used
    children = trie.children
    for node, cnt in states.items():
        mrl = mrls[node]
        used = useds[node]
        ltag = tags[node]
        if ltag is not None:
            lval = values[node]
            head = parent[node]
        for i, (inf, mult, start, step, nid) in enumerate(fdata):
            u = used[i]
            top = u + 1 if u < mult else u
            for c in range(top):
                wc = cnt if c < u else cnt * (mult - u)
                tag = (i, c)
                if tag == ltag:
                    base, uu = head, used
                    trans = _z_step(lval) if inf else step[lval]
                else:
                    if nid:
                        new[node] += wc * nid
                    base = node
                    uu = used if c < u else used[:i] + (c + 1,) + used[i + 1:]
                    trans = start
                    # opening a syllable adds its full cost
                for v2, dm in trans:
                    m2 = mrl + dm
                    if m2 > rem:
                        continue
                    if v2 is None:
                        new[base] += wc
                        continue
                    key = (base, tag, v2)
                    k = children.get(key)
                    if k is None:
                        k = len(parent)
                        children[key] = k
                        parent.append(base)
                        tags.append(tag)
                        values.append(v2)
                        mrls.append(m2)
                        useds.append(uu)
                    new[k] += wc
    return new


def _class_size(fdata: tuple, used: tuple) -> int:
    """Number of copy relabellings of a form using ``used`` copies per factor."""
    size = 1
    for (_, mult, *_rest), u in zip(fdata, used):
        for j in range(u):
            size *= mult - j
    return size


def cogrowth_sequence(
    spec: FreeProductSpec,
    n_max: int,
    state_cap: int = DEFAULT_STATE_CAP,
    n_cap: int = DEFAULT_N_CAP,
) -> CogrowthSequence:
    """a_0..a_{n_max}: the number of words of each length over the alphabet equal to 1.

    A word of length n splits into a prefix of length ceil(n/2) with value g
    and a suffix of length floor(n/2) with value g^-1.  Suffixes with value
    g^-1 correspond to words over the inverted alphabet with value g, so
    a_n pairs forward counts over S with forward counts over S^-1 (the same
    counts when S is symmetric).  Counts are kept per canonical form, which
    stands for _class_size relabelled forms with equal counts each.
    """
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    if n_max > n_cap:
        raise CapacityError(f"n_max={n_max} exceeds the configured cap {n_cap}")
    fdata = _factor_data(spec)
    trie = _Trie(len(fdata))
    top, half = (n_max + 1) // 2, n_max // 2

    def levels(data, depth):
        out = [{0: 1}]
        for k in range(1, depth + 1):
            # a form is useful only if it can still shrink to length <= half by level `top`
            states = _expand(data, trie, out[-1], half + top - k)
            if len(states) > state_cap:
                raise CapacityError(f"{len(states)} live states at step {k} exceed the cap {state_cap}")
            out.append(states)
        return out

    forward = levels(fdata, top)
    backward = forward if spec.symmetric else levels(_factor_data(spec, inverted=True), half)
    sizes: dict = {}
    values = []
    for n in range(n_max + 1):
        Wa, Wb = forward[(n + 1) // 2], backward[n // 2]
        if len(Wb) < len(Wa):
            small, large = Wb, Wa
        else:
            small, large = Wa, Wb
        total = 0
        for node, c in small.items():
            c2 = large.get(node)
            if c2:
                used = trie.used[node]
                size = sizes.get(used)
                if size is None:
                    size = sizes[used] = _class_size(fdata, used)
                total += c * c2 // size
        values.append(total)
    return CogrowthSequence(spec, tuple(values))


def finite_group_moments(group: FiniteGroupTable, gens: GeneratingSet, n_max: int) -> list[int]:
    """phi(alpha^n), n = 0..n_max, for alpha the sum of the generators in the group algebra."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    vec = [0] * group.order
    vec[group.identity] = 1
    out = [1]
    for _ in range(n_max):
        nxt = [0] * group.order
        for a, c in enumerate(vec):
            if c:
                row = group.mul[a]
                for s in gens.elements:
                    nxt[row[s]] += c
        vec = nxt
        out.append(vec[group.identity])
    return out
