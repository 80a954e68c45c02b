"""Finite groups by multiplication table, generating sets, free-product specs and normal forms.

A normal form is a tuple of syllables ``((factor, copy), value)``.  For a
finite factor ``value`` is a non-identity element index; for an infinite
cyclic factor it is a nonzero exponent.  Adjacent syllables never share a
``(factor, copy)`` tag and ``()`` is the identity of the free product.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError

BASE_LETTERS = "xyuvwabcdefghjkpqrs"

Syllable = tuple  # ((factor, copy), value)
NormalForm = tuple  # tuple of syllables


class FiniteGroupTable:
    """A finite group given by its multiplication table ``mul[a][b] = a*b``."""

    def __init__(self, mul: Sequence[Sequence[int]], check: bool = True):
        n = len(mul)
        if n < 1:
            raise DomainError("a group needs at least one element")
        rows = tuple(tuple(int(x) for x in r) for r in mul)
        if any(len(r) != n for r in rows):
            raise DomainError("multiplication table is not square")
        if any(not 0 <= x < n for r in rows for x in r):
            raise DomainError("multiplication table entry out of range")
        self.order = n
        self.mul = rows
        ident = [e for e in range(n) if all(rows[e][a] == a and rows[a][e] == a for a in range(n))]
        if not ident:
            raise DomainError("multiplication table has no identity element")
        self.identity = ident[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if rows[a][b] == self.identity and rows[b][a] == self.identity]
            if not bs:
                raise DomainError(f"element {a} has no inverse")
            inv.append(bs[0])
        self.inverse = tuple(inv)
        if check:
            self._check_associative()

    def _check_associative(self, samples: int = 20000) -> None:
        m, n = self.mul, self.order
        if n <= 64:
            triples: Iterable = product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise DomainError(f"multiplication table is not associative at ({a},{b},{c})")

    @classmethod
    def cyclic(cls, d: int) -> "FiniteGroupTable":
        """Z/dZ with element k standing for x^k."""
        if d < 1:
            raise DomainError("cyclic group order must be positive")
        g = cls([[(a + b) % d for b in range(d)] for a in range(d)], check=False)
        g.cyclic_order = d
        return g

    cyclic_order: int | None = None

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroupTable) and self.mul == other.mul

    def __hash__(self) -> int:
        return hash(self.mul)

    def power(self, a: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != self.identity:
            r = self.mul[r][a]
            k += 1
        return k

    def closure(self, gens: Iterable[int]) -> set[int]:
        gens = list(gens)
        seen = {self.identity}
        todo = [self.identity]
        while todo:
            a = todo.pop()
            for s in gens:
                b = self.mul[a][s]
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen


@dataclass(frozen=True)
class GeneratingSet:
    """Element indices of a finite group used as letters; duplicates forbidden."""

    group: FiniteGroupTable
    elements: tuple[int, ...]
    allow_identity: bool = False

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", els)
        g = self.group
        if len(set(els)) != len(els):
            raise DomainError("generating set contains duplicates")
        for e in els:
            if not 0 <= e < g.order:
                raise DomainError(f"generator index {e} out of range")
            if e == g.identity and not self.allow_identity:
                raise DomainError("identity element is not allowed as a generator")
        if len(g.closure(els)) != g.order:
            raise DomainError("elements do not generate the group")

    @property
    def symmetric(self) -> bool:
        s = set(self.elements)
        return all(self.group.inverse[e] in s for e in s)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class FactorSpec:
    """One free factor G_i taken with multiplicity m_i; ``gens is None`` marks Z."""

    gens: GeneratingSet | None
    multiplicity: int = 1

    def __post_init__(self):
        if int(self.multiplicity) < 1:
            raise DomainError("factor multiplicity must be at least 1")

    @property
    def is_infinite(self) -> bool:
        return self.gens is None

    @property
    def group(self) -> FiniteGroupTable | None:
        return None if self.gens is None else self.gens.group

    @property
    def letters_per_copy(self) -> int:
        return 2 if self.gens is None else len(self.gens)

    @property
    def symmetric(self) -> bool:
        return True if self.gens is None else self.gens.symmetric


def cyclic_factor(d: int, exps: Sequence[int] = (1,), multiplicity: int = 1, allow_identity: bool = False) -> FactorSpec:
    g = FiniteGroupTable.cyclic(d)
    return FactorSpec(GeneratingSet(g, tuple(e % d for e in exps), allow_identity), multiplicity)


def table_factor(mul, gens: Sequence[int], multiplicity: int = 1, allow_identity: bool = False) -> FactorSpec:
    return FactorSpec(GeneratingSet(FiniteGroupTable(mul), tuple(gens), allow_identity), multiplicity)


def z_factor(multiplicity: int = 1) -> FactorSpec:
    return FactorSpec(None, multiplicity)


@dataclass(frozen=True)
class Letter:
    """A letter of the alphabet: (factor, copy) tag plus element index or +-1 for Z."""

    factor: int
    copy: int
    value: int

    @property
    def tag(self) -> tuple[int, int]:
        return (self.factor, self.copy)


@dataclass(frozen=True)
class FreeProductSpec:
    factors: tuple[FactorSpec, ...]
    alphabet: tuple[Letter, ...] = field(init=False, compare=False, repr=False)
    _back: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        letters = []
        back = []
        for i, f in enumerate(self.factors):
            vals = (1, -1) if f.is_infinite else f.gens.elements
            for c in range(f.multiplicity):
                letters.extend(Letter(i, c, v) for v in vals)
            back.append(None if f.is_infinite else _return_lengths(f.gens))
        object.__setattr__(self, "alphabet", tuple(letters))
        object.__setattr__(self, "_back", tuple(back))

    @property
    def symmetric(self) -> bool:
        return all(f.symmetric for f in self.factors)

    @property
    def has_infinite(self) -> bool:
        return any(f.is_infinite for f in self.factors)

    def __len__(self) -> int:
        return len(self.alphabet)

    def syllable_cost(self, factor: int, value: int) -> int:
        """Letters needed to cancel one syllable."""
        b = self._back[factor]
        return abs(value) if b is None else b[value]

    def letter_name(self, letter: Letter) -> str:
        base = factor_base_name(self, letter.factor, letter.copy)
        f = self.factors[letter.factor]
        if f.is_infinite:
            return base if letter.value == 1 else base + "^-1"
        return element_name(self, letter.factor, letter.copy, letter.value)

    def describe(self) -> str:
        parts = []
        for i, f in enumerate(self.factors):
            if f.is_infinite:
                core = "Z"
            else:
                g = f.group
                core = f"Z{g.cyclic_order}" if g.cyclic_order else f"G{g.order}"
                core += "{" + ",".join(element_name(self, i, None, e) for e in f.gens.elements) + "}"
            parts.append(core if f.multiplicity == 1 else f"{core}^*{f.multiplicity}")
        return " * ".join(parts) if parts else "1"


def _return_lengths(gs: GeneratingSet) -> tuple[int, ...]:
    """For each element g, the shortest word over the generators equal to g^-1."""
    g = gs.group
    dist = {g.identity: 0}
    q = deque([g.identity])
    while q:
        a = q.popleft()
        for s in gs.elements:
            b = g.mul[a][s]
            if b not in dist:
                dist[b] = dist[a] + 1
                q.append(b)
    return tuple(dist[g.inverse[a]] for a in range(g.order))


def factor_base_name(spec: FreeProductSpec, factor: int, copy: int | None) -> str:
    base = BASE_LETTERS[factor] if factor < len(BASE_LETTERS) else f"g{factor}_"
    if copy is not None and spec.factors[factor].multiplicity > 1:
        base += str(copy + 1)
    return base


def element_name(spec: FreeProductSpec, factor: int, copy: int | None, value: int) -> str:
    """Readable name of an element of one factor copy: 1, x, x^2, x^-1, x[3]."""
    f = spec.factors[factor]
    base = factor_base_name(spec, factor, copy)
    if f.is_infinite:
        if value == 0:
            return "1"
        return base if value == 1 else f"{base}^{value}"
    g = f.group
    if value == g.identity:
        return "1"
    if g.cyclic_order:
        return base if value == 1 else f"{base}^{value}"
    return f"{base}[{value}]"


def nf_multiply(spec: FreeProductSpec, nf: NormalForm, letter: Letter) -> NormalForm:
    """Reduced normal form of nf * letter."""
    i = letter.factor
    if not 0 <= i < len(spec.factors) or not 0 <= letter.copy < spec.factors[i].multiplicity:
        raise DomainError(f"letter {letter} is not in the alphabet")
    f = spec.factors[i]
    tag = letter.tag
    if f.is_infinite:
        if letter.value not in (1, -1):
            raise DomainError(f"letter {letter} is not in the alphabet")
        if nf and nf[-1][0] == tag:
            k = nf[-1][1] + letter.value
            return nf[:-1] if k == 0 else nf[:-1] + ((tag, k),)
        return nf + ((tag, letter.value),)
    g = f.group
    if not 0 <= letter.value < g.order:
        raise DomainError(f"letter {letter} is not in the alphabet")
    if nf and nf[-1][0] == tag:
        v = g.mul[nf[-1][1]][letter.value]
        return nf[:-1] if v == g.identity else nf[:-1] + ((tag, v),)
    if letter.value == g.identity:
        return nf
    return nf + ((tag, letter.value),)


def evaluate_word(spec: FreeProductSpec, word: Iterable[Letter], start: NormalForm = ()) -> NormalForm:
    nf = start
    for s in word:
        nf = nf_multiply(spec, nf, s)
    return nf


def nf_product(spec: FreeProductSpec, a: NormalForm, b: NormalForm) -> NormalForm:
    """Product of two normal forms, by multiplying syllable by syllable."""
    out = a
    for tag, v in b:
        f = spec.factors[tag[0]]
        if f.is_infinite:
            step = 1 if v > 0 else -1
            for _ in range(abs(v)):
                out = nf_multiply(spec, out, Letter(tag[0], tag[1], step))
        else:
            g = f.group
            if out and out[-1][0] == tag:
                w = g.mul[out[-1][1]][v]
                out = out[:-1] if w == g.identity else out[:-1] + ((tag, w),)
            else:
                out = out + ((tag, v),)
    return out


def min_return_length(spec: FreeProductSpec, nf: NormalForm) -> int:
    """Lower bound on the number of letters that bring nf back to the identity."""
    return sum(spec.syllable_cost(tag[0], v) for tag, v in nf)


def inverse_letter(spec: FreeProductSpec, letter: Letter) -> Letter | None:
    f = spec.factors[letter.factor]
    if f.is_infinite:
        return Letter(letter.factor, letter.copy, -letter.value)
    inv = f.group.inverse[letter.value]
    return Letter(letter.factor, letter.copy, inv) if inv in f.gens.elements else None


def z_to_z2z2(spec: FreeProductSpec) -> FreeProductSpec:
    """Replace every Z^{*s} by (Z/2)^{*2s} with S={x}; the cogrowth sequence is unchanged."""
    out = []
    for f in spec.factors:
        out.append(cyclic_factor(2, (1,), 2 * f.multiplicity) if f.is_infinite else f)
    return FreeProductSpec(tuple(out))


# -- families --------------------------------------------------------------

def cyclic_family(d: int, m: int) -> FreeProductSpec:
    """(Z/d)^{*m} with S = {x_1, ..., x_m}."""
    return FreeProductSpec((cyclic_factor(d, (1,), m),))


def z2_zn(n: int, symmetric: bool = False) -> FreeProductSpec:
    """Z/2 * Z/n with S={x,y} (or {x,y,y^-1} when symmetric)."""
    ys = (1, n - 1) if symmetric and n > 2 else (1,)
    return FreeProductSpec((cyclic_factor(2), cyclic_factor(n, ys)))


def z2_free(m: int, s: int) -> FreeProductSpec:
    """(Z/2)^{*m} * Z^{*s} with the standard symmetric alphabet."""
    if m < 0 or s < 0 or m + 2 * s < 2:
        raise DomainError("need m, s >= 0 with m + 2s >= 2")
    fs = []
    if m:
        fs.append(cyclic_factor(2, (1,), m))
    if s:
        fs.append(z_factor(s))
    return FreeProductSpec(tuple(fs))


# -- JSON schema -----------------------------------------------------------

def _parse_cyclic_gen(g, d: int) -> int:
    if isinstance(g, bool):
        raise DomainError(f"bad generator {g!r}")
    if isinstance(g, int):
        return g % d
    if not isinstance(g, str):
        raise DomainError(f"bad generator {g!r}")
    s = g.replace(" ", "")
    if s == "1":
        return 0
    if s == "x":
        return 1 % d
    if s.startswith("x^"):
        try:
            return int(s[2:]) % d
        except ValueError:
            pass
    raise DomainError(f"bad cyclic generator {g!r}; use 'x', 'x^k' or 'x^-1'")


def spec_from_json(obj) -> FreeProductSpec:
    """Build a spec from the JSON schema (a list of factors or {"factors": [...]})."""
    if isinstance(obj, dict):
        if "factors" not in obj:
            raise DomainError("spec object needs a 'factors' list")
        allow = bool(obj.get("allow_identity", False))
        items = obj["factors"]
    else:
        allow, items = False, obj
    if not isinstance(items, list):
        raise DomainError("factors must be a list")
    fs = []
    for k, it in enumerate(items):
        if not isinstance(it, dict) or "kind" not in it:
            raise DomainError(f"factor {k}: expected an object with a 'kind'")
        m = it.get("multiplicity", 1)
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise DomainError(f"factor {k}: multiplicity must be a positive integer")
        a = bool(it.get("allow_identity", allow))
        kind = it["kind"]
        if kind == "cyclic":
            d = it.get("order")
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise DomainError(f"factor {k}: cyclic order must be a positive integer")
            gens = it.get("gens", ["x"])
            if not isinstance(gens, list):
                raise DomainError(f"factor {k}: gens must be a list")
            fs.append(cyclic_factor(d, [_parse_cyclic_gen(g, d) for g in gens], m, a))
        elif kind == "table":
            mul, gens = it.get("mul"), it.get("gens")
            if not isinstance(mul, list) or not isinstance(gens, list):
                raise DomainError(f"factor {k}: table factor needs 'mul' and 'gens' lists")
            try:
                fs.append(table_factor(mul, gens, m, a))
            except (TypeError, ValueError) as e:
                if isinstance(e, DomainError):
                    raise
                raise DomainError(f"factor {k}: malformed table ({e})") from None
        elif kind == "Z":
            fs.append(z_factor(m))
        else:
            raise DomainError(f"factor {k}: unknown kind {kind!r}")
    return FreeProductSpec(tuple(fs))


def spec_to_json(spec: FreeProductSpec) -> dict:
    out = []
    for f in spec.factors:
        if f.is_infinite:
            out.append({"kind": "Z", "multiplicity": f.multiplicity})
            continue
        g = f.group
        item = {"multiplicity": f.multiplicity}
        if g.cyclic_order:
            item.update(kind="cyclic", order=g.order, gens=["x" if e == 1 else f"x^{e}" for e in f.gens.elements])
        else:
            item.update(kind="table", mul=[list(r) for r in g.mul], gens=list(f.gens.elements))
        if f.gens.allow_identity:
            item["allow_identity"] = True
        out.append(item)
    return {"factors": out}
