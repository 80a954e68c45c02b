"""Avoidance-language equation systems for cogrowth series of free products.

For g in a factor and X a subset of that factor, F[g,X] counts words equal
to g all of whose proper nonempty prefixes avoid X.  Four rules express
each F[g,X] through others, depending on whether g = 1 and whether 1 is in
X.  Infinite cyclic factors only need X inside {x^-1, 1, x} after the
reductions applied when keys are created.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .algebra.series import TruncatedSeries
from .errors import CapacityError, DomainError, InconsistencyError
from .groups import FreeProductSpec, element_name

DEFAULT_MAX_FACTOR_ORDER = 12
DEFAULT_MAX_UNKNOWNS = 200_000

RULES = ("g!=1, 1 in X", "g!=1, 1 not in X", "g=1, 1 not in X", "g=1, 1 in X")


@dataclass(frozen=True, order=True)
class Key:
    """Unknown F[g,X].  ``tag`` is None for F[1,{}] and F[1,{1}], which belong to no factor.

    With symmetry reduction the tag is ``(factor,)`` and stands for every copy.
    """

    tag: tuple | None
    g: int | None
    X: tuple

    @property
    def copy_free(self) -> bool:
        return self.tag is None


ROOT = Key(None, None, ())
ONE_KEY = Key(None, None, (None,))


@dataclass(frozen=True)
class Term:
    coeff: int
    tpow: int
    keys: tuple  # product of unknowns


@dataclass(frozen=True)
class Equation:
    lhs: Key
    terms: tuple
    rule: str


@dataclass
class EquationSystem:
    spec: FreeProductSpec
    equations: list
    symmetry: bool = False
    shortcut: bool = False
    names: dict = field(default_factory=dict)

    @property
    def root(self) -> Key:
        return ROOT

    @property
    def unknowns(self) -> list:
        return [e.lhs for e in self.equations]

    def __len__(self) -> int:
        return len(self.equations)

    def equation(self, key: Key) -> Equation:
        for e in self.equations:
            if e.lhs == key:
                return e
        raise KeyError(key)

    def name(self, key: Key) -> str:
        return self.names[key]


class _Builder:
    def __init__(self, spec: FreeProductSpec, symmetry: bool, shortcut: bool, max_order: int, max_unknowns: int):
        self.spec = spec
        self.symmetry = symmetry
        self.shortcut = shortcut
        self.max_unknowns = max_unknowns
        for i, f in enumerate(spec.factors):
            if f.is_infinite:
                continue
            if f.group.order > max_order:
                raise CapacityError(f"factor {i} has order {f.group.order} > {max_order}; the system would be too large")
            if f.group.identity in f.gens.elements:
                raise DomainError(f"factor {i}: identity letters are not supported by the equation system")

    # -- group helpers ---------------------------------------------------
    def ident(self, i: int) -> int:
        f = self.spec.factors[i]
        return 0 if f.is_infinite else f.group.identity

    def gens(self, i: int) -> tuple:
        f = self.spec.factors[i]
        return (1, -1) if f.is_infinite else f.gens.elements

    def inv(self, i: int, a: int) -> int:
        f = self.spec.factors[i]
        return -a if f.is_infinite else f.group.inverse[a]

    def mul(self, i: int, a: int, b: int) -> int:
        f = self.spec.factors[i]
        return a + b if f.is_infinite else f.group.mul[a][b]

    # -- keys --------------------------------------------------------------
    def key(self, tag: tuple, g: int, X) -> Key | None:
        """Canonical key for F[g,X] in factor-copy ``tag``; None when F vanishes."""
        i = tag[0]
        e = self.ident(i)
        X = set(X)
        if self.spec.factors[i].is_infinite:
            pos = [a for a in X if a > 0]
            neg = [a for a in X if a < 0]
            X = ({min(pos)} if pos else set()) | ({max(neg)} if neg else set()) | ({0} & X)
            if g > 0 and pos and min(pos) < g:
                return None
            if g < 0 and neg and max(neg) > g:
                return None
        if g == e and X <= {e}:
            return ONE_KEY if X else ROOT
        if self.symmetry:
            tag = (i,)
            if self.spec.factors[i].is_infinite:
                a = (g, tuple(sorted(X, key=_zsort)))
                b = (-g, tuple(sorted((-x for x in X), key=_zsort)))
                g, xs = min(a, b, key=lambda p: (_zsort(p[0]), [_zsort(x) for x in p[1]]))
                return Key(tag, g, xs)
        return Key(tag, g, tuple(sorted(X, key=_zsort)))

    def copy_of(self, key: Key) -> tuple:
        return (key.tag[0], 0) if len(key.tag) == 1 else key.tag

    def letters(self):
        for let in self.spec.alphabet:
            yield (let.factor, let.copy), let.value

    # -- rules ---------------------------------------------------------------
    def equation(self, key: Key) -> Equation:
        if key == ROOT:
            if not self.spec.alphabet:
                return Equation(key, (Term(1, 0, ()),), "empty alphabet")
            return Equation(key, (Term(1, 0, ()), Term(1, 0, (ROOT, ONE_KEY)), Term(-1, 0, (ROOT,))), RULES[2])
        if key == ONE_KEY:
            terms = [Term(1, 0, ())]
            for tag, s in self.letters():
                k = self.key(tag, self.inv(tag[0], s), {self.inv(tag[0], s)})
                if k is not None:
                    terms.append(Term(1, 1, (k,)))
            return Equation(key, _collect(terms), RULES[3])
        tag = self.copy_of(key)
        i = tag[0]
        e = self.ident(i)
        g, X = key.g, set(key.X)
        S_i = self.gens(i)
        if self.shortcut and self._shortcut_applies(i, g, X):
            x = S_i[0]
            d = self.spec.factors[i].group.order
            a = self.key(tag, e, {x})
            return Equation(key, (Term(1, d - 1, (a,) * (d - 1)),), "first-passage shortcut")
        if g != e and e in X:
            terms = []
            if g in S_i and g in X:
                terms.append(Term(1, 1, ()))
            for s in S_i:
                if s in X:
                    continue
                si = self.inv(i, s)
                k = self.key(tag, self.mul(i, si, g), {self.mul(i, si, a) for a in X})
                if k is not None:
                    terms.append(Term(1, 1, (k,)))
            return Equation(key, _collect(terms), RULES[0])
        if g != e:
            a = self.key(tag, e, X)
            b = self.key(tag, g, X | {e})
            terms = [] if b is None else [Term(1, 0, (a, b))]
            return Equation(key, tuple(terms), RULES[1])
        if e not in X:
            b = self.key(tag, e, X | {e})
            return Equation(key, (Term(1, 0, ()), Term(1, 0, (key, b)), Term(-1, 0, (key,))), RULES[2])
        terms = [Term(1, 0, ())]
        for t2, s in self.letters():
            if t2 == tag:
                continue
            si = self.inv(t2[0], s)
            k = self.key(t2, si, {si})
            if k is not None:
                terms.append(Term(1, 1, (k,)))
        for s in S_i:
            if s in X:
                continue
            si = self.inv(i, s)
            k = self.key(tag, si, {self.mul(i, si, a) for a in X})
            if k is not None:
                terms.append(Term(1, 1, (k,)))
        return Equation(key, _collect(terms), RULES[3])

    def _shortcut_applies(self, i: int, g: int, X: set) -> bool:
        f = self.spec.factors[i]
        if f.is_infinite or len(f.gens.elements) != 1:
            return False
        xi = f.group.inverse[f.gens.elements[0]]
        return g == xi and X == {xi} and f.group.order >= 2

    def build(self) -> list:
        eqs = {}
        order = []
        todo = deque([ROOT])
        seen = {ROOT}
        while todo:
            k = todo.popleft()
            eq = self.equation(k)
            eqs[k] = eq
            order.append(k)
            for term in eq.terms:
                for dep in term.keys:
                    if dep not in seen:
                        seen.add(dep)
                        todo.append(dep)
                        if len(seen) > self.max_unknowns:
                            raise CapacityError(f"more than {self.max_unknowns} unknowns")
        return [eqs[k] for k in order]


def _zsort(a):
    if a is None:
        return (0, 0)
    return (0 if a > 0 else 1 if a == 0 else 2, abs(a))


def _collect(terms: list) -> tuple:
    acc: dict = {}
    for t in terms:
        k = (t.tpow, tuple(sorted(t.keys)))
        acc[k] = acc.get(k, 0) + t.coeff
    return tuple(Term(c, tp, ks) for (tp, ks), c in acc.items() if c)


def build_system(
    spec: FreeProductSpec,
    symmetry: bool = False,
    shortcut: bool = False,
    max_factor_order: int = DEFAULT_MAX_FACTOR_ORDER,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
) -> EquationSystem:
    """Closed system of equations reachable from F[1,{}].

    ``symmetry`` identifies copies of a factor and, for Z factors, F[g,X]
    with F[g^-1,X^-1].  ``shortcut`` replaces F[x^-1,{x^-1}] for a factor
    generated by a single letter x of order d with t^(d-1) F[1,{x}]^(d-1).
    """
    b = _Builder(spec, symmetry, shortcut, max_factor_order, max_unknowns)
    eqs = b.build()
    sys_ = EquationSystem(spec, eqs, symmetry, shortcut)
    sys_.names = {e.lhs: key_name(spec, e.lhs) for e in eqs}
    return sys_


def key_name(spec: FreeProductSpec, key: Key) -> str:
    if key.tag is None:
        return "F[1,{1}]" if key.X else "F[1,{}]"
    i = key.tag[0]
    c = key.tag[1] if len(key.tag) > 1 else 0
    names = [element_name(spec, i, c, a) for a in key.X]
    names.sort(key=lambda n: n != "1")
    return f"F[{element_name(spec, i, c, key.g)},{{{','.join(names)}}}]"


# -- solving -------------------------------------------------------------------

def _mul(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


def _eval_eq(eq: Equation, vals: dict, n: int) -> list:
    out = [0] * (n + 1)
    for term in eq.terms:
        if term.tpow > n:
            continue
        if term.keys:
            p = vals[term.keys[0]]
            for k in term.keys[1:]:
                p = _mul(p, vals[k], n - term.tpow)
        else:
            p = [1]
        for j in range(min(len(p), n + 1 - term.tpow)):
            if p[j]:
                out[j + term.tpow] += term.coeff * p[j]
    return out


def _evaluation_order(sys_: EquationSystem) -> list:
    """Equations ordered so t-free dependencies (other than self) come first."""
    eqs = {e.lhs: e for e in sys_.equations}
    deps = {k: {d for t in e.terms if t.tpow == 0 for d in t.keys if d != k} for k, e in eqs.items()}
    out, state = [], {}

    def visit(k):
        stack = [(k, iter(sorted(deps[k])))]
        state[k] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                state[node] = 2
                out.append(eqs[node])
            elif state.get(nxt) is None:
                state[nxt] = 1
                stack.append((nxt, iter(sorted(deps[nxt]))))
            elif state[nxt] == 1:
                raise InconsistencyError("cyclic t-free dependency in the equation system")

    for e in sys_.equations:
        if e.lhs not in state:
            visit(e.lhs)
    return out


def solve_all(sys_: EquationSystem, N: int) -> dict:
    """Series of every unknown mod t^(N+1), by fixpoint iteration."""
    if N < 0:
        raise DomainError("N must be non-negative")
    order = _evaluation_order(sys_)
    vals = {e.lhs: ([1] + [0] * N) if e.lhs.g is None or _is_one(sys_, e.lhs) else [0] * (N + 1) for e in sys_.equations}
    for _ in range(N + 1):
        for eq in order:
            vals[eq.lhs] = _eval_eq(eq, vals, N)
    for eq in order:
        if _eval_eq(eq, vals, N) != vals[eq.lhs]:
            raise InconsistencyError(f"fixpoint iteration did not converge at {sys_.name(eq.lhs)}")
    return {k: TruncatedSeries(v) for k, v in vals.items()}


def _is_one(sys_: EquationSystem, key: Key) -> bool:
    f = sys_.spec.factors[key.tag[0]]
    return key.g == (0 if f.is_infinite else f.group.identity)


def solve_system_series(sys_: EquationSystem, N: int) -> TruncatedSeries:
    """Series of F[1,{}] mod t^(N+1)."""
    return solve_all(sys_, N)[ROOT]


# -- export ----------------------------------------------------------------------

def _tpow_str(k: int) -> str:
    return "" if k == 0 else "t" if k == 1 else f"t^{k}"


def export_system(sys_: EquationSystem, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(system_to_json(sys_), indent=2)
    if fmt != "text":
        raise DomainError(f"unknown export format {fmt!r}")
    lines = []
    for e in sys_.equations:
        parts = []
        for term in e.terms:
            mono = [_tpow_str(term.tpow)] if term.tpow else []
            mono += [sys_.name(k) for k in term.keys]
            body = "*".join(mono)
            c = term.coeff
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + s)
        rhs = " ".join(parts) if parts else "+ 0"
        rhs = rhs[2:] if rhs.startswith("+ ") else "-" + rhs[2:]
        lines.append(f"{sys_.name(e.lhs)} = {rhs}")
    return "\n".join(lines) + "\n"


def system_to_json(sys_: EquationSystem) -> dict:
    eqs = []
    for e in sys_.equations:
        rhs = []
        for term in e.terms:
            mono = ([_tpow_str(term.tpow)] if term.tpow else []) + [sys_.name(k) for k in term.keys]
            rhs.append([term.coeff, mono])
        eqs.append({"lhs": sys_.name(e.lhs), "rhs": rhs, "rule": e.rule})
    return {"unknowns": [sys_.name(e.lhs) for e in sys_.equations], "root": "F[1,{}]", "equations": eqs}


def series_from_json_system(obj: dict, N: int) -> TruncatedSeries:
    """Solve an exported JSON system (names only) for the root unknown."""
    names = obj["unknowns"]
    index = {nm: Key(("j",), k, ()) for k, nm in enumerate(names)}
    eqs = []
    for e in obj["equations"]:
        terms = []
        for coeff, mono in e["rhs"]:
            tp, ks = 0, []
            for m in mono:
                if m == "t":
                    tp += 1
                elif m.startswith("t^"):
                    tp += int(m[2:])
                else:
                    ks.append(index[m])
            terms.append(Term(int(coeff), tp, tuple(ks)))
        eqs.append(Equation(index[e["lhs"]], tuple(terms), e.get("rule", "")))
    order_sys = EquationSystem(None, eqs)
    order_sys.names = {v: k for k, v in index.items()}
    ones = {index[nm] for nm in names if nm.startswith("F[1,")}
    order = _evaluation_order(order_sys)
    vals = {e.lhs: ([1] + [0] * N) if e.lhs in ones else [0] * (N + 1) for e in eqs}
    for _ in range(N + 2):
        for eq in order:
            vals[eq.lhs] = _eval_eq(eq, vals, N)
    return TruncatedSeries(vals[index[obj.get("root", "F[1,{}]")]])
