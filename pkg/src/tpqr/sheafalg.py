"""The sheaf-side algebra A_C(p,q,r), built from Ext data and monomial products.

Objects are the exceptional collection ``D[X,i]`` (chain sheaves) followed by
``O(0), O(1), O(2)`` (pullbacks of line bundles from the plane).  Morphisms
between the three line bundles are monomials in ``u, v, w``; chain-to-line
bundle morphisms are single generators ``yhat`` that die on monomials divisible
by the chain's killing variable.  Nothing here touches the quiver
presentation, so agreement with :mod:`tpqr.fukaya` is a genuine check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .quiver import BasisElement, GradedQuiverAlgebra, unit_label

CHAINS = ("P", "Q", "R")
VARIABLES = ("u", "v", "w")
# base point of each chain lies on the zero locus of this variable
KILLING_VARIABLE = {"P": "w", "Q": "u", "R": "v"}
# the six degree-two monomials in the order u^2, uv, v^2, vw, w^2, wu
QUADRATIC_ORDER = ("uu", "uv", "vv", "vw", "ww", "uw")


def _check_pqr(p, q, r):
    for v in (p, q, r):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"p, q, r must be positive integers, got {(p, q, r)}")


def chain_object(chain: str, i: int) -> str:
    return f"D[{chain},{i}]"


def line_object(s: int) -> str:
    return f"O({s})"


def sheaf_objects(p: int, q: int, r: int) -> list[str]:
    _check_pqr(p, q, r)
    out = [chain_object(c, i) for c, n in zip(CHAINS, (p, q, r)) for i in range(1, n + 1)]
    return out + [line_object(s) for s in (0, 1, 2)]


def monomials(degree: int) -> list[str]:
    """Monomials as sorted variable strings, e.g. ``"uv"``; degree 2 in the fixed order."""
    if degree == 2:
        return list(QUADRATIC_ORDER)
    return ["".join(m) for m in combinations_with_replacement(VARIABLES, degree)]


def monomial_label(mono: str, s: int, t: int) -> str:
    return f"{mono}[{s},{t}]"


def ehat(chain, i, j):
    return f"ehat^{chain}_{{{i},{j}}}"


def xhat(chain, i, j):
    return f"xhat^{chain}_{{{i},{j}}}"


def yhat(chain, i, s):
    return f"yhat^{chain}_{{{i},{s}}}"


@dataclass(frozen=True)
class _Gen:
    kind: str          # unit | e | x | y | mono
    chain: str = ""
    i: int = 0
    j: int = 0         # target chain index, or target twist for y / mono
    s: int = 0         # source twist for mono
    mono: str = ""


def build_sheaf_algebra(p: int, q: int, r: int) -> GradedQuiverAlgebra:
    """A_C(p,q,r) with the product rules read off from the Ext computations."""
    objs = sheaf_objects(p, q, r)
    elements: list[BasisElement] = []
    info: dict[str, _Gen] = {}

    def add(label, src, tgt, deg, gen):
        elements.append(BasisElement(label, src, tgt, deg))
        info[label] = gen

    for o in objs:
        add(unit_label(o), o, o, 0, _Gen("unit"))
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                add(ehat(chain, i, j), chain_object(chain, i), chain_object(chain, j), 0, _Gen("e", chain, i, j))
                add(xhat(chain, i, j), chain_object(chain, i), chain_object(chain, j), 1, _Gen("x", chain, i, j))
            for s in (0, 1, 2):
                add(yhat(chain, i, s), chain_object(chain, i), line_object(s), 0, _Gen("y", chain, i, s))
    for s, t in ((0, 1), (1, 2), (0, 2)):
        for m in monomials(t - s):
            add(monomial_label(m, s, t), line_object(s), line_object(t), 0, _Gen("mono", j=t, s=s, mono=m))

    def product(f: str, g: str) -> str | None:
        a, b = info[f], info[g]
        if a.kind == "unit":
            return g
        if b.kind == "unit":
            return f
        if a.kind == "mono":
            mono = "".join(sorted(a.mono + b.mono))
            return monomial_label(mono, a.s, b.j)
        if a.kind == "y":
            if KILLING_VARIABLE[a.chain] in b.mono:
                return None
            return yhat(a.chain, a.i, b.j)
        if a.kind == "x":
            return None if b.kind in ("x", "y") else xhat(a.chain, a.i, b.j)
        # a is ehat
        if b.kind == "y":
            return yhat(b.chain, a.i, b.j)
        return (ehat if b.kind == "e" else xhat)(a.chain, a.i, b.j)

    by_src: dict[str, list[str]] = {}
    for e in elements:
        by_src.setdefault(e.source, []).append(e.label)
    mult = {}
    for e in elements:
        for g in by_src.get(e.target, ()):
            h = product(e.label, g)
            if h is not None:
                mult[e.label, g] = {h: Fraction(1)}
    return GradedQuiverAlgebra(objs, elements, mult)


def annihilated_quadratics(chain: str) -> list[str]:
    """Degree-two monomials m with yhat^chain * m = 0."""
    alg = build_sheaf_algebra(1, 1, 1)
    y = yhat(chain, 1, 0)
    return [m for m in QUADRATIC_ORDER if not alg.multiply(y, monomial_label(m, 0, 2))]


# --- restriction to the anticanonical cycle --------------------------------

SKYSCRAPERS = {"P": "s1", "Q": "s2", "R": "s3"}


@dataclass(frozen=True)
class LineBundleOnCycle:
    multidegree: tuple[int, int, int]
    parameter: Fraction

    def __str__(self):
        return f"O_D{self.multidegree}@{self.parameter}"


@dataclass(frozen=True)
class SkyscraperResolution:
    point: str

    def __str__(self):
        return f"{{O_D(-{self.point}) -> O_D}}"


def restriction_images(p: int, q: int, r: int) -> dict[str, LineBundleOnCycle | SkyscraperResolution]:
    """Image of each exceptional object under restriction to the cycle D."""
    out: dict = {}
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            out[chain_object(chain, i)] = SkyscraperResolution(SKYSCRAPERS[chain])
    for s in (0, 1, 2):
        out[line_object(s)] = LineBundleOnCycle((s, s, s), Fraction(1))
    return out


FIBER_SHEAF_OBJECTS = ("s1", "s2", "s3", "O_D")


def fiber_sheaf_dims() -> dict[tuple[str, str], dict[int, int]]:
    """Graded Ext dimensions between the generators of the fibre category."""
    table: dict[tuple[str, str], dict[int, int]] = {}
    for a in FIBER_SHEAF_OBJECTS:
        for b in FIBER_SHEAF_OBJECTS:
            if a == b:
                table[a, b] = {0: 1, 1: 1}
            elif a == "O_D":
                table[a, b] = {0: 1}
            elif b == "O_D":
                table[a, b] = {1: 1}
            else:
                table[a, b] = {}
    return table


def fiber_sheaf_euler(a: str, b: str) -> int:
    return sum((-1) ** (d % 2) * k for d, k in fiber_sheaf_dims()[a, b].items())
