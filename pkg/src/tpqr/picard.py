"""Picard lattice, Chern characters and the Riemann-Roch pairing on Y_{p,q,r}.

Y_{p,q,r} is the plane blown up ``p``, ``q`` and ``r`` times in infinitely
near points over three collinear points, one on each toric boundary line.
Pic has the orthogonal basis

    l ; f^P_1 .. f^P_p ; f^Q_1 .. f^Q_q ; f^R_1 .. f^R_r

with ``l.l = 1`` and ``f.f = -1``.  ``f^X_i`` is the total transform of the
exceptional curve labelled ``E_{X,i}`` (``E_{X,p}`` is blown up first, so
``f^X_i = Et_{X,i} + ... + Et_{X,2} + E_{X,1}``).

A K-class is stored as ``(rank, c1, 2*ch2)``; doubling ch2 keeps everything
integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .lattice import IntMatrix, SingularMatrix, integral_rows, rational_inverse

CHAINS = ("P", "Q", "R")


class ConfigurationMismatch(ValueError):
    """Classes from different (p, q, r) were combined."""


class BasisDegeneracy(RuntimeError):
    pass


def _check_pqr(p, q, r):
    for v in (p, q, r):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"p, q, r must be positive integers, got {(p, q, r)}")


def chain_lengths(pqr) -> dict[str, int]:
    return dict(zip(CHAINS, pqr))


def basis_index(pqr, chain: str | None = None, i: int = 0) -> int:
    """Position of ``l`` (chain None) or ``f^chain_i`` in the Pic basis."""
    if chain is None:
        return 0
    lengths = chain_lengths(pqr)
    if not 1 <= i <= lengths[chain]:
        raise IndexError(f"f^{chain}_{i} out of range for {pqr}")
    offset = 1
    for c in CHAINS:
        if c == chain:
            return offset + i - 1
        offset += lengths[c]
    raise KeyError(chain)


@dataclass(frozen=True)
class DivisorClass:
    pqr: tuple[int, int, int]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != 1 + sum(self.pqr):
            raise ConfigurationMismatch("coefficient vector has the wrong length")

    @classmethod
    def zero(cls, pqr) -> "DivisorClass":
        return cls(tuple(pqr), (0,) * (1 + sum(pqr)))

    @classmethod
    def basis(cls, pqr, chain: str | None = None, i: int = 0) -> "DivisorClass":
        v = [0] * (1 + sum(pqr))
        v[basis_index(pqr, chain, i)] = 1
        return cls(tuple(pqr), tuple(v))

    def _same(self, other):
        if not isinstance(other, DivisorClass) or other.pqr != self.pqr:
            raise ConfigurationMismatch(f"classes over {self.pqr} and "
                                        f"{getattr(other, 'pqr', None)} cannot be combined")

    def __add__(self, other):
        self._same(other)
        return DivisorClass(self.pqr, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._same(other)
        return DivisorClass(self.pqr, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return DivisorClass(self.pqr, tuple(-a for a in self.coefficients))

    def __mul__(self, k: int):
        return DivisorClass(self.pqr, tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        return intersection(self, other)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def intersection(a: DivisorClass, b: DivisorClass) -> int:
    a._same(b)
    ca, cb = a.coefficients, b.coefficients
    return ca[0] * cb[0] - sum(x * y for x, y in zip(ca[1:], cb[1:]))


def intersection_matrix(pqr) -> IntMatrix:
    n = 1 + sum(pqr)
    return IntMatrix.diag([1] + [-1] * (n - 1))


def hyperplane(pqr) -> DivisorClass:
    return DivisorClass.basis(pqr)


def total_transform(pqr, chain: str, i: int) -> DivisorClass:
    return DivisorClass.basis(pqr, chain, i)


def canonical_class(pqr) -> DivisorClass:
    n = 1 + sum(pqr)
    return DivisorClass(tuple(pqr), (-3,) + (1,) * (n - 1))


def named_classes(p: int, q: int, r: int) -> dict[str, DivisorClass]:
    """Curves of the configuration on Y_{p,q,r}, in a fixed key order.

    Keys: ``l``, ``K``, ``D``, ``D1``..``D3`` (boundary cycle components over
    w=0, u=0, v=0), ``Htilde`` (strict transform of the line through the three
    points), ``E[X,1]`` (the -1 curve ending chain X) and ``Etilde[X,i]`` for
    ``2 <= i <= len(X)``.  For a chain of length one there are no ``Etilde``.
    """
    _check_pqr(p, q, r)
    pqr = (p, q, r)
    lengths = chain_lengths(pqr)
    l = hyperplane(pqr)
    out: dict[str, DivisorClass] = {"l": l, "K": canonical_class(pqr)}
    comps = []
    for k, chain in enumerate(CHAINS, start=1):
        d = l
        for i in range(1, lengths[chain] + 1):
            d = d - total_transform(pqr, chain, i)
        out[f"D{k}"] = d
        comps.append(d)
    out["D"] = comps[0] + comps[1] + comps[2]
    h = l
    for chain in CHAINS:
        h = h - total_transform(pqr, chain, lengths[chain])
    out["Htilde"] = h
    for chain in CHAINS:
        out[f"E[{chain},1]"] = total_transform(pqr, chain, 1)
        for i in range(2, lengths[chain] + 1):
            out[f"Etilde[{chain},{i}]"] = (total_transform(pqr, chain, i)
                                            - total_transform(pqr, chain, i - 1))
    return out


def boundary_component(chain: str) -> str:
    """Name of the component of D containing chain ``chain``'s base point."""
    return {"P": "D1", "Q": "D2", "R": "D3"}[chain]


# --- K-theory -----------------------------------------------------------------

@dataclass(frozen=True)
class ChernCharacter:
    rank: int
    c1: DivisorClass
    ch2_doubled: int

    @property
    def pqr(self):
        return self.c1.pqr

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank + other.rank, self.c1 + other.c1,
                              self.ch2_doubled + other.ch2_doubled)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank - other.rank, self.c1 - other.c1,
                              self.ch2_doubled - other.ch2_doubled)

    def __neg__(self):
        return ChernCharacter(-self.rank, -self.c1, -self.ch2_doubled)

    def __mul__(self, k: int) -> "ChernCharacter":
        return ChernCharacter(k * self.rank, self.c1 * k, k * self.ch2_doubled)

    __rmul__ = __mul__

    def vector(self) -> tuple[int, ...]:
        return (self.rank,) + self.c1.coefficients + (self.ch2_doubled,)

    @classmethod
    def from_vector(cls, pqr, v) -> "ChernCharacter":
        v = tuple(v)
        return cls(v[0], DivisorClass(tuple(pqr), tuple(v[1:-1])), v[-1])

    def twist(self, L: DivisorClass) -> "ChernCharacter":
        """ch(E (x) O(L)) = ch(E) * exp(L)."""
        return ChernCharacter(self.rank, self.c1 + L * self.rank,
                              self.ch2_doubled + 2 * intersection(self.c1, L)
                              + self.rank * intersection(L, L))

    def is_parity_consistent(self) -> bool:
        """Integrality of ch2 + c1.(-K)/2 (i.e. of chi(O, E))."""
        return (self.ch2_doubled - intersection(self.c1, canonical_class(self.pqr))) % 2 == 0


def line_bundle_character(L: DivisorClass) -> ChernCharacter:
    return ChernCharacter(1, L, intersection(L, L))


def curve_sheaf_character(C: DivisorClass, degree: int = 0) -> ChernCharacter:
    """ch(i_* O_C(degree)) for a smooth rational curve C (from O(-C) -> O)."""
    return ChernCharacter(0, C, 2 * degree - intersection(C, C))


@dataclass(frozen=True, order=True)
class ChainSheaf:
    chain: str
    index: int

    def __str__(self):
        return f"D[{self.chain},{self.index}]"


@dataclass(frozen=True, order=True)
class LineBundle:
    s: int

    def __str__(self):
        return f"O({self.s})"


ObjectId = Union[ChainSheaf, LineBundle]


def exceptional_objects(p: int, q: int, r: int) -> list[ObjectId]:
    """D[P,1..p], D[Q,1..q], D[R,1..r], O(0), O(1), O(2)."""
    _check_pqr(p, q, r)
    out: list[ObjectId] = []
    for chain, n in zip(CHAINS, (p, q, r)):
        out.extend(ChainSheaf(chain, i) for i in range(1, n + 1))
    out.extend(LineBundle(s) for s in range(3))
    return out


def resolution_class(pqr, chain: str, j: int, auxiliary: DivisorClass | None = None) -> ChernCharacter:
    """K-class of the two-term complex O(-F - C) -> O(-F), C = f^chain_j.

    ``auxiliary`` is the divisor F; by default the next strict transform
    (or Htilde at the end of the chain).  The class depends on F only through
    F.C, which is 1 for every admissible choice.
    """
    names = named_classes(*pqr)
    n = chain_lengths(pqr)[chain]
    if auxiliary is None:
        auxiliary = names[f"Etilde[{chain},{j + 1}]"] if j < n else names["Htilde"]
    C = total_transform(pqr, chain, j)
    return line_bundle_character(-auxiliary) - line_bundle_character(-auxiliary - C)


def chern_character(obj: ObjectId, p: int, q: int, r: int) -> ChernCharacter:
    """K-class of an object of the exceptional sequence.

    Line bundles pull back from the plane.  The chain objects are the
    resolution complexes placed one step to the right (K-class negated), so
    that their pairing with the line bundles is concentrated in degree zero.
    """
    pqr = (p, q, r)
    _check_pqr(*pqr)
    if isinstance(obj, LineBundle):
        if obj.s not in (0, 1, 2):
            raise ValueError(f"line bundle twist must be 0, 1 or 2, got {obj.s}")
        return line_bundle_character(hyperplane(pqr) * obj.s)
    if isinstance(obj, ChainSheaf):
        if obj.chain not in CHAINS or not 1 <= obj.index <= chain_lengths(pqr)[obj.chain]:
            raise ValueError(f"no object {obj} on Y{pqr}")
        return -resolution_class(pqr, obj.chain, obj.index)
    raise TypeError(f"unknown object id {obj!r}")


def euler_pairing(e: ChernCharacter, f: ChernCharacter) -> int:
    """chi(E, F) = sum (-1)^i dim Ext^i(E, F) by Riemann-Roch.

    chi(E, F) = rE rF + c(E, F).(-K)/2 + (rE ch2F + rF ch2E - c1E.c1F)
    with c(E, F) = rE c1F - rF c1E and Todd class 1 - K/2 + [pt].
    """
    e.c1._same(f.c1)
    minus_k = -canonical_class(e.pqr)
    twice = ((e.c1 * -f.rank + f.c1 * e.rank).dot(minus_k)
             + e.rank * f.ch2_doubled + f.rank * e.ch2_doubled)
    if twice % 2:
        raise ValueError("Riemann-Roch pairing is not integral; inconsistent Chern characters")
    return e.rank * f.rank + twice // 2 - intersection(e.c1, f.c1)


def exceptional_characters(p: int, q: int, r: int) -> list[ChernCharacter]:
    return [chern_character(o, p, q, r) for o in exceptional_objects(p, q, r)]


def riemann_roch_matrix(p: int, q: int, r: int) -> IntMatrix:
    chs = exceptional_characters(p, q, r)
    return IntMatrix.from_rows([[euler_pairing(a, b) for b in chs] for a in chs])


def character_basis_matrix(p: int, q: int, r: int) -> IntMatrix:
    """Columns are the vectors of the exceptional characters."""
    return IntMatrix.from_rows(list(zip(*[c.vector() for c in exceptional_characters(p, q, r)])))


def coordinates(ch: ChernCharacter) -> tuple[int, ...]:
    """Coordinates of ``ch`` in the exceptional basis (integral for genuine classes)."""
    p, q, r = ch.pqr
    m = character_basis_matrix(p, q, r)
    inv = rational_inverse([[Fraction(x) for x in row] for row in m.tolist()])
    v = ch.vector()
    out = [sum(a * b for a, b in zip(row, v)) for row in inv]
    return tuple(integral_rows([out])[0])


def twist_matrix(L: DivisorClass, p: int, q: int, r: int) -> IntMatrix:
    """Matrix of [E] -> [E (x) O(L)] in the exceptional basis (column convention)."""
    pqr = (p, q, r)
    if L.pqr != pqr:
        raise ConfigurationMismatch(f"class over {L.pqr} twisted on Y{pqr}")
    m = character_basis_matrix(p, q, r)
    try:
        inv = rational_inverse([[Fraction(x) for x in row] for row in m.tolist()])
    except SingularMatrix as exc:
        raise BasisDegeneracy("exceptional characters do not span K_0 (x) Q") from exc
    twisted_cols = [ch.twist(L).vector() for ch in exceptional_characters(p, q, r)]
    cols = [[sum(a * b for a, b in zip(row, v)) for row in inv] for v in twisted_cols]
    rows = [list(x) for x in zip(*cols)]
    try:
        return IntMatrix.from_rows(integral_rows(rows))
    except ValueError as exc:
        raise BasisDegeneracy("twist is not integral in the exceptional basis") from exc
