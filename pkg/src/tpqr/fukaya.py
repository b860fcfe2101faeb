"""The directed algebra A_F(p,q,r) of the vanishing cycles and its fibre data.

Objects, in order: ``P1..Pp, Q1..Qq, R1..Rr, E1, E2, E3``.  The algebra is the
path algebra of the quiver

    Xi --e^X_{i,i+1}, x^X_{i,i+1}--> X(i+1)       (x in degree 1)
    Xn --y^X_{n,1}--> E1
    E1 --a_1, a_2, a_3--> E2 --c_1, c_2, c_3--> E3

modulo the relations listed in :func:`quiver_relations`, written in a basis
carrying the intersection-point names ``e^P_{i,j}``, ``x^P_{i,j}``,
``y^P_{i,k}``, ``a_i``, ``b_i``, ``b_{i,j}``, ``c_i``.

The generator ``x^X_{i,j}`` is normalised as ``(-1)^(i+1) x_{i,i+1} e ... e``;
with this sign both ``e*x`` and ``x*e`` equal ``+x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .lattice import IntMatrix, SingularMatrix, is_upper_unitriangular, rational_inverse, integral_rows
from .quiver import (Arrow, GradedQuiverAlgebra, Quiver, Relation, build_algebra,
                     unit_label)

CHAINS = ("P", "Q", "R")
# chain -> index i of the a_i killed by y^X (P: w, Q: u, R: v)
KILLED = {"P": 3, "Q": 1, "R": 2}
# a_i <-> u, v, w
VARIABLES = ("u", "v", "w")
# b labels <-> degree-two monomials as exponent vectors in (u, v, w)
B_MONOMIALS = {
    "b_1": (2, 0, 0), "b_{1,2}": (1, 1, 0), "b_2": (0, 2, 0),
    "b_{2,3}": (0, 1, 1), "b_3": (0, 0, 2), "b_{3,1}": (1, 0, 1),
}
# paths a_i c_j representing each b
B_PATHS = {
    "b_1": ("a_1", "c_1"), "b_{1,2}": ("a_1", "c_2"), "b_2": ("a_2", "c_2"),
    "b_{2,3}": ("a_2", "c_3"), "b_3": ("a_3", "c_3"), "b_{3,1}": ("a_3", "c_1"),
}


def _check_pqr(p, q, r):
    for v in (p, q, r):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"p, q, r must be positive integers, got {(p, q, r)}")


def fukaya_objects(p: int, q: int, r: int) -> list[str]:
    _check_pqr(p, q, r)
    out = []
    for chain, n in zip(CHAINS, (p, q, r)):
        out.extend(f"{chain}{i}" for i in range(1, n + 1))
    return out + ["E1", "E2", "E3"]


def e_label(chain, i, j):
    return f"e^{chain}_{{{i},{j}}}"


def x_label(chain, i, j):
    return f"x^{chain}_{{{i},{j}}}"


def y_label(chain, i, k):
    return f"y^{chain}_{{{i},{k}}}"


def allowed_a(chain: str) -> tuple[int, int]:
    """The two a_i with nonzero product against y^chain, in cyclic order."""
    k = KILLED[chain]
    return (k % 3 + 1, (k + 1) % 3 + 1)


def fukaya_quiver(p: int, q: int, r: int) -> Quiver:
    objs = fukaya_objects(p, q, r)
    arrows = []
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n):
            arrows.append(Arrow(f"{chain}{i}", f"{chain}{i + 1}", 0, e_label(chain, i, i + 1)))
            arrows.append(Arrow(f"{chain}{i}", f"{chain}{i + 1}", 1, x_label(chain, i, i + 1)))
        arrows.append(Arrow(f"{chain}{n}", "E1", 0, y_label(chain, n, 1)))
    arrows += [Arrow("E1", "E2", 0, f"a_{i}") for i in (1, 2, 3)]
    arrows += [Arrow("E2", "E3", 0, f"c_{i}") for i in (1, 2, 3)]
    return Quiver(tuple(objs), tuple(arrows))


def quiver_relations(p: int, q: int, r: int) -> list[Relation]:
    Q = fukaya_quiver(p, q, r)
    rels = []
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n - 1):
            xi, ei = x_label(chain, i, i + 1), e_label(chain, i, i + 1)
            xj, ej = x_label(chain, i + 1, i + 2), e_label(chain, i + 1, i + 2)
            rels.append(Relation.of(Q, {(xi, ej): 1, (ei, xj): 1}))
            rels.append(Relation.of(Q, {(xi, xj): 1}))
        y = y_label(chain, n, 1)
        if n >= 2:
            rels.append(Relation.of(Q, {(x_label(chain, n - 1, n), y): 1}))
        k = KILLED[chain]
        s, t = allowed_a(chain)
        rels.append(Relation.of(Q, {(y, f"a_{k}"): 1}))
        rels.append(Relation.of(Q, {(y, f"a_{s}"): 1, (y, f"a_{t}"): -1}))
    for i in (1, 2, 3):
        j = i % 3 + 1
        rels.append(Relation.of(Q, {(f"a_{i}", f"c_{j}"): 1, (f"a_{j}", f"c_{i}"): -1}))
    return rels


def _chain_e_path(chain, i, j):
    return tuple(e_label(chain, k, k + 1) for k in range(i, j))


def named_basis(p: int, q: int, r: int) -> dict:
    """Representatives (as signed paths) of the intersection-point basis."""
    out: dict = {}
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                epath = _chain_e_path(chain, i, j)
                xpath = (x_label(chain, i, i + 1),) + _chain_e_path(chain, i + 1, j)
                out[f"{chain}{i}", f"{chain}{j}"] = [
                    (e_label(chain, i, j), {epath: 1}),
                    (x_label(chain, i, j), {xpath: (-1) ** (i + 1)}),
                ]
            to_e1 = _chain_e_path(chain, i, n) + (y_label(chain, n, 1),)
            s = allowed_a(chain)[0]
            out[f"{chain}{i}", "E1"] = [(y_label(chain, i, 1), {to_e1: 1})]
            out[f"{chain}{i}", "E2"] = [(y_label(chain, i, 2), {to_e1 + (f"a_{s}",): 1})]
            out[f"{chain}{i}", "E3"] = [(y_label(chain, i, 3), {to_e1 + (f"a_{s}", f"c_{s}"): 1})]
    out["E1", "E2"] = [(f"a_{i}", {(f"a_{i}",): 1}) for i in (1, 2, 3)]
    out["E2", "E3"] = [(f"c_{i}", {(f"c_{i}",): 1}) for i in (1, 2, 3)]
    out["E1", "E3"] = [(b, {path: 1}) for b, path in B_PATHS.items()]
    return out


def build_directed_algebra(p: int, q: int, r: int) -> GradedQuiverAlgebra:
    """A_F(p,q,r) as a quotient of the quiver path algebra."""
    _check_pqr(p, q, r)
    alg = build_algebra(fukaya_quiver(p, q, r), quiver_relations(p, q, r), named_basis(p, q, r))
    if not alg.is_integral():
        raise AssertionError("structure constants of A_F are expected to be integers")
    return alg


def expected_dim_table(p: int, q: int, r: int) -> dict[tuple[str, str], dict[int, int]]:
    """Closed-form graded dimensions of every nonzero hom space."""
    objs = fukaya_objects(p, q, r)
    table: dict[tuple[str, str], dict[int, int]] = {(o, o): {0: 1} for o in objs}
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                table[f"{chain}{i}", f"{chain}{j}"] = {0: 1, 1: 1}
            for k in (1, 2, 3):
                table[f"{chain}{i}", f"E{k}"] = {0: 1}
    table["E1", "E2"] = {0: 3}
    table["E2", "E3"] = {0: 3}
    table["E1", "E3"] = {0: 6}
    return {k: table[k] for k in sorted(table, key=lambda k: (objs.index(k[0]), objs.index(k[1])))}


def expected_total_dim(p: int, q: int, r: int) -> int:
    return (p + q + r + 3) + 2 * (comb(p, 2) + comb(q, 2) + comb(r, 2)) + 3 * (p + q + r) + 12


def coxeter_matrix(chi: IntMatrix) -> IntMatrix:
    """The matrix S with chi(x, y) = chi(y, S x) for all x, y.

    Writing chi(x, y) = x^T G y this is S = G^{-1} G^T.
    """
    if not chi.is_square():
        raise SingularMatrix("Euler matrix must be square")
    inv = rational_inverse([[Fraction(v) for v in row] for row in chi.tolist()])
    gt = chi.transpose().tolist()
    n = chi.rows
    rows = [[sum(inv[i][k] * gt[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return IntMatrix.from_rows(integral_rows(rows))


def antisymmetrized_euler(chi: IntMatrix) -> IntMatrix:
    """chi_B(X, Y) = chi_A(X, Y) - chi_A(Y, X)."""
    return chi - chi.transpose()


# --- fibre category B+ ------------------------------------------------------

def dual_label(label: str) -> str:
    return f"({label})^v"


@dataclass
class BimoduleModel:
    """Associated graded A (+) A^v[-1] of the fibre category B+ over A.

    ``hom_B(X, Y)`` has basis ``("A", m)`` for ``m`` in ``hom_A(X, Y)`` and
    ``("dual", n)`` for ``n`` in ``hom_A(Y, X)``; the latter sits in degree
    ``1 - |n|``.
    """

    algebra: GradedQuiverAlgebra
    objects: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        self.objects = self.algebra.objects

    def basis(self, x: str, y: str) -> list[tuple[str, str, int]]:
        alg = self.algebra
        out = [("A", m, alg.elements[m].degree) for m in alg.basis(x, y)]
        out += [("dual", n, 1 - alg.elements[n].degree) for n in alg.basis(y, x)]
        return out

    def graded_dims(self, x: str, y: str) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, _, d in self.basis(x, y):
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def euler(self, x: str, y: str) -> int:
        return sum((-1) ** (d % 2) * k for d, k in self.graded_dims(x, y).items())

    def left_action(self, a: str, elem: tuple[str, str]) -> dict[tuple[str, str], Fraction]:
        """``a * elem`` for ``a`` in hom_A(X', X) and ``elem`` in hom_B(X, Y)."""
        alg = self.algebra
        kind, m = elem
        xa, x = alg.elements[a].source, alg.elements[a].target
        if kind == "A":
            if alg.elements[m].source != x:
                raise ValueError("not composable")
            return {("A", k): c for k, c in alg.multiply(a, m).items()}
        # m in hom_A(Y, X); (a . m^v)(n) = m^v(n * a) for n in hom_A(Y, X')
        y = alg.elements[m].source
        if alg.elements[m].target != x:
            raise ValueError("not composable")
        out = {}
        for n in alg.basis(y, xa):
            c = alg.multiply(n, a).get(m, 0)
            if c:
                out["dual", n] = Fraction(c)
        return out

    def right_action(self, elem: tuple[str, str], b: str) -> dict[tuple[str, str], Fraction]:
        """``elem * b`` for ``elem`` in hom_B(X, Y) and ``b`` in hom_A(Y, Y')."""
        alg = self.algebra
        kind, m = elem
        y, yb = alg.elements[b].source, alg.elements[b].target
        if kind == "A":
            if alg.elements[m].target != y:
                raise ValueError("not composable")
            return {("A", k): c for k, c in alg.multiply(m, b).items()}
        # m in hom_A(Y, X); (m^v . b)(n) = m^v(b * n) for n in hom_A(Y', X)
        x = alg.elements[m].target
        if alg.elements[m].source != y:
            raise ValueError("not composable")
        out = {}
        for n in alg.basis(yb, x):
            c = alg.multiply(b, n).get(m, 0)
            if c:
                out["dual", n] = Fraction(c)
        return out


def build_fiber_bimodule(p: int, q: int, r: int, algebra: GradedQuiverAlgebra | None = None) -> BimoduleModel:
    return BimoduleModel(algebra if algebra is not None else build_directed_algebra(p, q, r))


# --- restriction to the fibre ---------------------------------------------

FIBER_OBJECTS = ("P", "Q", "R", "E", "E'", "E''")
_E_IMAGES = {"E1": "E", "E2": "E'", "E3": "E''"}


def fiber_object(obj: str) -> str:
    if obj in _E_IMAGES:
        return _E_IMAGES[obj]
    return obj[0]


def fiber_generators() -> dict[str, tuple[str, str, int]]:
    """Generators of hom_B between the fibre images that A_F maps onto."""
    gens: dict[str, tuple[str, str, int]] = {}
    for o in FIBER_OBJECTS:
        gens[f"e^{o}"] = (o, o, 0)
    for chain in CHAINS:
        gens[f"x^{chain}"] = (chain, chain, 1)
        for k in (1, 2, 3):
            gens[f"y^{chain}_{k}"] = (chain, FIBER_OBJECTS[2 + k], 0)
    for i in (1, 2, 3):
        gens[f"a_{i}"] = ("E", "E'", 0)
        gens[f"c_{i}"] = ("E'", "E''", 0)
    for b in B_MONOMIALS:
        gens[b] = ("E", "E''", 0)
    return gens


def _monomial_of(gen: str) -> tuple[int, int, int] | None:
    if gen in B_MONOMIALS:
        return B_MONOMIALS[gen]
    if gen[:2] in ("a_", "c_"):
        i = int(gen[2])
        return tuple(int(k == i - 1) for k in range(3))
    return None


def fiber_product(g: str, h: str) -> dict[str, int]:
    """Product of two fibre generators (diagrammatic order), by the geometric rules.

    Units act trivially; ``x*x = 0`` and ``x*y = 0``; ``y^X * m`` vanishes when
    the monomial ``m`` is divisible by the variable attached to ``X`` and is
    the generator of the target otherwise; ``a*c`` multiplies monomials.
    """
    gens = fiber_generators()
    if gens[g][1] != gens[h][0]:
        raise ValueError(f"{g} and {h} are not composable")
    if g.startswith("e^"):
        return {h: 1}
    if h.startswith("e^"):
        return {g: 1}
    if g.startswith("x^"):
        return {}
    if g.startswith("y^"):
        chain, k = g[2], int(g[-1])
        mono = _monomial_of(h)
        if mono[KILLED[chain] - 1]:
            return {}
        return {f"y^{chain}_{k + sum(mono)}": 1}
    ma, mc = _monomial_of(g), _monomial_of(h)
    prod = tuple(s + t for s, t in zip(ma, mc))
    return {next(b for b, m in B_MONOMIALS.items() if m == prod): 1}


@dataclass
class RestrictionFunctor:
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def apply(self, vec: dict[str, Fraction]) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for l, c in vec.items():
            g = self.morphism_map[l]
            out[g] = out.get(g, 0) + c
        return {g: c for g, c in out.items() if c}


def restrict_to_fiber(p: int, q: int, r: int) -> RestrictionFunctor:
    """The cohomology-level restriction c_Fuk: A_F -> B_F on objects and basis."""
    objs = fukaya_objects(p, q, r)
    object_map = {o: fiber_object(o) for o in objs}
    morph = {}
    for o in objs:
        morph[unit_label(o)] = f"e^{object_map[o]}"
    for chain, n in zip(CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                morph[e_label(chain, i, j)] = f"e^{chain}"
                morph[x_label(chain, i, j)] = f"x^{chain}"
            for k in (1, 2, 3):
                morph[y_label(chain, i, k)] = f"y^{chain}_{k}"
    for i in (1, 2, 3):
        morph[f"a_{i}"] = f"a_{i}"
        morph[f"c_{i}"] = f"c_{i}"
    for b in B_MONOMIALS:
        morph[b] = b
    return RestrictionFunctor(object_map, morph)


def check_functor(alg: GradedQuiverAlgebra, functor: RestrictionFunctor,
                  product=fiber_product) -> list[tuple[str, str]]:
    """Composable basis pairs (f, g) with F(f*g) != F(f)*F(g)."""
    bad = []
    for f, g in alg.composable_pairs():
        lhs = functor.apply(alg.multiply(f, g))
        rhs = product(functor.morphism_map[f], functor.morphism_map[g])
        if lhs != {k: Fraction(v) for k, v in rhs.items()}:
            bad.append((f, g))
    return bad


def euler_is_directed(alg: GradedQuiverAlgebra) -> bool:
    from .quiver import euler_matrix
    return is_upper_unitriangular(euler_matrix(alg))
