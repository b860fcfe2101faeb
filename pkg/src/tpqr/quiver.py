"""Graded path algebras of directed, loop-free quivers and their quotients.

Composition is diagrammatic: for ``f: X -> Y`` and ``g: Y -> Z`` the product
``f * g`` is a morphism ``X -> Z`` and corresponds to the concatenated path
``f`` then ``g``.

The quotient by a homogeneous two-sided ideal is computed one target object
at a time.  For a fixed source ``s`` the objects are visited in order, and
``A(s, t)`` is presented as the span of ``b * alpha`` (``b`` a basis element
of ``A(s, t')``, ``alpha: t' -> t`` an arrow) modulo ``u * rel`` for every
relation ending at ``t``.  Every element of the ideal is of one of these two
forms, so nothing is enumerated path by path.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lattice import IntMatrix, rational_inverse, row_reduce


class InconsistentGrading(ValueError):
    pass


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    degree: int
    label: str


@dataclass(frozen=True)
class Quiver:
    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        pos = {o: i for i, o in enumerate(self.objects)}
        if len(pos) != len(self.objects):
            raise QuiverError("duplicate object labels")
        labels = set()
        for a in self.arrows:
            if a.source not in pos or a.target not in pos:
                raise QuiverError(f"arrow {a.label} has an unknown endpoint")
            if pos[a.source] >= pos[a.target]:
                raise QuiverError(f"arrow {a.label} is not directed forward")
            if a.label in labels:
                raise QuiverError(f"duplicate arrow label {a.label}")
            labels.add(a.label)

    def index(self, obj: str) -> int:
        return self.objects.index(obj)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_into(self, target: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == target]

    def reversed_arrows(self) -> "Quiver":
        return Quiver(self.objects, tuple(reversed(self.arrows)))

    def path_degree(self, path: Sequence[str]) -> int:
        return sum(self.arrow(l).degree for l in path)

    def path_endpoints(self, path: Sequence[str]) -> tuple[str, str]:
        arrows = [self.arrow(l) for l in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise QuiverError(f"path {'.'.join(path)} is not composable")
        return arrows[0].source, arrows[-1].target


@dataclass(frozen=True)
class Relation:
    """A homogeneous rational combination of paths from ``source`` to ``target``."""

    source: str
    target: str
    terms: tuple[tuple[tuple[str, ...], Fraction], ...]

    @classmethod
    def of(cls, quiver: Quiver, terms: Mapping[Sequence[str], int | Fraction] | Sequence):
        if isinstance(terms, Mapping):
            items = list(terms.items())
        else:
            items = list(terms)
        items = [(tuple(p), Fraction(c)) for p, c in items if c]
        if not items:
            raise QuiverError("empty relation")
        ends = {quiver.path_endpoints(p) for p, _ in items}
        if len(ends) != 1:
            raise QuiverError("relation terms have different endpoints")
        degrees = {quiver.path_degree(p) for p, _ in items}
        if len(degrees) != 1:
            raise InconsistentGrading(f"relation mixes degrees {sorted(degrees)}")
        (src, tgt), = ends
        return cls(src, tgt, tuple(items))


def path_space(quiver: Quiver, src: str, tgt: str) -> list[tuple[str, ...]]:
    """All directed paths from ``src`` to ``tgt``; the empty path is the unit."""
    if quiver.index(src) > quiver.index(tgt):
        return []
    out: list[tuple[str, ...]] = []

    def extend(node, path):
        if node == tgt:
            out.append(path)
            return
        for a in quiver.arrows:
            if a.source == node and quiver.index(a.target) <= quiver.index(tgt):
                extend(a.target, path + (a.label,))

    extend(src, ())
    return out


@dataclass
class QuotientSpace:
    """Basis of ``A(src, tgt)`` together with the reduction of paths onto it."""

    source: str
    target: str
    basis: list[tuple[str, ...]]          # representative paths
    degrees: list[int]
    # generator (basis index in A(src, t'), arrow label) -> coordinates here
    _gens: dict[tuple[int, str], dict[int, Fraction]] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


class PathQuotient:
    """All hom spaces of ``kQ / (relations)`` for a directed quiver."""

    def __init__(self, quiver: Quiver, relations: Iterable[Relation] = ()):
        self.quiver = quiver
        self.relations = tuple(relations)
        self._spaces: dict[tuple[str, str], QuotientSpace] = {}
        for src in quiver.objects:
            self._build_from(src)

    def space(self, src: str, tgt: str) -> QuotientSpace:
        try:
            return self._spaces[src, tgt]
        except KeyError:
            return QuotientSpace(src, tgt, [], [])

    def _build_from(self, src: str):
        q = self.quiver
        start = q.index(src)
        self._spaces[src, src] = QuotientSpace(src, src, [()], [0])
        for tgt in q.objects[start + 1:]:
            gens: list[tuple[int, str]] = []
            gen_paths: list[tuple[str, ...]] = []
            gen_degrees: list[int] = []
            for a in q.arrows_into(tgt):
                prev = self._spaces.get((src, a.source))
                if prev is None:
                    continue
                for i, path in enumerate(prev.basis):
                    gens.append((i, a.label))
                    gen_paths.append(path + (a.label,))
                    gen_degrees.append(prev.degrees[i] + a.degree)
            n = len(gens)
            gen_index = {g: k for k, g in enumerate(gens)}
            rows = []
            for rel in self.relations:
                if rel.target != tgt or (src, rel.source) not in self._spaces:
                    continue
                for upath in self._spaces[src, rel.source].basis:
                    vec = [Fraction(0)] * n
                    for term, coeff in rel.terms:
                        for k, c in self._reduce_to_generators(src, upath + term, gen_index).items():
                            vec[k] += coeff * c
                    if any(vec):
                        rows.append(vec)
            # later generators become pivots so earlier paths survive as basis
            order = list(range(n - 1, -1, -1))
            reduced, pivots = row_reduce([[r[k] for k in order] for r in rows]) if rows else ([], [])
            pivot_gens = {order[c]: reduced[i] for i, c in enumerate(pivots)}
            keep = [k for k in range(n) if k not in pivot_gens]
            new_index = {k: i for i, k in enumerate(keep)}
            space = QuotientSpace(src, tgt,
                                  [gen_paths[k] for k in keep],
                                  [gen_degrees[k] for k in keep])
            for k, g in enumerate(gens):
                if k in new_index:
                    space._gens[g] = {new_index[k]: Fraction(1)}
                else:
                    row = pivot_gens[k]
                    space._gens[g] = {new_index[order[c]]: -x
                                      for c, x in enumerate(row) if x and order[c] != k}
            if space.dim:
                self._spaces[src, tgt] = space

    def _reduce_to_generators(self, src, path, gen_index):
        """Coordinates of ``path`` over the generators ``(b, alpha)`` of its target."""
        if not path:
            raise QuiverError("cannot reduce the empty path onto arrow generators")
        head = self.reduce(src, path[:-1]) if path[:-1] else {0: Fraction(1)}
        out: dict[int, Fraction] = {}
        for i, c in head.items():
            k = gen_index.get((i, path[-1]))
            if k is not None:
                out[k] = out.get(k, 0) + c
        return out

    def reduce(self, src: str, path: Sequence[str]) -> dict[int, Fraction]:
        """Expansion of ``path`` (starting at ``src``) over the quotient basis."""
        vec: dict[int, Fraction] = {0: Fraction(1)}
        node = src
        for label in path:
            a = self.quiver.arrow(label)
            if a.source != node:
                raise QuiverError(f"path {'.'.join(path)} is not composable at {label}")
            space = self._spaces.get((src, a.target))
            node = a.target
            if space is None:
                return {}
            nxt: dict[int, Fraction] = {}
            for i, c in vec.items():
                for j, x in space._gens.get((i, label), {}).items():
                    nxt[j] = nxt.get(j, 0) + c * x
            vec = {j: x for j, x in nxt.items() if x}
            if not vec:
                return {}
        return vec


def quotient_basis(quiver: Quiver, relations: Iterable[Relation], src: str, tgt: str) -> QuotientSpace:
    return PathQuotient(quiver, relations).space(src, tgt)


# --- algebras ---------------------------------------------------------------

@dataclass(frozen=True)
class BasisElement:
    label: str
    source: str
    target: str
    degree: int


def unit_label(obj: str) -> str:
    return f"1[{obj}]"


class GradedQuiverAlgebra:
    """Finite-dimensional graded algebra over a directed set of objects.

    ``mult[(f, g)]`` is the expansion of ``f * g`` (diagrammatic order) as a
    dict ``label -> Fraction``; composable pairs missing from the table
    multiply to zero.
    """

    def __init__(self, objects: Sequence[str], elements: Sequence[BasisElement],
                 mult: Mapping[tuple[str, str], Mapping[str, Fraction]]):
        self.objects = tuple(objects)
        self.elements = {e.label: e for e in elements}
        if len(self.elements) != len(elements):
            raise QuiverError("duplicate basis labels")
        self.hom: dict[tuple[str, str], tuple[str, ...]] = {}
        for e in elements:
            self.hom.setdefault((e.source, e.target), ())
            self.hom[e.source, e.target] += (e.label,)
        self.mult = {k: {l: Fraction(c) for l, c in v.items() if c} for k, v in mult.items()}
        self.mult = {k: v for k, v in self.mult.items() if v}

    def basis(self, src: str, tgt: str) -> tuple[str, ...]:
        return self.hom.get((src, tgt), ())

    def unit(self, obj: str) -> str:
        return unit_label(obj)

    def multiply(self, f: str, g: str) -> dict[str, Fraction]:
        ef, eg = self.elements[f], self.elements[g]
        if ef.target != eg.source:
            raise QuiverError(f"{f} and {g} are not composable")
        return dict(self.mult.get((f, g), {}))

    def multiply_vectors(self, v: Mapping[str, Fraction], w: Mapping[str, Fraction]) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for f, a in v.items():
            for g, b in w.items():
                if self.elements[f].target != self.elements[g].source:
                    continue
                for h, c in self.mult.get((f, g), {}).items():
                    out[h] = out.get(h, 0) + a * b * c
        return {h: c for h, c in out.items() if c}

    def graded_dims(self, src: str, tgt: str) -> dict[int, int]:
        out: dict[int, int] = {}
        for l in self.basis(src, tgt):
            d = self.elements[l].degree
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def dim_table(self) -> dict[tuple[str, str], dict[int, int]]:
        return {(x, y): self.graded_dims(x, y)
                for x in self.objects for y in self.objects if self.basis(x, y)}

    def total_dim(self) -> int:
        return len(self.elements)

    def composable_pairs(self):
        for (x, y), left in self.hom.items():
            for z in self.objects:
                for f in left:
                    for g in self.basis(y, z):
                        yield f, g

    def with_constant(self, f: str, g: str, value: Mapping[str, Fraction]) -> "GradedQuiverAlgebra":
        """Copy with one structure constant replaced (for negative controls)."""
        mult = {k: dict(v) for k, v in self.mult.items()}
        mult[f, g] = dict(value)
        return GradedQuiverAlgebra(self.objects, list(self.elements.values()), mult)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for v in self.mult.values() for c in v.values())


def build_algebra(quiver: Quiver, relations: Iterable[Relation] = (),
                  named_basis: Mapping[tuple[str, str], Sequence[tuple[str, Mapping[Sequence[str], int]]]] | None = None,
                  ) -> GradedQuiverAlgebra:
    """Quotient algebra with structure constants in a chosen basis.

    Without ``named_basis`` the basis is the set of surviving representative
    paths (labelled ``a.b.c``; units ``1[X]``).  ``named_basis[(X, Y)]`` may
    instead list ``(label, {path: coeff})`` elements, which must form a
    homogeneous basis of ``A(X, Y)``.  Units are always ``1[X]``.
    """
    relations = tuple(relations)
    for rel in relations:
        if not isinstance(rel, Relation):
            raise TypeError("relations must be Relation instances")
    pq = PathQuotient(quiver, relations)

    # per hom space: labels, degrees, change of basis quotient-coords <-> labels
    labels: dict[tuple[str, str], list[str]] = {}
    to_named: dict[tuple[str, str], list[list[Fraction]]] = {}
    reps: dict[str, dict[tuple[str, ...], Fraction]] = {}
    elements: list[BasisElement] = []
    for (x, y), space in sorted(pq._spaces.items(), key=lambda kv: (quiver.index(kv[0][0]), quiver.index(kv[0][1]))):
        if x == y:
            names = [(unit_label(x), {(): 1})]
        elif named_basis is not None and (x, y) in named_basis:
            names = [(l, dict(v)) for l, v in named_basis[x, y]]
        else:
            names = [(".".join(p), {p: 1}) for p in space.basis]
        if len(names) != space.dim:
            raise QuiverError(f"named basis of hom({x},{y}) has {len(names)} elements, "
                              f"quotient has dimension {space.dim}")
        coords = []
        for label, combo in names:
            vec = [Fraction(0)] * space.dim
            degs = set()
            for path, c in combo.items():
                path = tuple(path)
                degs.add(quiver.path_degree(path) if path else 0)
                for i, v in (pq.reduce(x, path).items() if path else [(0, Fraction(1))]):
                    vec[i] += Fraction(c) * v
            if len(degs) != 1:
                raise InconsistentGrading(f"basis element {label} is not homogeneous")
            coords.append(vec)
            reps[label] = {tuple(p): Fraction(c) for p, c in combo.items()}
            elements.append(BasisElement(label, x, y, degs.pop()))
        # coords rows express named elements in quotient coordinates
        inv = rational_inverse([list(r) for r in zip(*coords)]) if space.dim else []
        labels[x, y] = [l for l, _ in names]
        to_named[x, y] = inv

    def in_named(x, y, qvec: Mapping[int, Fraction]) -> dict[str, Fraction]:
        inv = to_named[x, y]
        out = {}
        for k, label in enumerate(labels[x, y]):
            c = sum(inv[k][i] * v for i, v in qvec.items())
            if c:
                out[label] = c
        return out

    mult: dict[tuple[str, str], dict[str, Fraction]] = {}
    for f in elements:
        for g in elements:
            if f.target != g.source:
                continue
            acc: dict[int, Fraction] = {}
            for pf, cf in reps[f.label].items():
                for pg, cg in reps[g.label].items():
                    path = pf + pg
                    red = pq.reduce(f.source, path) if path else {0: Fraction(1)}
                    for i, v in red.items():
                        acc[i] = acc.get(i, 0) + cf * cg * v
            acc = {i: v for i, v in acc.items() if v}
            if acc and (f.source, g.target) in labels:
                mult[f.label, g.label] = in_named(f.source, g.target, acc)
    return GradedQuiverAlgebra(quiver.objects, elements, mult)


# --- verification -----------------------------------------------------------

@dataclass
class AssociativityReport:
    triples_checked: int
    violations: list[tuple[str, str, str]]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_associativity(alg: GradedQuiverAlgebra) -> AssociativityReport:
    """Exhaustive check of ``(f*g)*h == f*(g*h)`` over composable basis triples."""
    violations = []
    count = 0
    for f, g in alg.composable_pairs():
        fg = alg.multiply(f, g)
        z = alg.elements[g].target
        for w in alg.objects:
            for h in alg.basis(z, w):
                count += 1
                left = alg.multiply_vectors(fg, {h: Fraction(1)})
                right = alg.multiply_vectors({f: Fraction(1)}, alg.multiply(g, h))
                if left != right:
                    violations.append((f, g, h))
    return AssociativityReport(count, violations)


def verify_units_and_degrees(alg: GradedQuiverAlgebra) -> list[str]:
    """Problems with two-sided units or degree additivity (empty when fine)."""
    problems = []
    for label, e in alg.elements.items():
        if alg.multiply(alg.unit(e.source), label) != {label: 1}:
            problems.append(f"left unit fails on {label}")
        if alg.multiply(label, alg.unit(e.target)) != {label: 1}:
            problems.append(f"right unit fails on {label}")
    for (f, g), out in alg.mult.items():
        d = alg.elements[f].degree + alg.elements[g].degree
        for h in out:
            if alg.elements[h].degree != d:
                problems.append(f"degree of {f}*{g} -> {h}")
    return problems


def euler_matrix(alg: GradedQuiverAlgebra) -> IntMatrix:
    """``chi[i][j] = sum_d (-1)^d dim hom^d(X_i, X_j)``."""
    n = len(alg.objects)
    rows = [[sum((-1) ** (d % 2) * k for d, k in alg.graded_dims(x, y).items())
             for y in alg.objects] for x in alg.objects]
    return IntMatrix.from_rows(rows, cols=n)
