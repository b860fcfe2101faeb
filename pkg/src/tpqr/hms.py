"""Comparisons between the Fukaya side and the sheaf side.

Each check returns a small report object whose ``ok`` property is the verdict
and whose remaining fields say what was compared.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import fukaya, picard, sheafalg
from .lattice import (IntMatrix, cokernel_invariants, is_upper_unitriangular)
from .quiver import GradedQuiverAlgebra, euler_matrix, unit_label


@dataclass
class CheckReport:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)


# --- the algebra isomorphism -------------------------------------------------

_B_TO_MONOMIAL = {"b_1": "uu", "b_{1,2}": "uv", "b_2": "vv", "b_{2,3}": "vw",
                  "b_3": "ww", "b_{3,1}": "uw"}


def phi_A_objects(p: int, q: int, r: int) -> dict[str, str]:
    out = {}
    for chain, n in zip(fukaya.CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            out[f"{chain}{i}"] = sheafalg.chain_object(chain, i)
    for k in (1, 2, 3):
        out[f"E{k}"] = sheafalg.line_object(k - 1)
    return out


def phi_A_basis(p: int, q: int, r: int) -> dict[str, str]:
    """Relabelling of the A_F basis by the A_C basis."""
    objs = phi_A_objects(p, q, r)
    out = {unit_label(a): unit_label(b) for a, b in objs.items()}
    for chain, n in zip(fukaya.CHAINS, (p, q, r)):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out[fukaya.e_label(chain, i, j)] = sheafalg.ehat(chain, i, j)
                out[fukaya.x_label(chain, i, j)] = sheafalg.xhat(chain, i, j)
            for k in (1, 2, 3):
                out[fukaya.y_label(chain, i, k)] = sheafalg.yhat(chain, i, k - 1)
    for i, var in zip((1, 2, 3), sheafalg.VARIABLES):
        out[f"a_{i}"] = sheafalg.monomial_label(var, 0, 1)
        out[f"c_{i}"] = sheafalg.monomial_label(var, 1, 2)
    for b, mono in _B_TO_MONOMIAL.items():
        out[b] = sheafalg.monomial_label(mono, 0, 2)
    return out


@dataclass
class AlgebraIsoReport:
    object_map: dict[str, str]
    basis_map: dict[str, str]
    dimension_mismatches: list[tuple[str, str]]
    mismatches: list[tuple[str, str]]
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return not self.dimension_mismatches and not self.mismatches


def compare_algebras(fuk: GradedQuiverAlgebra, sheaf: GradedQuiverAlgebra,
                     object_map: dict[str, str], basis_map: dict[str, str]) -> AlgebraIsoReport:
    dim_bad = []
    for x in fuk.objects:
        for y in fuk.objects:
            if fuk.graded_dims(x, y) != sheaf.graded_dims(object_map[x], object_map[y]):
                dim_bad.append((x, y))
    if dim_bad:
        return AlgebraIsoReport(object_map, basis_map, dim_bad, [], 0)
    bad, checked = [], 0
    for f, g in fuk.composable_pairs():
        checked += 1
        lhs = {basis_map[k]: c for k, c in fuk.multiply(f, g).items()}
        if lhs != sheaf.multiply(basis_map[f], basis_map[g]):
            bad.append((f, g))
    return AlgebraIsoReport(object_map, basis_map, [], bad, checked)


def check_phi_A(p: int, q: int, r: int, fuk: GradedQuiverAlgebra | None = None,
                sheaf: GradedQuiverAlgebra | None = None) -> AlgebraIsoReport:
    fuk = fuk if fuk is not None else fukaya.build_directed_algebra(p, q, r)
    sheaf = sheaf if sheaf is not None else sheafalg.build_sheaf_algebra(p, q, r)
    return compare_algebras(fuk, sheaf, phi_A_objects(p, q, r), phi_A_basis(p, q, r))


# --- the restriction square --------------------------------------------------

def phi_B_objects() -> dict[str, object]:
    out: dict[str, object] = {c: sheafalg.SkyscraperResolution(s) for c, s in sheafalg.SKYSCRAPERS.items()}
    for k, name in enumerate(("E", "E'", "E''")):
        out[name] = sheafalg.LineBundleOnCycle((k, k, k), Fraction(1))
    return out


def _sheaf_morphism_on_cycle(label: str, alg: GradedQuiverAlgebra) -> str:
    """Symbolic restriction of an A_C basis element to the cycle D."""
    el = alg.elements[label]
    images = sheafalg.restriction_images(*_pqr_of(alg))
    src, tgt = str(images[el.source]), str(images[el.target])
    if label.startswith("1["):
        return f"id[{src}]"
    if label.startswith("ehat"):
        return f"id[{src}]"
    if label.startswith("xhat"):
        return f"ext1[{src}]"
    if label.startswith("yhat"):
        return f"ev[{src}->{tgt}]"
    return f"res({label.split('[')[0]})[{src}->{tgt}]"


def _fiber_morphism_on_cycle(gen: str) -> str:
    objs = {k: str(v) for k, v in phi_B_objects().items()}
    src, tgt, _ = fukaya.fiber_generators()[gen]
    s, t = objs[src], objs[tgt]
    if gen.startswith("e^"):
        return f"id[{s}]"
    if gen.startswith("x^"):
        return f"ext1[{s}]"
    if gen.startswith("y^"):
        return f"ev[{s}->{t}]"
    if gen[0] == "b":
        mono = _B_TO_MONOMIAL[gen]
    else:
        mono = sheafalg.VARIABLES[int(gen[2]) - 1]
    return f"res({mono})[{s}->{t}]"


def _pqr_of(alg: GradedQuiverAlgebra) -> tuple[int, int, int]:
    counts = {c: 0 for c in sheafalg.CHAINS}
    for o in alg.objects:
        if o.startswith("D["):
            counts[o[2]] += 1
    return counts["P"], counts["Q"], counts["R"]


def check_restriction_square(p: int, q: int, r: int) -> CheckReport:
    """phi_B o c_Fuk == c_vect o phi_A on objects and on every basis element."""
    fuk = fukaya.build_directed_algebra(p, q, r)
    sheaf = sheafalg.build_sheaf_algebra(p, q, r)
    c_fuk = fukaya.restrict_to_fiber(p, q, r)
    phi_obj, phi_mor = phi_A_objects(p, q, r), phi_A_basis(p, q, r)
    phi_b = phi_B_objects()
    images = sheafalg.restriction_images(p, q, r)
    obj_bad = [o for o in fuk.objects if phi_b[c_fuk.object_map[o]] != images[phi_obj[o]]]
    mor_bad = [f for f in fuk.elements
               if _fiber_morphism_on_cycle(c_fuk.morphism_map[f])
               != _sheaf_morphism_on_cycle(phi_mor[f], sheaf)]
    functor_bad = fukaya.check_functor(fuk, c_fuk)
    ok = not (obj_bad or mor_bad or functor_bad)
    return CheckReport("square", ok, {
        "objects_checked": len(fuk.objects), "object_failures": obj_bad,
        "morphisms_checked": len(fuk.elements), "morphism_failures": mor_bad,
        "functor_failures": functor_bad})


# --- Euler forms and Serre -----------------------------------------------------

def euler_crosscheck(p: int, q: int, r: int) -> CheckReport:
    quiver_side = euler_matrix(fukaya.build_directed_algebra(p, q, r))
    rr_side = picard.riemann_roch_matrix(p, q, r)
    sheaf_side = euler_matrix(sheafalg.build_sheaf_algebra(p, q, r))
    ok = quiver_side == rr_side == sheaf_side and is_upper_unitriangular(rr_side)
    return CheckReport("euler", ok, {"size": rr_side.rows, "matrix": rr_side.tolist(),
                                     "quiver_matches": quiver_side == rr_side,
                                     "sheaf_algebra_matches": sheaf_side == rr_side})


def preserves_pairing(s: IntMatrix, chi: IntMatrix) -> bool:
    return s.transpose() @ chi @ s == chi


def serre_vs_twist(p: int, q: int, r: int) -> CheckReport:
    chi = euler_matrix(fukaya.build_directed_algebra(p, q, r))
    serre = fukaya.coxeter_matrix(chi)
    twist = picard.twist_matrix(picard.canonical_class((p, q, r)), p, q, r)
    ok = serre == twist and preserves_pairing(serre, chi)
    return CheckReport("serre", ok, {"matrix": serre.tolist(), "twist_matches": serre == twist,
                                     "preserves_pairing": preserves_pairing(serre, chi)})


# --- mutations -----------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalCollectionState:
    """An ordered list of K-classes with their Euler matrix.

    Classes are integer coordinate vectors with respect to the initial
    collection, and ``ambient`` is the Euler matrix of that initial collection,
    so the pairing never changes under mutation.  ``characters`` optionally
    carries the Chern characters of the initial collection.
    """

    classes: tuple[tuple[int, ...], ...]
    ambient: IntMatrix
    characters: tuple | None = None

    @classmethod
    def from_euler_matrix(cls, chi: IntMatrix, characters=None) -> "ExceptionalCollectionState":
        if not is_upper_unitriangular(chi):
            raise ValueError("initial Euler matrix must be upper unitriangular")
        n = chi.rows
        basis = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(basis, chi, tuple(characters) if characters is not None else None)

    @classmethod
    def from_triple(cls, p: int, q: int, r: int) -> "ExceptionalCollectionState":
        return cls.from_euler_matrix(picard.riemann_roch_matrix(p, q, r),
                                     picard.exceptional_characters(p, q, r))

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return self.ambient.bilinear(x, y)

    @property
    def euler(self) -> IntMatrix:
        return IntMatrix.from_rows([[self.pairing(a, b) for b in self.classes] for a in self.classes])

    def chern_characters(self) -> list:
        if self.characters is None:
            raise ValueError("this state carries no Chern characters")
        out = []
        for v in self.classes:
            total = self.characters[0] * 0
            for c, ch in zip(v, self.characters):
                total = total + ch * c
            out.append(total)
        return out


def _combine(a, ca, b, cb):
    return tuple(ca * x + cb * y for x, y in zip(a, b))


def mutate(state: ExceptionalCollectionState, i: int, direction: str = "left") -> ExceptionalCollectionState:
    """Mutate the adjacent pair in slots ``i, i+1`` (1-based).

    left:  (X, Y) -> (Y - chi(X, Y) X, X)
    right: (X, Y) -> (Y, X - chi(X, Y) Y)
    """
    n = len(state.classes)
    if not 1 <= i < n:
        raise IndexError(f"mutation slot {i} out of range 1..{n - 1}")
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    x, y = state.classes[i - 1], state.classes[i]
    c = state.pairing(x, y)
    if direction == "left":
        pair = (_combine(y, 1, x, -c), x)
    else:
        pair = (y, _combine(x, 1, y, -c))
    classes = state.classes[:i - 1] + pair + state.classes[i + 1:]
    return ExceptionalCollectionState(classes, state.ambient, state.characters)


def parse_word(word: str) -> list[tuple[int, str]]:
    """``"1,-2,3"`` -> left at 1, right at 2, left at 3."""
    out = []
    for tok in word.split(","):
        tok = tok.strip()
        if not tok:
            continue
        k = int(tok)
        if k == 0:
            raise ValueError("slot 0 is not a mutation")
        out.append((abs(k), "left" if k > 0 else "right"))
    return out


def apply_word(state: ExceptionalCollectionState, word) -> ExceptionalCollectionState:
    moves = parse_word(word) if isinstance(word, str) else word
    for i, d in moves:
        state = mutate(state, i, d)
    return state


def random_unitriangular(n: int, rng: random.Random, bound: int = 4) -> IntMatrix:
    return IntMatrix.from_rows([[1 if i == j else (rng.randint(-bound, bound) if j > i else 0)
                                 for j in range(n)] for i in range(n)])


# --- localization ------------------------------------------------------------

@dataclass
class LocalizationResult:
    free_rank: int
    torsion: tuple[int, ...]
    matrix: IntMatrix

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.torsion


def localization_of(serre: IntMatrix) -> LocalizationResult:
    m = IntMatrix.identity(serre.rows) - serre
    free, torsion = cokernel_invariants(m)
    return LocalizationResult(free, torsion, m)


def k0_localization(p: int, q: int, r: int, pipeline: str = "fukaya") -> LocalizationResult:
    """coker(I - S): the K_0 shadow of inverting the natural transformation to the identity."""
    if pipeline == "fukaya":
        s = fukaya.coxeter_matrix(euler_matrix(fukaya.build_directed_algebra(p, q, r)))
    elif pipeline == "twist":
        s = picard.twist_matrix(picard.canonical_class((p, q, r)), p, q, r)
    else:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    return localization_of(s)


# --- classes of distinguished Lagrangians ------------------------------------

@dataclass
class ClassMatch:
    lagrangian: str
    sheaf: str
    lagrangian_class: tuple[int, ...]
    sheaf_class: tuple[int, ...]
    sign: int
    twist: int
    matches: bool
    self_pairing: int


def reversed_chain(chain: str, n: int) -> list[str]:
    """Objects of a chain in the reversed order X'_k = X_{n+1-k}."""
    return [sheafalg.chain_object(chain, n + 1 - k) for k in range(1, n + 1)]


def vanishing_cycle_classes(p: int, q: int, r: int) -> dict:
    """K-classes of the cones between adjacent chain objects and of the curves they hit.

    In the reversed order X'_k, the cone of ``X'_{n-j} -> X'_{n-j+1}`` has
    class ``[D[X,j+1]] - [D[X,j]]`` up to sign; it is compared with
    ``i_* O_C(-1)`` for ``C = Etilde[X,j+1]``.  The pair near the line records
    ``i_* O_Htilde`` and ``i_* O_Htilde(-1)`` and their difference.
    """
    pqr = (p, q, r)
    names = picard.named_classes(p, q, r)
    ch = {str(o): c for o, c in zip(picard.exceptional_objects(p, q, r),
                                     picard.exceptional_characters(p, q, r))}
    matches = []
    for chain, n in zip(picard.CHAINS, pqr):
        for j in range(1, n):
            cone = ch[sheafalg.chain_object(chain, n - j)] - ch[sheafalg.chain_object(chain, n - j + 1)]
            curve = names[f"Etilde[{chain},{n - j + 1}]"]
            found = None
            for sign in (1, -1):
                for twist in (0, -1, 1):
                    if cone == picard.curve_sheaf_character(curve, twist) * sign:
                        found = (sign, twist)
                        break
                if found:
                    break
            sheaf = picard.curve_sheaf_character(curve, 0)
            matches.append(ClassMatch(
                f"{chain}{j}", f"i_*O(Etilde[{chain},{n - j + 1}])",
                cone.vector(), sheaf.vector(),
                found[0] if found else 0, found[1] if found else 0, found is not None,
                picard.euler_pairing(cone, cone)))
    h = names["Htilde"]
    a, b = picard.curve_sheaf_character(h, 0), picard.curve_sheaf_character(h, -1)
    diff = a - b
    point = picard.ChernCharacter(0, picard.DivisorClass.zero(pqr), 2)
    return {
        "vanishing_cycles": matches,
        "line_pair": {
            "A": a.vector(), "B": b.vector(), "difference": diff.vector(),
            "difference_is_point": diff == point,
            "self_pairing_A": picard.euler_pairing(a, a),
            "self_pairing_B": picard.euler_pairing(b, b),
        },
    }


# --- fibre model -------------------------------------------------------------

def shift_dims(dims: dict[int, int], source_shift: int = 0, target_shift: int = 0) -> dict[int, int]:
    """Graded dims of hom(X[a], Y[b]) from those of hom(X, Y)."""
    return {d - (target_shift - source_shift): k for d, k in dims.items()}


def fiber_model_consistency(p: int, q: int, r: int) -> CheckReport:
    """Compare A (+) A^v[-1] with Ext on the cycle, chain objects sent to skyscrapers[-1]."""
    model = fukaya.build_fiber_bimodule(p, q, r)
    alg = model.algebra
    sheaf_dims = sheafalg.fiber_sheaf_dims()
    target = {o: sheafalg.SKYSCRAPERS[o[0]] for o in alg.objects if o[0] in sheafalg.SKYSCRAPERS}
    target["E1"] = "O_D"
    shift = {o: (-1 if t != "O_D" else 0) for o, t in target.items()}
    dim_bad = []
    for x in target:
        for y in target:
            want = shift_dims(sheaf_dims[target[x], target[y]], shift[x], shift[y])
            if model.graded_dims(x, y) != want:
                dim_bad.append((x, y))
    chi = euler_matrix(alg)
    idx = {o: i for i, o in enumerate(alg.objects)}
    euler_bad = [(x, y) for x in alg.objects for y in alg.objects
                 if model.euler(x, y) != chi[idx[x], idx[y]] - chi[idx[y], idx[x]]]
    return CheckReport("fiber", not dim_bad and not euler_bad,
                       {"pairs_compared": len(target) ** 2, "dimension_failures": dim_bad,
                        "euler_failures": euler_bad})


# --- convenience -------------------------------------------------------------

def dims_check(p: int, q: int, r: int) -> CheckReport:
    expected = fukaya.expected_dim_table(p, q, r)
    fuk = fukaya.build_directed_algebra(p, q, r).dim_table()
    sheaf = sheafalg.build_sheaf_algebra(p, q, r)
    objs = phi_A_objects(p, q, r)
    sheaf_table = {(x, y): sheaf.graded_dims(objs[x], objs[y]) for (x, y) in expected}
    sheaf_total = sum(sum(d.values()) for d in sheaf.dim_table().values())
    ok = fuk == expected and sheaf_table == expected and sheaf_total == fukaya.expected_total_dim(p, q, r)
    return CheckReport("dims", ok, {"total": fukaya.expected_total_dim(p, q, r),
                                    "fukaya_matches": fuk == expected,
                                    "sheaf_matches": sheaf_table == expected})


def assoc_check(p: int, q: int, r: int) -> CheckReport:
    from .quiver import verify_associativity, verify_units_and_degrees
    out = {}
    ok = True
    for side, alg in (("fukaya", fukaya.build_directed_algebra(p, q, r)),
                      ("sheaf", sheafalg.build_sheaf_algebra(p, q, r))):
        rep = verify_associativity(alg)
        units = verify_units_and_degrees(alg)
        out[side] = {"triples_checked": rep.triples_checked, "violations": len(rep.violations),
                     "unit_or_degree_errors": len(units)}
        ok = ok and rep.ok and not units
    return CheckReport("assoc", ok, out)


def iso_check(p: int, q: int, r: int) -> CheckReport:
    rep = check_phi_A(p, q, r)
    return CheckReport("iso", rep.ok, {"pairs_checked": rep.pairs_checked,
                                       "dimension_mismatches": rep.dimension_mismatches,
                                       "mismatches": rep.mismatches})


SUITES: dict[str, Callable[[int, int, int], CheckReport]] = {
    "dims": dims_check, "assoc": assoc_check, "iso": iso_check,
    "euler": euler_crosscheck, "serre": serre_vs_twist, "square": check_restriction_square,
}
