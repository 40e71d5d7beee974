"""Isotropy separation and the classification of box-invertible functors.

Every functor M sits in a short exact sequence

    0 → gamma_functor(M) → M → phi_functor(M) → 0

where the left piece replaces the top by the image of the transfer and the
right piece is the cokernel of the transfer with a trivial bottom.  The
classification theorem implemented by :func:`classify_invertible` says M is
invertible for the box product exactly when it is a twisted Burnside functor
whose twist is prime to p; :func:`invert` then produces the inverse together
with a verified isomorphism box(M, inverse) → burnside(p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .intlin import (
    IntMatrix,
    extended_gcd,
    invert_unimodular,
    kernel_basis,
    lattice_basis,
    smith_normal_form,
    solve_linear,
)
from .abgroup import (
    AbHom,
    FpAbGroup,
    cokernel,
    invariant_factors,
    is_isomorphism,
    kernel,
    same_lattice,
    _preimage_gens,
)
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    action_norm,
    box_product,
    burnside,
    check_axioms,
    is_mackey_isomorphism,
    twisted_burnside,
    verify_morphism,
)

# Reasons a functor can fail to be invertible.
BOTTOM_NOT_Z = "bottom-not-Z"
BOTTOM_ACTION_NONTRIVIAL = "bottom-action-nontrivial"
TOP_NOT_RANK_2 = "top-not-rank-2"
TRANSFER_NOT_SPLIT = "transfer-not-split"
TWIST_NOT_COPRIME = "twist-not-coprime"
RESTRICTION_NOT_ONTO = "restriction-not-surjective-onto-Z"


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict of :func:`classify_invertible`.

    For an invertible functor, ``d_class`` is the twist canonicalized to
    ``min(d mod p, -d mod p)``; ``sign_ambiguous`` records that the
    complementary representative ``p - d_class`` presents an isomorphic
    functor.  ``transfer_image_rank`` is the rank of the image of the
    transfer inside the top (a diagnostic; 1 for every invertible functor).
    """

    invertible: bool
    d_class: int | None = None
    sign_ambiguous: bool = False
    reason: str | None = None
    twist_found: int | None = None
    transfer_image_rank: int | None = None

    def __str__(self):
        if self.invertible:
            return f"TwistedBurnside(d_class={self.d_class}, sign_ambiguous={self.sign_ambiguous})"
        extra = f", twist={self.twist_found}" if self.twist_found is not None else ""
        return f"NotInvertible({self.reason}{extra})"


# -- the two halves of the isotropy sequence ----------------------------------


def gamma_functor(m: MackeyFunctor) -> tuple[MackeyFunctor, MackeyMorphism]:
    """The subfunctor generated by transfers, with its inclusion into M.

    Its top is presented on the bottom's generators (v represents tr(v)), so
    its transfer is the identity matrix and its restriction is the action
    norm.
    """
    nb = m.bottom.ngens
    top = FpAbGroup(nb, _preimage_gens(m.tr.matrix, m.top.relations))
    res = AbHom(top, m.bottom, action_norm(m.gamma, m.p).matrix)
    tr = AbHom(m.bottom, top, IntMatrix.identity(nb))
    part = MackeyFunctor(m.p, top, m.bottom, m.gamma, res, tr)
    inclusion = MackeyMorphism(
        part, m, AbHom(top, m.top, m.tr.matrix), AbHom.identity(m.bottom)
    )
    return part, inclusion


def phi_functor(m: MackeyFunctor) -> tuple[MackeyFunctor, MackeyMorphism]:
    """The transfer-cokernel quotient (trivial bottom), with the projection.

    >>> from mackeybox.abgroup import invariant_factors
    >>> part, _ = phi_functor(burnside(5))
    >>> invariant_factors(part.top)
    (1, ())
    """
    coker, proj = cokernel(m.tr)
    trivial = FpAbGroup.trivial()
    part = MackeyFunctor(
        m.p,
        coker,
        trivial,
        AbHom.identity(trivial),
        AbHom.zero(coker, trivial),
        AbHom.zero(trivial, coker),
    )
    projection = MackeyMorphism(
        m, part, AbHom(m.top, coker, proj.matrix), AbHom.zero(m.bottom, trivial)
    )
    return part, projection


@dataclass(frozen=True)
class IsotropySequence:
    """0 → gamma_part → original → phi_part → 0, with an exactness verdict."""

    gamma_part: MackeyFunctor
    inclusion: MackeyMorphism
    original: MackeyFunctor
    projection: MackeyMorphism
    phi_part: MackeyFunctor
    exact: bool
    report: tuple[str, ...]


def _tier_maps(f: MackeyMorphism):
    return (("top", f.phi_top), ("bottom", f.phi_bottom))


def isotropy_sequence(m: MackeyFunctor) -> IsotropySequence:
    """Assemble the sequence and verify exactness honestly (no shortcuts)."""
    gamma_part, inclusion = gamma_functor(m)
    phi_part, projection = phi_functor(m)
    report = []
    report.extend(f"inclusion: {msg}" for msg in verify_morphism(inclusion))
    report.extend(f"projection: {msg}" for msg in verify_morphism(projection))
    for name, f in _tier_maps(inclusion):
        if not kernel(f)[0].is_trivial():
            report.append(f"inclusion is not injective on the {name} tier")
    for name, f in _tier_maps(projection):
        if not cokernel(f)[0].is_trivial():
            report.append(f"projection is not surjective on the {name} tier")
    for (name, inc), (_, proj) in zip(_tier_maps(inclusion), _tier_maps(projection)):
        ker_lattice = _preimage_gens(proj.matrix, proj.target.relations)
        im_lattice = inc.matrix.hstack(inc.target.relations)
        if not same_lattice(ker_lattice, im_lattice):
            report.append(f"sequence is not exact at the middle {name} tier")
    return IsotropySequence(
        gamma_part, inclusion, m, projection, phi_part, not report, tuple(report)
    )


def is_geometric(m: MackeyFunctor) -> bool:
    """Whether the projection to the transfer-cokernel quotient is an iso."""
    _, projection = phi_functor(m)
    return is_mackey_isomorphism(projection)


# -- twisted Burnside functors -------------------------------------------------


def twisted_iso_criterion(p: int, c: int, d: int) -> bool:
    """Whether the twist-c and twist-d functors are isomorphic: c ≡ ±d (mod p).

    >>> twisted_iso_criterion(5, 2, 3), twisted_iso_criterion(5, 2, 4)
    (True, False)
    """
    return (c - d) % p == 0 or (c + d) % p == 0


def twisted_isomorphism(p: int, c: int, d: int) -> MackeyMorphism | None:
    """An explicit isomorphism twisted(p, c) → twisted(p, d), when one exists.

    With c = y·d + p·x (y = ±1), the top map sends u ↦ y·u + x·t and fixes t;
    the bottom map is the identity.
    """
    if (c - d) % p == 0:
        y = 1
    elif (c + d) % p == 0:
        y = -1
    else:
        return None
    x = (c - y * d) // p
    src, tgt = twisted_burnside(p, c), twisted_burnside(p, d)
    phi_top = AbHom(src.top, tgt.top, IntMatrix.from_rows([[y, 0], [x, 1]]))
    return MackeyMorphism(src, tgt, phi_top, AbHom.identity(src.bottom))


def _quotient_iso(group: FpAbGroup, rank: int) -> tuple[IntMatrix, IntMatrix]:
    """For a group known free of the given rank: (projection, section) matrices.

    The projection is a ``rank x ngens`` matrix inducing an isomorphism onto
    Z^rank; the section satisfies projection @ section = identity.
    """
    dec = smith_normal_form(group.relations)
    r = dec.rank()
    if group.ngens - r != rank:
        raise ValueError("group does not have the expected free rank")
    pi = dec.u.take_rows(range(r, group.ngens))
    sec = invert_unimodular(dec.u).take_columns(range(r, group.ngens))
    return pi, sec


def _classify(m: MackeyFunctor) -> tuple[ClassificationResult, MackeyMorphism | None]:
    violations = check_axioms(m)
    if violations:
        raise ValueError("not a Mackey functor: " + "; ".join(violations))
    p = m.p

    if invariant_factors(m.bottom) != (1, ()):
        return ClassificationResult(False, reason=BOTTOM_NOT_Z), None
    ident = AbHom.identity(m.bottom)
    if not m.gamma.equals(ident):
        if m.gamma.equals(ident.scaled(-1)):
            # bottom is Z with the sign action (only possible at p = 2); the
            # axioms force res = 0 there, so res can never hit a generator
            return ClassificationResult(False, reason=RESTRICTION_NOT_ONTO), None
        return ClassificationResult(False, reason=BOTTOM_ACTION_NONTRIVIAL), None
    if invariant_factors(m.top) != (2, ()):
        return ClassificationResult(False, reason=TOP_NOT_RANK_2), None

    k_rank = invariant_factors(gamma_functor(m)[0].top)[0]
    quot, _ = phi_functor(m)
    if invariant_factors(quot.top) != (1, ()):
        return ClassificationResult(
            False, reason=TRANSFER_NOT_SPLIT, transfer_image_rank=k_rank
        ), None

    pi_b, sec_b = _quotient_iso(m.bottom, 1)
    pi_t, sec_t = _quotient_iso(m.top, 2)
    g = sec_b.column(0)  # a generator of the bottom
    t1, t2 = pi_t.apply(m.tr.matrix.apply(g))
    if gcd(t1, t2) != 1:  # defensive; the cokernel test above rules this out
        return ClassificationResult(
            False, reason=TRANSFER_NOT_SPLIT, transfer_image_rank=k_rank
        ), None
    _, a, b = extended_gcd(t1, t2)
    w = (b, -a)  # completes tr(g) to a basis: det [w | t] = a·t1 + b·t2 = 1
    lift_w = sec_t.apply(w)
    (d_raw,) = pi_b.apply(m.res.matrix.apply(lift_w))
    (p_check,) = pi_b.apply(m.res.matrix.apply(sec_t.apply((t1, t2))))
    if p_check != p:  # unreachable for valid functors: res(tr(g)) = p·g
        raise AssertionError("restriction of the transfer generator is not p")

    d_class = min(d_raw % p, (-d_raw) % p)
    if gcd(d_raw, p) != 1:
        return ClassificationResult(
            False,
            reason=TWIST_NOT_COPRIME,
            d_class=d_class,
            twist_found=d_raw,
            transfer_image_rank=k_rank,
        ), None

    # witness: an isomorphism M → twisted_burnside(p, d_raw) sending the
    # basis (lift of w, tr g) of the top to (u, t)
    b_inv = IntMatrix.from_rows([[t2, -t1], [a, b]])  # inverse of [w | t]
    target = twisted_burnside(p, d_raw)
    witness = MackeyMorphism(
        m,
        target,
        AbHom(m.top, target.top, b_inv @ pi_t),
        AbHom(m.bottom, target.bottom, pi_b),
    )
    result = ClassificationResult(
        True,
        d_class=d_class,
        sign_ambiguous=(2 * d_class) % p != 0,
        transfer_image_rank=k_rank,
    )
    return result, witness


def classify_invertible(m: MackeyFunctor) -> ClassificationResult:
    """Decide invertibility for the box product.

    >>> classify_invertible(twisted_burnside(5, 7)).d_class
    2
    >>> classify_invertible(twisted_burnside(3, 6)).reason
    'twist-not-coprime'
    """
    return _classify(m)[0]


def invert(m: MackeyFunctor) -> tuple[MackeyFunctor, MackeyMorphism] | None:
    """The box inverse and a verified isomorphism box(M, inverse) → burnside(p).

    Returns None when M is not invertible.
    """
    result, _ = _classify(m)
    if not result.invertible:
        return None
    p = m.p
    _, x, _ = extended_gcd(result.d_class, p)
    inverse = twisted_burnside(p, x % p)
    product = box_product(m, inverse)
    _, witness = _classify(product)
    if witness is None:  # unreachable: the product of twists is a unit mod p
        raise AssertionError("box against the inverse failed to classify")
    twist = witness.target.res.matrix.at(0, 0)
    bridge = twisted_isomorphism(p, twist, 1)
    if bridge is None:  # unreachable: twist ≡ ±1 (mod p) by construction
        raise AssertionError("product twist is not ±1 modulo p")
    certificate = witness.then(bridge)
    if not is_mackey_isomorphism(certificate):
        raise AssertionError("inverse certificate failed verification")
    return inverse, certificate


# -- bounded isomorphism search ------------------------------------------------

FOUND = "found"
NOT_ISOMORPHIC = "not-isomorphic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsoSearchResult:
    status: str
    witness: MackeyMorphism | None = None
    detail: str = ""


def _matrix_candidates(rows: int, cols: int, bound: int):
    """All integer matrices with entries in [-bound, bound], lexicographically."""
    values = range(-bound, bound + 1)
    for flat in itertools.product(values, repeat=rows * cols):
        yield IntMatrix(rows, cols, flat)


def _bounded_points(offset, basis: IntMatrix, bound: int):
    """All vectors offset + basis·k with every entry in [-bound, bound].

    The basis columns come from a Hermite form, so pivot rows are triangular
    and each coefficient is pinned to a finite window in turn.
    """
    n, s = basis.rows, basis.cols
    pivots = []
    for j in range(s):
        col = basis.column(j)
        lead = min(i for i in range(n) if col[i])
        pivots.append(lead)

    offset = list(offset)
    # size-reduce the offset so the pivot entries start near zero
    for j in range(s):
        piv = basis.at(pivots[j], j)
        q = offset[pivots[j]] // piv
        if q:
            for i in range(n):
                offset[i] -= q * basis.at(i, j)

    def rec(j, current):
        if j == s:
            if all(-bound <= x <= bound for x in current):
                yield tuple(current)
            return
        r = pivots[j]
        piv = basis.at(r, j)
        col = basis.column(j)
        lo = -((bound + current[r]) // piv)  # ceil((-bound - current[r]) / piv)
        hi = (bound - current[r]) // piv
        for k in range(lo, hi + 1):
            nxt = [current[i] + k * col[i] for i in range(n)]
            yield from rec(j + 1, nxt)

    if s == 0:
        if all(-bound <= x <= bound for x in offset):
            yield tuple(offset)
        return
    yield from rec(0, offset)


def _top_maps(m: MackeyFunctor, n: MackeyFunctor, phi_b: IntMatrix, bound: int):
    """All top matrices within the bound making both squares commute exactly.

    Solves the combined linear system over Z: the restriction square, the
    transfer square, and well-definedness on the top relations, each modulo
    the target relation lattice (auxiliary unknowns supply the lattice
    parts).  Candidates are the solutions projected to the top-matrix block.
    """
    nt_m, nt_n = m.top.ngens, n.top.ngens
    nb_m, nb_n = m.bottom.ngens, n.bottom.ngens
    rel_bn, rel_tn, rel_tm = n.bottom.relations, n.top.relations, m.top.relations
    nx = nt_n * nt_m
    ny1 = rel_bn.cols * nt_m
    ny2 = rel_tn.cols * nb_m
    ny3 = rel_tn.cols * rel_tm.cols
    width = nx + ny1 + ny2 + ny3

    rows, rhs = [], []

    def x_index(r, c):
        return r * nt_m + c

    rhs1 = phi_b @ m.res.matrix
    for r in range(nb_n):
        for c in range(nt_m):
            row = [0] * width
            for k in range(nt_n):
                row[x_index(k, c)] += n.res.matrix.at(r, k)
            for s in range(rel_bn.cols):
                row[nx + s * nt_m + c] -= rel_bn.at(r, s)
            rows.append(row)
            rhs.append(rhs1.at(r, c))
    rhs2 = n.tr.matrix @ phi_b
    for r in range(nt_n):
        for l in range(nb_m):
            row = [0] * width
            for k in range(nt_m):
                row[x_index(r, k)] += m.tr.matrix.at(k, l)
            for s in range(rel_tn.cols):
                row[nx + ny1 + s * nb_m + l] -= rel_tn.at(r, s)
            rows.append(row)
            rhs.append(rhs2.at(r, l))
    for r in range(nt_n):
        for c in range(rel_tm.cols):
            row = [0] * width
            for k in range(nt_m):
                row[x_index(r, k)] += rel_tm.at(k, c)
            for s in range(rel_tn.cols):
                row[nx + ny1 + ny2 + s * rel_tm.cols + c] -= rel_tn.at(r, s)
            rows.append(row)
            rhs.append(0)

    system = IntMatrix.from_rows(rows, cols=width)
    particular = solve_linear(system, rhs)
    if particular is None:
        return
    free_part = lattice_basis(kernel_basis(system).take_rows(range(nx)))
    for flat in _bounded_points(particular[:nx], free_part, bound):
        yield IntMatrix(nt_n, nt_m, flat)


def try_find_isomorphism(m: MackeyFunctor, n: MackeyFunctor, bound: int) -> IsoSearchResult:
    """Bounded, deterministic search for an isomorphism M → N.

    Tier invariant factors rule out quickly; otherwise bottom maps with
    entries in [-bound, bound] are enumerated, and for each equivariant
    bottom isomorphism the commuting-square constraints pin the top map to a
    lattice coset whose in-bound points are enumerated exactly.  Exhaustion
    without a witness yields UNKNOWN (the bound may simply be too small).
    """
    if m.p != n.p:
        return IsoSearchResult(NOT_ISOMORPHIC, detail="different primes")
    for name, gm, gn in (("top", m.top, n.top), ("bottom", m.bottom, n.bottom)):
        if invariant_factors(gm) != invariant_factors(gn):
            return IsoSearchResult(
                NOT_ISOMORPHIC,
                detail=f"{name} tiers have different invariant factors "
                f"{invariant_factors(gm)} vs {invariant_factors(gn)}",
            )
    for phi_b_mat in _matrix_candidates(n.bottom.ngens, m.bottom.ngens, bound):
        phi_b = AbHom(m.bottom, n.bottom, phi_b_mat)
        if not phi_b.is_well_defined():
            continue
        if not (phi_b @ m.gamma).equals(n.gamma @ phi_b):
            continue
        if not is_isomorphism(phi_b):
            continue
        for phi_t_mat in _top_maps(m, n, phi_b_mat, bound):
            candidate = MackeyMorphism(
                m, n, AbHom(m.top, n.top, phi_t_mat), phi_b
            )
            if is_mackey_isomorphism(candidate):
                return IsoSearchResult(FOUND, witness=candidate)
    return IsoSearchResult(UNKNOWN, detail=f"no isomorphism with entries within {bound}")


__all__ = [
    "BOTTOM_NOT_Z",
    "BOTTOM_ACTION_NONTRIVIAL",
    "TOP_NOT_RANK_2",
    "TRANSFER_NOT_SPLIT",
    "TWIST_NOT_COPRIME",
    "RESTRICTION_NOT_ONTO",
    "ClassificationResult",
    "IsotropySequence",
    "IsoSearchResult",
    "FOUND",
    "NOT_ISOMORPHIC",
    "UNKNOWN",
    "gamma_functor",
    "phi_functor",
    "isotropy_sequence",
    "is_geometric",
    "twisted_iso_criterion",
    "twisted_isomorphism",
    "classify_invertible",
    "invert",
    "try_find_isomorphism",
]
