"""Mackey functors for the cyclic group of prime order p.

A functor is a two-tier Lewis diagram: an abelian group at the fixed level
(``top``), one at the free level (``bottom``) carrying an order-p action
``gamma``, a restriction ``res`` going down and a transfer ``tr`` going up,
subject to

* ``gamma ∘ res = res`` (restrictions land in the fixed part),
* ``tr ∘ gamma = tr``   (transfers ignore the action),
* ``res ∘ tr = 1 + gamma + ... + gamma^(p-1)`` (the action norm).

The box product is the Day-convolution symmetric monoidal product: bottoms
tensor with the diagonal action, tops combine the tensor of tops with the
coinvariants of the bottom tensor, glued by Frobenius reciprocity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import IntMatrix, block_diagonal, lattice_basis, solve_linear, vstack
from .abgroup import (
    AbHom,
    FpAbGroup,
    coinvariants,
    direct_sum,
    quotient_by,
    tensor_product,
    _preimage_gens,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def action_norm(gamma: AbHom, p: int) -> AbHom:
    """The norm 1 + gamma + ... + gamma^(p-1) of an order-p action."""
    if gamma.source != gamma.target:
        raise ValueError("the action must be an endomorphism")
    n = gamma.source.ngens
    total = IntMatrix.zeros(n, n)
    power = IntMatrix.identity(n)
    for _ in range(p):
        total = total + power
        power = gamma.matrix @ power
    return AbHom(gamma.source, gamma.target, total)


@dataclass(frozen=True)
class MackeyFunctor:
    """A two-tier diagram (top, bottom, gamma, res, tr) over C_p.

    Construction validates shapes and primality only; semantic axioms are
    checked by :func:`check_axioms`, so axiom-violating diagrams can be built
    and diagnosed.
    """

    p: int
    top: FpAbGroup
    bottom: FpAbGroup
    gamma: AbHom
    res: AbHom
    tr: AbHom

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.gamma.source != self.bottom or self.gamma.target != self.bottom:
            raise ValueError("gamma must be an endomorphism of the bottom tier")
        if self.res.source != self.top or self.res.target != self.bottom:
            raise ValueError("res must map the top tier to the bottom tier")
        if self.tr.source != self.bottom or self.tr.target != self.top:
            raise ValueError("tr must map the bottom tier to the top tier")


def check_axioms(m: MackeyFunctor) -> tuple[str, ...]:
    """All violated axioms, as human-readable strings; empty means valid.

    >>> check_axioms(burnside(3))
    ()
    """
    problems = []
    if not m.gamma.is_well_defined():
        problems.append("action is not well-defined on the bottom presentation")
    if not m.res.is_well_defined():
        problems.append("restriction is not well-defined")
    if not m.tr.is_well_defined():
        problems.append("transfer is not well-defined")
    ident = AbHom.identity(m.bottom)
    if not m.gamma.power(m.p).equals(ident):
        problems.append(f"action's {m.p}-th power is not the identity")
    if not (m.gamma @ m.res).equals(m.res):
        problems.append("restrictions are not fixed by the action")
    if not (m.tr @ m.gamma).equals(m.tr):
        problems.append("transfers are not invariant under the action")
    if not (m.res @ m.tr).equals(action_norm(m.gamma, m.p)):
        problems.append("res of a transfer differs from the action norm")
    return tuple(problems)


# -- constructors ------------------------------------------------------------


def zero_functor(p: int) -> MackeyFunctor:
    t = FpAbGroup.trivial()
    z = AbHom.zero(t, t)
    return MackeyFunctor(p, t, t, z, z, z)


def constant_z(p: int) -> MackeyFunctor:
    """Both tiers Z, trivial action, res = 1, tr = p."""
    z = FpAbGroup.free(1)
    return MackeyFunctor(
        p,
        z,
        z,
        AbHom.identity(z),
        AbHom(z, z, IntMatrix.from_rows([[1]])),
        AbHom(z, z, IntMatrix.from_rows([[p]])),
    )


def twisted_burnside(p: int, d: int) -> MackeyFunctor:
    """Top Z{u, t}, bottom Z, res(u) = d, res(t) = p, tr(1) = t.

    ``twisted_burnside(p, 1)`` is the Burnside functor itself.
    """
    top = FpAbGroup.free(2)
    bottom = FpAbGroup.free(1)
    return MackeyFunctor(
        p,
        top,
        bottom,
        AbHom.identity(bottom),
        AbHom(top, bottom, IntMatrix.from_rows([[d, p]])),
        AbHom(bottom, top, IntMatrix.from_rows([[0], [1]])),
    )


def burnside(p: int) -> MackeyFunctor:
    return twisted_burnside(p, 1)


def _check_module(module: FpAbGroup, gamma: AbHom, p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if gamma.source != module or gamma.target != module:
        raise ValueError("the action must be an endomorphism of the module")
    if not gamma.is_well_defined():
        raise ValueError("the action is not well-defined")
    if not gamma.power(p).equals(AbHom.identity(module)):
        raise ValueError("the action does not have order dividing p")


def fixed_point_functor(p: int, module: FpAbGroup, gamma: AbHom) -> MackeyFunctor:
    """Top = fixed points of the action, res = inclusion, tr = the norm.

    >>> z = FpAbGroup.free(1)
    >>> fixed_point_functor(3, z, AbHom.identity(z)) == constant_z(3)
    True
    """
    _check_module(module, gamma, p)
    n = module.ngens
    delta = gamma.matrix - IntMatrix.identity(n)
    fixed_gens = _preimage_gens(delta, module.relations)
    basis = lattice_basis(fixed_gens)
    top = FpAbGroup(basis.cols, _preimage_gens(basis, module.relations))
    res = AbHom(top, module, basis)
    norm = action_norm(gamma, p).matrix
    span = basis.hstack(module.relations)
    tr_cols = []
    for j in range(n):
        sol = solve_linear(span, norm.column(j))
        if sol is None:  # unreachable: norm values are fixed by the action
            raise ValueError("norm image does not land in the fixed points")
        tr_cols.append(sol[: basis.cols])
    tr = AbHom(module, top, IntMatrix.from_columns(tr_cols, rows=basis.cols))
    return MackeyFunctor(p, top, module, gamma, res, tr)


def orbit_functor(p: int, module: FpAbGroup, gamma: AbHom) -> MackeyFunctor:
    """Top = coinvariants of the action, tr = projection, res = the norm."""
    _check_module(module, gamma, p)
    quot, proj = coinvariants(module, gamma, p)
    res = AbHom(quot, module, action_norm(gamma, p).matrix)
    return MackeyFunctor(p, quot, module, gamma, res, proj)


@dataclass(frozen=True)
class GSet:
    """A finite C_p-set: ``fixed`` one-point orbits and ``free`` free orbits."""

    fixed: int
    free: int

    def __post_init__(self):
        if self.fixed < 0 or self.free < 0:
            raise ValueError("orbit counts must be nonnegative")


def gset_product(s: GSet, t: GSet, p: int) -> GSet:
    """The product C_p-set: free orbits absorb everything they touch."""
    return GSet(s.fixed * t.fixed, s.fixed * t.free + s.free * t.fixed + p * s.free * t.free)


def permutation_functor(p: int, s: GSet) -> MackeyFunctor:
    """The fixed-point functor of the permutation module Z[s].

    >>> permutation_functor(5, GSet(1, 0)) == constant_z(5)
    True
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    n = s.fixed + p * s.free
    module = FpAbGroup.free(n)
    entries = [[0] * n for _ in range(n)]
    for i in range(s.fixed):
        entries[i][i] = 1
    for b in range(s.free):
        base = s.fixed + b * p
        for i in range(p):
            entries[base + (i + 1) % p][base + i] = 1
    gamma = AbHom(module, module, IntMatrix.from_rows(entries, cols=n))
    return fixed_point_functor(p, module, gamma)


def direct_sum_functors(m: MackeyFunctor, n: MackeyFunctor) -> MackeyFunctor:
    if m.p != n.p:
        raise ValueError("mismatched primes")
    top = direct_sum(m.top, n.top)
    bottom = direct_sum(m.bottom, n.bottom)
    return MackeyFunctor(
        m.p,
        top,
        bottom,
        AbHom(bottom, bottom, block_diagonal(m.gamma.matrix, n.gamma.matrix)),
        AbHom(top, bottom, block_diagonal(m.res.matrix, n.res.matrix)),
        AbHom(bottom, top, block_diagonal(m.tr.matrix, n.tr.matrix)),
    )


# -- the box product ---------------------------------------------------------


def box_product(m: MackeyFunctor, n: MackeyFunctor) -> MackeyFunctor:
    """The symmetric monoidal (box) product of two functors.

    Bottom: tensor of bottoms with the diagonal action.  Top: tensor of tops,
    plus the coinvariants of the bottom tensor (classes written ``t(x ⊗ y)``),
    modulo Frobenius reciprocity::

        a ⊗ tr(y) = t(res(a) ⊗ y)      tr(x) ⊗ b = t(x ⊗ res(b))

    The new transfer sends a bottom class to its ``t(...)`` generator; the
    new restriction is (res ⊗ res) on tensor generators and the action norm
    on ``t(...)`` generators.

    >>> from mackeybox.abgroup import invariant_factors
    >>> bb = box_product(burnside(2), burnside(2))
    >>> invariant_factors(bb.top), invariant_factors(bb.bottom)
    ((2, ()), (1, ()))
    """
    if m.p != n.p:
        raise ValueError("mismatched primes")
    p = m.p
    bt = tensor_product(m.bottom, n.bottom)
    bottom = bt.group
    gamma = AbHom(bottom, bottom, m.gamma.matrix.kron(n.gamma.matrix))
    coinv, _ = coinvariants(bottom, gamma, p)
    tt = tensor_product(m.top, n.top)
    nt, nb = tt.group.ngens, bottom.ngens
    top0 = direct_sum(tt.group, coinv)

    frobenius = []
    res_m, tr_m = m.res.matrix, m.tr.matrix
    res_n, tr_n = n.res.matrix, n.tr.matrix
    for i in range(m.top.ngens):
        for l in range(n.bottom.ngens):
            v = [0] * (nt + nb)
            for j in range(n.top.ngens):
                v[tt.index(i, j)] += tr_n.at(j, l)
            for k in range(m.bottom.ngens):
                v[nt + bt.index(k, l)] -= res_m.at(k, i)
            frobenius.append(v)
    for k in range(m.bottom.ngens):
        for j in range(n.top.ngens):
            v = [0] * (nt + nb)
            for i in range(m.top.ngens):
                v[tt.index(i, j)] += tr_m.at(i, k)
            for l in range(n.bottom.ngens):
                v[nt + bt.index(k, l)] -= res_n.at(l, j)
            frobenius.append(v)

    top, _ = quotient_by(top0, frobenius)
    tr = AbHom(bottom, top, vstack(IntMatrix.zeros(nt, nb), IntMatrix.identity(nb)))
    res_matrix = res_m.kron(res_n).hstack(action_norm(gamma, p).matrix)
    res = AbHom(top, bottom, res_matrix)
    return MackeyFunctor(p, top, bottom, gamma, res, tr)


# -- morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class MackeyMorphism:
    """A pair of tier maps; see :func:`verify_morphism` for the conditions."""

    source: MackeyFunctor
    target: MackeyFunctor
    phi_top: AbHom
    phi_bottom: AbHom

    def __post_init__(self):
        if self.phi_top.source != self.source.top or self.phi_top.target != self.target.top:
            raise ValueError("phi_top must map source top to target top")
        if (
            self.phi_bottom.source != self.source.bottom
            or self.phi_bottom.target != self.target.bottom
        ):
            raise ValueError("phi_bottom must map source bottom to target bottom")

    @classmethod
    def identity(cls, m: MackeyFunctor) -> "MackeyMorphism":
        return cls(m, m, AbHom.identity(m.top), AbHom.identity(m.bottom))

    def then(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """Composite: first self, then other."""
        if self.target != other.source:
            raise ValueError("morphisms do not compose")
        return MackeyMorphism(
            self.source,
            other.target,
            other.phi_top @ self.phi_top,
            other.phi_bottom @ self.phi_bottom,
        )


def verify_morphism(f: MackeyMorphism) -> tuple[str, ...]:
    """All violated morphism conditions; empty means a genuine morphism."""
    if f.source.p != f.target.p:
        return ("source and target live over different primes",)
    problems = []
    if not f.phi_top.is_well_defined():
        problems.append("top map is not well-defined")
    if not f.phi_bottom.is_well_defined():
        problems.append("bottom map is not well-defined")
    if not (f.phi_bottom @ f.source.gamma).equals(f.target.gamma @ f.phi_bottom):
        problems.append("bottom map is not equivariant")
    if not (f.target.res @ f.phi_top).equals(f.phi_bottom @ f.source.res):
        problems.append("restriction square does not commute")
    if not (f.target.tr @ f.phi_bottom).equals(f.phi_top @ f.source.tr):
        problems.append("transfer square does not commute")
    return tuple(problems)


def is_mackey_isomorphism(f: MackeyMorphism) -> bool:
    """A genuine morphism that is an isomorphism on both tiers."""
    from .abgroup import is_isomorphism

    if verify_morphism(f):
        return False
    return is_isomorphism(f.phi_top) and is_isomorphism(f.phi_bottom)


def unit_isomorphism(m: MackeyFunctor) -> MackeyMorphism:
    """The canonical map box(burnside(p), M) → M.

    Tensor generators u ⊗ a go to a, t ⊗ a to tr(res(a)), and transfer
    classes t(1 ⊗ x) to tr(x); on bottoms 1 ⊗ x goes to x.  For every valid
    M this is a Mackey isomorphism (the Burnside functor is the box unit).
    """
    src = box_product(burnside(m.p), m)
    nt, nb = m.top.ngens, m.bottom.ngens
    cols = []
    eye = IntMatrix.identity(nt)
    trres = (m.tr @ m.res).matrix
    for j in range(nt):  # u ⊗ a_j
        cols.append(eye.column(j))
    for j in range(nt):  # t ⊗ a_j
        cols.append(trres.column(j))
    for l in range(nb):  # t(1 ⊗ x_l)
        cols.append(m.tr.matrix.column(l))
    phi_top = AbHom(src.top, m.top, IntMatrix.from_columns(cols, rows=nt))
    phi_bottom = AbHom(src.bottom, m.bottom, IntMatrix.identity(nb))
    return MackeyMorphism(src, m, phi_top, phi_bottom)


__all__ = [
    "MackeyFunctor",
    "MackeyMorphism",
    "GSet",
    "is_prime",
    "action_norm",
    "check_axioms",
    "zero_functor",
    "constant_z",
    "burnside",
    "twisted_burnside",
    "fixed_point_functor",
    "orbit_functor",
    "permutation_functor",
    "gset_product",
    "direct_sum_functors",
    "box_product",
    "verify_morphism",
    "is_mackey_isomorphism",
    "unit_isomorphism",
]
