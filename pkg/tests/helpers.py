"""Shared test utilities: random generators and hand-built isomorphisms."""

from __future__ import annotations

from mackeybox.intlin import IntMatrix, solve_linear
from mackeybox.abgroup import AbHom, FpAbGroup
from mackeybox.mackey import (
    GSet,
    MackeyFunctor,
    MackeyMorphism,
    box_product,
    burnside,
    constant_z,
    direct_sum_functors,
    fixed_point_functor,
    gset_product,
    orbit_functor,
    permutation_functor,
    twisted_burnside,
    zero_functor,
)

PRIMES = (2, 3, 5, 7)


def random_presentation(rng, max_gens=3, max_rels=3, entry=4) -> FpAbGroup:
    n = rng.randint(0, max_gens)
    k = rng.randint(0, max_rels)
    cols = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(k)]
    return FpAbGroup(n, IntMatrix.from_columns(cols, rows=n))


def random_module(rng, p, max_gens=3, entry=4) -> tuple[FpAbGroup, AbHom]:
    """A presented group with a valid order-p action (relations action-closed)."""
    n = rng.randint(0, max_gens)
    kinds = ["identity"]
    if p == 2 and n >= 1:
        kinds.append("sign")
    if n >= p:
        kinds.append("cycle")
    kind = rng.choice(kinds)
    if kind == "identity":
        mat = IntMatrix.identity(n)
    elif kind == "sign":
        flips = [rng.choice((1, -1)) for _ in range(n)]
        mat = IntMatrix.from_rows(
            [[flips[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )
    else:
        rows = [[0] * n for _ in range(n)]
        for i in range(p):
            rows[(i + 1) % p][i] = 1
        for i in range(p, n):
            rows[i][i] = 1
        mat = IntMatrix.from_rows(rows, cols=n)
    cols = []
    for _ in range(rng.randint(0, max_gens)):
        v = [rng.randint(-entry, entry) for _ in range(n)]
        for _ in range(p):  # close the relation set under the action
            cols.append(v)
            v = list(mat.apply(v))
    group = FpAbGroup(n, IntMatrix.from_columns(cols, rows=n))
    gamma = AbHom(group, group, mat)
    return group, gamma


def random_functor(rng, p, max_gens=3) -> MackeyFunctor:
    """A random valid functor with both tiers within the generator budget."""
    while True:
        kind = rng.choice(
            ["zero", "constant", "burnside", "twisted", "perm", "fixed", "orbit", "sum"]
        )
        if kind == "zero":
            m = zero_functor(p)
        elif kind == "constant":
            m = constant_z(p)
        elif kind == "burnside":
            m = burnside(p)
        elif kind == "twisted":
            m = twisted_burnside(p, rng.randint(-6, 6))
        elif kind == "perm":
            s = GSet(rng.randint(0, 2), rng.randint(0, 1))
            if s.fixed + p * s.free > max_gens:
                continue
            m = permutation_functor(p, s)
        elif kind in ("fixed", "orbit"):
            module, gamma = random_module(rng, p, max_gens=max_gens)
            build = fixed_point_functor if kind == "fixed" else orbit_functor
            m = build(p, module, gamma)
        else:
            a = random_functor(rng, p, max_gens=max(1, max_gens // 2))
            b = random_functor(rng, p, max_gens=max(1, max_gens // 2))
            m = direct_sum_functors(a, b)
        if m.top.ngens <= max_gens and m.bottom.ngens <= max_gens:
            return m


def pad_group(g: FpAbGroup, combo) -> tuple[FpAbGroup, AbHom, AbHom]:
    """Adjoin a redundant generator equal to ``combo`` of the old ones.

    Returns ``(g2, fwd, back)`` with fwd: g2 → g and back: g → g2 mutually
    inverse isomorphisms.
    """
    n = g.ngens
    combo = list(combo)
    padded = g.relations.vstack(IntMatrix.zeros(1, g.relations.cols))
    new_col = combo + [-1]
    g2 = FpAbGroup(n + 1, padded.hstack(IntMatrix.from_columns([new_col], rows=n + 1)))
    fwd = AbHom(g2, g, IntMatrix.identity(n).hstack(IntMatrix.from_columns([combo], rows=n)))
    back = AbHom(g, g2, IntMatrix.identity(n).vstack(IntMatrix.zeros(1, n)))
    return g2, fwd, back


def pad_functor(m: MackeyFunctor, rng) -> MackeyFunctor:
    """An isomorphic functor whose tiers carry a redundant extra generator."""
    t2, t_fwd, t_back = pad_group(m.top, [rng.randint(-3, 3) for _ in range(m.top.ngens)])
    b2, b_fwd, b_back = pad_group(m.bottom, [rng.randint(-3, 3) for _ in range(m.bottom.ngens)])
    return MackeyFunctor(
        m.p,
        t2,
        b2,
        b_back @ m.gamma @ b_fwd,
        b_back @ m.res @ t_fwd,
        t_back @ m.tr @ b_fwd,
    )


# -- hand-built isomorphisms for the worked box products ---------------------


def constant_box_morphism(p: int) -> MackeyMorphism:
    """box(constant, constant) → constant: a ⊗ b ↦ 1, t(1 ⊗ 1) ↦ p."""
    src = box_product(constant_z(p), constant_z(p))
    tgt = constant_z(p)
    phi_top = AbHom(src.top, tgt.top, IntMatrix.from_rows([[1, p]]))
    phi_bottom = AbHom(src.bottom, tgt.bottom, IntMatrix.identity(1))
    return MackeyMorphism(src, tgt, phi_top, phi_bottom)


def twisted_box_morphism(p: int, c: int, d: int) -> MackeyMorphism:
    """box(twist c, twist d) → twist c·d on (u⊗u, u⊗t, t⊗u, t⊗t, t(1⊗1))."""
    src = box_product(twisted_burnside(p, c), twisted_burnside(p, d))
    tgt = twisted_burnside(p, c * d)
    cols = [(1, 0), (0, c), (0, d), (0, p), (0, 1)]
    phi_top = AbHom(src.top, tgt.top, IntMatrix.from_columns(cols, rows=2))
    phi_bottom = AbHom(src.bottom, tgt.bottom, IntMatrix.identity(1))
    return MackeyMorphism(src, tgt, phi_top, phi_bottom)


def c2_orbit_box_morphism() -> MackeyMorphism:
    """box(free-orbit functor, free-orbit functor) → two-free-orbit functor, p = 2.

    The bottom map relabels basis pairs by diagonal orbits; the transfer
    square forces the images of the t(...) generators and the (injective)
    restriction forces the image of the tensor generator.
    """
    m = permutation_functor(2, GSet(0, 1))
    src = box_product(m, m)
    tgt = permutation_functor(2, gset_product(GSet(0, 1), GSet(0, 1), 2))
    orbit_index = {(0, 0): 0, (1, 1): 1, (0, 1): 2, (1, 0): 3}
    cols = []
    for k in range(2):
        for l in range(2):
            v = [0] * 4
            v[orbit_index[(k, l)]] = 1
            cols.append(v)
    phi_b = IntMatrix.from_columns(cols, rows=4)
    top_cols = [solve_linear(tgt.res.matrix, phi_b.apply(src.res.matrix.column(0)))]
    for k in range(2):
        for l in range(2):
            top_cols.append(tgt.tr.matrix.apply(phi_b.column(2 * k + l)))
    phi_top = IntMatrix.from_columns(top_cols, rows=tgt.top.ngens)
    return MackeyMorphism(
        src,
        tgt,
        AbHom(src.top, tgt.top, phi_top),
        AbHom(src.bottom, tgt.bottom, phi_b),
    )
