"""Finitely presented abelian groups and their homomorphisms.

A group is presented by a generator count and a relation matrix whose
*columns* are the relations; the group is Z^ngens modulo the column lattice.
A homomorphism is a ``target.ngens x source.ngens`` integer matrix acting on
coordinate columns.  Every question (element equality, well-definedness,
kernels, cokernels) reduces to integer linear algebra from :mod:`.intlin`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import (
    IntMatrix,
    block_diagonal,
    hstack,
    kernel_basis,
    lattice_basis,
    lattice_contains,
    smith_normal_form,
    solve_linear,
)


@dataclass(frozen=True)
class FpAbGroup:
    """Z^ngens modulo the column lattice of ``relations``.

    >>> invariant_factors(FpAbGroup.cyclic(6))
    (0, (6,))
    """

    ngens: int
    relations: IntMatrix

    def __post_init__(self):
        if self.ngens < 0:
            raise ValueError("generator count must be nonnegative")
        if self.relations.rows != self.ngens:
            raise ValueError(
                f"relation columns have length {self.relations.rows}, expected {self.ngens}"
            )

    @classmethod
    def free(cls, n: int) -> "FpAbGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def cyclic(cls, m: int) -> "FpAbGroup":
        return cls(1, IntMatrix.from_rows([[m]]))

    @classmethod
    def trivial(cls) -> "FpAbGroup":
        return cls.free(0)

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, coords)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def is_trivial(self) -> bool:
        return invariant_factors(self) == (0, ())


class GroupElement:
    """An element of an FpAbGroup, held as a coordinate tuple.

    Equality is equality in the group, i.e. modulo the relation lattice.
    """

    __slots__ = ("group", "coords")

    def __init__(self, group: FpAbGroup, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != group.ngens:
            raise ValueError(f"{len(coords)} coordinates for {group.ngens} generators")
        self.group = group
        self.coords = coords

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._same_group(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._same_group(other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return lattice_contains(self.group.relations, self.coords)

    def __eq__(self, other):
        if not isinstance(other, GroupElement) or self.group != other.group:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def _same_group(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")

    def __repr__(self):
        return f"GroupElement({list(self.coords)})"


def invariant_factors(g: FpAbGroup) -> tuple[int, tuple[int, ...]]:
    """``(free_rank, torsion)`` with torsion a divisibility chain, 1s dropped.

    >>> invariant_factors(FpAbGroup(2, IntMatrix.from_columns([(2, 0), (0, 6)])))
    (0, (2, 6))
    """
    diag = smith_normal_form(g.relations).diagonal()
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d > 1)
    return g.ngens - len(nonzero), torsion


def describe_group(g: FpAbGroup) -> str:
    """A human name built from the invariant factors, e.g. ``Z^2 + Z/4``."""
    free, torsion = invariant_factors(g)
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbHom:
    """A homomorphism of presented groups, as a matrix on coordinates."""

    source: FpAbGroup
    target: FpAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ngens or self.matrix.cols != self.source.ngens:
            raise ValueError(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.ngens}x{self.source.ngens}"
            )

    @classmethod
    def identity(cls, g: FpAbGroup) -> "AbHom":
        return cls(g, g, IntMatrix.identity(g.ngens))

    @classmethod
    def zero(cls, source: FpAbGroup, target: FpAbGroup) -> "AbHom":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def __call__(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return GroupElement(self.target, self.matrix.apply(coords))

    def __matmul__(self, other: "AbHom") -> "AbHom":
        """Composite self ∘ other."""
        if not isinstance(other, AbHom):
            return NotImplemented
        if other.target != self.source:
            raise ValueError("homomorphisms do not compose")
        return AbHom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "AbHom") -> "AbHom":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("homomorphisms with different ends")
        return AbHom(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> "AbHom":
        return AbHom(self.source, self.target, -self.matrix)

    def __sub__(self, other: "AbHom") -> "AbHom":
        return self + (-other)

    def scaled(self, k: int) -> "AbHom":
        return AbHom(self.source, self.target, self.matrix.scaled(k))

    def power(self, k: int) -> "AbHom":
        if self.source != self.target:
            raise ValueError("powers need an endomorphism")
        if k < 0:
            raise ValueError("negative power")
        out = IntMatrix.identity(self.source.ngens)
        for _ in range(k):
            out = self.matrix @ out
        return AbHom(self.source, self.target, out)

    def is_well_defined(self) -> bool:
        """Whether every source relation maps into the target relation lattice.

        >>> z2 = FpAbGroup.cyclic(2); z4 = FpAbGroup.cyclic(4)
        >>> AbHom(z2, z4, IntMatrix.from_rows([[2]])).is_well_defined()
        True
        >>> AbHom(z2, z4, IntMatrix.from_rows([[1]])).is_well_defined()
        False
        """
        rel = self.source.relations
        for j in range(rel.cols):
            if not lattice_contains(self.target.relations, self.matrix.apply(rel.column(j))):
                return False
        return True

    def equals(self, other: "AbHom") -> bool:
        """Equality as maps on the presented groups (not of matrices)."""
        if (self.source, self.target) != (other.source, other.target):
            return False
        diff = self.matrix - other.matrix
        return all(
            lattice_contains(self.target.relations, diff.column(j)) for j in range(diff.cols)
        )


def _preimage_gens(matrix: IntMatrix, modulo: IntMatrix) -> IntMatrix:
    """Generators of the lattice ``{x : matrix·x ∈ column lattice of modulo}``."""
    stacked = matrix.hstack(modulo)
    k = kernel_basis(stacked)
    return k.take_rows(range(matrix.cols))


@dataclass(frozen=True)
class TensorProduct:
    """A tensor product presentation plus the generator-pair indexing."""

    group: FpAbGroup
    left_ngens: int
    right_ngens: int

    def index(self, i: int, j: int) -> int:
        return i * self.right_ngens + j

    def pair(self, k: int) -> tuple[int, int]:
        return divmod(k, self.right_ngens)


def tensor_product(g: FpAbGroup, h: FpAbGroup) -> TensorProduct:
    """G ⊗ H on generator pairs, relations r ⊗ e and e ⊗ r.

    >>> t = tensor_product(FpAbGroup.cyclic(4), FpAbGroup.cyclic(6))
    >>> invariant_factors(t.group)
    (0, (2,))
    """
    eye_g = IntMatrix.identity(g.ngens)
    eye_h = IntMatrix.identity(h.ngens)
    relations = g.relations.kron(eye_h).hstack(eye_g.kron(h.relations))
    return TensorProduct(FpAbGroup(g.ngens * h.ngens, relations), g.ngens, h.ngens)


def direct_sum(g: FpAbGroup, h: FpAbGroup) -> FpAbGroup:
    """G ⊕ H with G's generators first."""
    return FpAbGroup(g.ngens + h.ngens, block_diagonal(g.relations, h.relations))


def quotient_by(g: FpAbGroup, extra) -> tuple[FpAbGroup, AbHom]:
    """Quotient by further relations; returns the quotient and the projection."""
    cols = []
    for item in extra:
        coords = item.coords if isinstance(item, GroupElement) else tuple(int(c) for c in item)
        if len(coords) != g.ngens:
            raise ValueError("relation of the wrong length")
        cols.append(coords)
    extra_mat = IntMatrix.from_columns(cols, rows=g.ngens)
    quot = FpAbGroup(g.ngens, g.relations.hstack(extra_mat))
    return quot, AbHom(g, quot, IntMatrix.identity(g.ngens))


def coinvariants(g: FpAbGroup, gamma: AbHom, p: int) -> tuple[FpAbGroup, AbHom]:
    """Largest quotient on which the order-p action gamma becomes trivial.

    >>> sign = AbHom(FpAbGroup.free(1), FpAbGroup.free(1), IntMatrix.from_rows([[-1]]))
    >>> invariant_factors(coinvariants(FpAbGroup.free(1), sign, 2)[0])
    (0, (2,))
    """
    if gamma.source != g or gamma.target != g:
        raise ValueError("gamma must be an endomorphism of the group")
    if not gamma.is_well_defined():
        raise ValueError("gamma is not well-defined")
    if not gamma.power(p).equals(AbHom.identity(g)):
        raise ValueError("gamma does not have order dividing p")
    diff = gamma.matrix - IntMatrix.identity(g.ngens)
    return quotient_by(g, [diff.column(j) for j in range(diff.cols)])


def kernel(f: AbHom) -> tuple[FpAbGroup, AbHom]:
    """A presentation of ker f and its inclusion into the source.

    The kernel lattice is ``{x : f(x) ∈ target relations}``; the presentation
    is that lattice modulo the source relations.
    """
    gens = _preimage_gens(f.matrix, f.target.relations)
    rels = _preimage_gens(gens, f.source.relations)
    k = FpAbGroup(gens.cols, rels)
    return k, AbHom(k, f.source, gens)


def cokernel(f: AbHom) -> tuple[FpAbGroup, AbHom]:
    """coker f = target / image, with the projection from the target."""
    c = FpAbGroup(f.target.ngens, f.target.relations.hstack(f.matrix))
    return c, AbHom(f.target, c, IntMatrix.identity(f.target.ngens))


def kernel_and_cokernel(f: AbHom) -> tuple[FpAbGroup, FpAbGroup]:
    return kernel(f)[0], cokernel(f)[0]


def is_isomorphism(f: AbHom) -> bool:
    """Whether f is well-defined with trivial kernel and cokernel.

    >>> shear = AbHom(FpAbGroup.free(2), FpAbGroup.free(2),
    ...               IntMatrix.from_rows([[1, 5], [0, 1]]))
    >>> is_isomorphism(shear)
    True
    """
    if not f.is_well_defined():
        return False
    k, c = kernel_and_cokernel(f)
    return k.is_trivial() and c.is_trivial()


def is_torsion_free(g: FpAbGroup) -> bool:
    return invariant_factors(g)[1] == ()


def same_lattice(a: IntMatrix, b: IntMatrix) -> bool:
    """Whether two generating sets span the same column lattice."""
    if a.rows != b.rows:
        raise ValueError("lattices in different ambient spaces")
    return lattice_basis(a) == lattice_basis(b)


__all__ = [
    "FpAbGroup",
    "GroupElement",
    "AbHom",
    "TensorProduct",
    "invariant_factors",
    "describe_group",
    "tensor_product",
    "direct_sum",
    "quotient_by",
    "coinvariants",
    "kernel",
    "cokernel",
    "kernel_and_cokernel",
    "is_isomorphism",
    "is_torsion_free",
    "same_lattice",
]
