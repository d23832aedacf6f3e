"""Deciding when two instances carry isomorphic semigroups.

Over a common prime field the semigroups are isomorphic exactly when
the ambient dimensions and the distinguished-subspace dimensions
match; the witness is conjugation by any ambient isomorphism carrying
one distinguished subspace onto the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistencyError, PreconditionError, UnsupportedComparisonError
from .gf_linalg import (
    Mat,
    extend_basis,
    full_space,
    linear_map,
    mat_inverse,
    mat_mul,
    rref_canonical,
    vec_mat,
)
from .gl_restriction import DEFAULT_ENUM_CAP, Instance, enumerate_semigroup, is_member, predicted_order


@dataclass(frozen=True)
class IsoWitness:
    """Conjugating map phi with U1*phi = U2, plus the induced element
    bijection psi between the two tables (None when not enumerated)."""

    source: Instance
    target: Instance
    phi: Mat
    phi_inv: Mat
    psi: tuple[int, ...] | None


def decide_isomorphic(i1: Instance, i2: Instance, cap: int | None = None) -> IsoWitness | None:
    """Return a verified witness, or None when no isomorphism exists.

    Instances over different primes are refused outright rather than
    answered.  When both semigroups fit under the enumeration cap the
    element bijection is built and checked multiplicative on every
    pair of the full tables; otherwise only phi is returned.
    """
    if i1.p != i2.p:
        raise UnsupportedComparisonError("instances live over different prime fields")
    if i1.n != i2.n or i1.r != i2.r:
        return None
    p, n = i1.p, i1.n
    comp1 = extend_basis(i1.u.basis, full_space(p, n))
    comp2 = extend_basis(i2.u.basis, full_space(p, n))
    phi = linear_map(p, tuple(comp1) + i1.u.basis, tuple(comp2) + i2.u.basis)
    phi_inv = mat_inverse(p, phi)
    carried = rref_canonical(p, n, [vec_mat(p, row, phi) for row in i1.u.basis])
    if carried != i2.u:
        raise InternalInconsistencyError("ambient map failed to carry U onto its target")

    limit = DEFAULT_ENUM_CAP if cap is None else cap
    psi = None
    if predicted_order(i1) <= limit and predicted_order(i2) <= limit:
        t1 = enumerate_semigroup(i1, cap=limit)
        t2 = enumerate_semigroup(i2, cap=limit)
        if len(t1) != len(t2):
            raise InternalInconsistencyError("matched parameters but different orders")
        mapping = []
        for m in t1.elements:
            mapping.append(t2.index_of(mat_mul(p, mat_mul(p, phi_inv, m), phi)))
        if len(set(mapping)) != len(mapping):
            raise InternalInconsistencyError("conjugation is not injective on elements")
        for i in range(len(t1)):
            row1 = t1.mul[i]
            row2 = t2.mul[mapping[i]]
            for j in range(len(t1)):
                if mapping[row1[j]] != row2[mapping[j]]:
                    raise InternalInconsistencyError("conjugation failed to respect a product")
        psi = tuple(mapping)
    return IsoWitness(source=i1, target=i2, phi=phi, phi_inv=phi_inv, psi=psi)


def transport(witness: IsoWitness, m: Mat) -> Mat:
    """Image of a source element under the witness: phi^-1 * m * phi."""
    if not is_member(witness.source, m):
        raise PreconditionError("matrix is not a member of the source semigroup")
    p = witness.source.p
    moved = mat_mul(p, mat_mul(p, witness.phi_inv, m), witness.phi)
    if not is_member(witness.target, moved):
        raise InternalInconsistencyError("transported element left the target semigroup")
    return moved
