"""The semigroup of linear self-maps of GF(p)^n whose restriction to a
fixed subspace U is an invertible map of U.

This layer owns everything specific to that semigroup: membership and
enumeration, the codimension grading of its J-classes and ideal chain,
characterized Green's relations (image / kernel / codimension), the
constructive factorizations behind the generating-set results, the
unit group and its semidirect-product decompositions, and the two
conjugation counterexamples showing which factors fail to be normal.

Every constructive operation verifies its own output exactly (the
recomposition is multiplied back out) and raises
InternalInconsistencyError on failure, so a successful return is a
machine-checked certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

import numpy as np

from .errors import (
    CapacityError,
    ConfigurationError,
    InfeasibleError,
    InternalInconsistencyError,
    PreconditionError,
)
from .gf_linalg import (
    Mat,
    Subspace,
    Vec,
    all_vectors,
    check_modulus,
    extend_basis,
    full_space,
    general_linear,
    gl_order,
    identity_mat,
    image,
    is_complement,
    is_invertible,
    kernel,
    linear_map,
    mat_inverse,
    mat_mul,
    preimage_vector,
    rref_canonical,
    vec_add,
    vec_mat,
    vec_sub,
)
from .semigroup_core import GreenPartitions, SemigroupTable, subtable, rank_search

#: Default ceiling on the semigroup order accepted for full enumeration.
DEFAULT_ENUM_CAP = 2000

FIX_U = "fix_u"
FIX_W = "fix_w"
G_W = "g_w"
N_W = "n_w"
SUBGROUP_KINDS = (FIX_U, FIX_W, G_W, N_W)

GREEN_RELATIONS = ("L", "R", "H", "D", "J")


@dataclass(frozen=True)
class Instance:
    """Ambient configuration: prime p, dimension n, and a distinguished
    r-dimensional subspace U of GF(p)^n held in canonical form."""

    p: int
    n: int
    r: int
    u: Subspace

    def __post_init__(self):
        if not 0 <= self.r < self.n:
            raise ConfigurationError(f"need 0 <= r < n, got r={self.r}, n={self.n}")
        if (self.u.p, self.u.n, self.u.dim) != (self.p, self.n, self.r):
            raise ConfigurationError("subspace does not match the declared (p, n, r)")
        if rref_canonical(self.p, self.n, self.u.basis).basis != self.u.basis:
            raise ConfigurationError("subspace basis is not in canonical form")


def make_instance(p: int, n: int, r: int, u_rows=None) -> Instance:
    """Build an Instance; U defaults to the span of the first r standard vectors."""
    check_modulus(p)
    if n < 1:
        raise ConfigurationError("ambient dimension must be at least 1")
    if not 0 <= r < n:
        raise ConfigurationError(f"need 0 <= r < n, got r={r}, n={n}")
    if u_rows is None:
        u = Subspace(p, n, identity_mat(n)[:r])
    else:
        u = rref_canonical(p, n, u_rows)
        if u.dim != r:
            raise ConfigurationError(f"u_basis spans dimension {u.dim}, expected {r}")
    return Instance(p, n, r, u)


def predicted_order(inst: Instance) -> int:
    """Closed-form order: |GL_r(p)| * p^(n(n-r))."""
    return gl_order(inst.p, inst.r) * inst.p ** (inst.n * (inst.n - inst.r))


def is_member(inst: Instance, m: Mat) -> bool:
    """True iff U*m = U, i.e. the restriction of m to U is invertible."""
    if len(m) != inst.n or any(len(row) != inst.n for row in m):
        raise ConfigurationError(f"expected an {inst.n}x{inst.n} matrix")
    rows = [vec_mat(inst.p, u_row, m) for u_row in inst.u.basis]
    return rref_canonical(inst.p, inst.n, rows) == inst.u


@lru_cache(maxsize=None)
def _members(inst: Instance) -> tuple[Mat, ...]:
    # Adapted-basis enumeration: pick the images of a U-basis from GL(U)
    # and the images of a fixed complement basis freely from V.
    p, n, r = inst.p, inst.n, inst.r
    anchors = extend_basis(inst.u.basis, full_space(p, n))
    dom_inv = mat_inverse(p, inst.u.basis + tuple(anchors))
    vecs = all_vectors(p, n)
    out = []
    for a in general_linear(p, r):
        u_imgs = tuple(vec_mat(p, row, inst.u.basis) for row in a)
        for w_imgs in iter_product(vecs, repeat=n - r):
            out.append(mat_mul(p, dom_inv, u_imgs + w_imgs))
    out.sort()
    return tuple(out)


def _cayley(p: int, mats) -> list[tuple[int, ...]]:
    # Batched products; mats must be sorted so packed keys are ascending.
    count = len(mats)
    n = len(mats[0])
    arr = np.array(mats, dtype=np.int64)
    weights = p ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    keys = arr.reshape(count, -1) @ weights
    canon = list(range(count))
    rows: list[tuple[int, ...]] = []
    chunk = max(1, 4_000_000 // max(1, count * n * n))
    for lo in range(0, count, chunk):
        prod = np.matmul(arr[lo : lo + chunk, None, :, :], arr[None, :, :, :]) % p
        packed = prod.reshape(prod.shape[0], count, n * n) @ weights
        pos = np.searchsorted(keys, packed)
        ok = (pos < count) & (keys[np.minimum(pos, count - 1)] == packed)
        if not ok.all():
            raise InternalInconsistencyError("a product escaped the member list")
        for row in pos.tolist():
            rows.append(tuple(canon[v] for v in row))
    return rows


@lru_cache(maxsize=None)
def _table(inst: Instance) -> SemigroupTable:
    mats = _members(inst)
    if len(mats) != predicted_order(inst):
        raise InternalInconsistencyError(
            f"enumerated {len(mats)} members, closed form predicts {predicted_order(inst)}"
        )
    rows = _cayley(inst.p, mats)
    identity_idx = mats.index(identity_mat(inst.n))
    return SemigroupTable(mats, rows, identity_idx=identity_idx)


def enumerate_semigroup(inst: Instance, cap: int | None = None) -> SemigroupTable:
    """Full element list and Cayley table; refuses orders above the cap."""
    limit = DEFAULT_ENUM_CAP if cap is None else cap
    order = predicted_order(inst)
    if order > limit:
        raise CapacityError(f"predicted order {order} exceeds enumeration cap {limit}")
    return _table(inst)


@lru_cache(maxsize=None)
def _profiles(inst: Instance) -> tuple[tuple[Subspace, Subspace, int], ...]:
    """(image, kernel, codim) for each element of the enumerated table."""
    out = []
    for m in _table(inst).elements:
        img = image(inst.p, m)
        out.append((img, kernel(inst.p, m), img.dim - inst.r))
    return tuple(out)


def codim(inst: Instance, m: Mat) -> int:
    """dim(V m / U) = dim(image) - r; the grading invariant of the J-classes."""
    if not is_member(inst, m):
        raise PreconditionError("matrix is not a member of the semigroup")
    return image(inst.p, m).dim - inst.r


def j_class(inst: Instance, k: int) -> frozenset[Mat]:
    """Members of codimension exactly k."""
    if not 0 <= k <= inst.n - inst.r:
        raise PreconditionError(f"codimension {k} outside [0, {inst.n - inst.r}]")
    table = _table(inst)
    profs = _profiles(inst)
    return frozenset(table.elements[i] for i in range(len(table)) if profs[i][2] == k)


def q_ideal(inst: Instance, k: int) -> frozenset[Mat]:
    """Members of codimension strictly below k; the k-th ideal of the chain."""
    if not 1 <= k <= inst.n - inst.r:
        raise PreconditionError(f"ideal index {k} outside [1, {inst.n - inst.r}]")
    table = _table(inst)
    profs = _profiles(inst)
    return frozenset(table.elements[i] for i in range(len(table)) if profs[i][2] < k)


def green_char(inst: Instance, a: Mat, b: Mat, relation: str) -> bool:
    """Characterized Green test: L by image, R by kernel, H by both,
    D and J by codimension."""
    rel = relation.upper()
    if rel not in GREEN_RELATIONS:
        raise PreconditionError(f"unknown Green relation {relation!r}")
    if not (is_member(inst, a) and is_member(inst, b)):
        raise PreconditionError("both arguments must be members")
    p = inst.p
    if rel == "L":
        return image(p, a) == image(p, b)
    if rel == "R":
        return kernel(p, a) == kernel(p, b)
    if rel == "H":
        return image(p, a) == image(p, b) and kernel(p, a) == kernel(p, b)
    return image(p, a).dim == image(p, b).dim


def green_char_partitions(inst: Instance) -> GreenPartitions:
    """All five partitions from the characterizations (no table products used)."""
    profs = _profiles(inst)

    def group(key):
        buckets: dict[object, list[int]] = {}
        for i, prof in enumerate(profs):
            buckets.setdefault(key(prof), []).append(i)
        return tuple(sorted((frozenset(g) for g in buckets.values()), key=min))

    l_part = group(lambda prof: prof[0])
    r_part = group(lambda prof: prof[1])
    h_part = group(lambda prof: (prof[0], prof[1]))
    d_part = group(lambda prof: prof[2])
    return GreenPartitions(l=l_part, r=r_part, h=h_part, d=d_part, j=d_part)


def _transversal(inst: Instance, ker: Subspace) -> list[Vec]:
    # Vectors completing (kernel basis, U basis) to a basis of V.
    return extend_basis(ker.basis + inst.u.basis, full_space(inst.p, inst.n))


def _act(inst: Instance, rows, m: Mat) -> tuple[Vec, ...]:
    return tuple(vec_mat(inst.p, row, m) for row in rows)


def dclass_witness(inst: Instance, a: Mat, b: Mat) -> Mat:
    """A member with the image of a and the kernel of b.

    Such an element links a and b inside their common D-class; its
    existence is exactly what makes equal codimension sufficient.
    """
    p = inst.p
    ka, kb = codim(inst, a), codim(inst, b)
    if ka != kb:
        raise PreconditionError("witness requires equal codimension")
    img_a = image(p, a)
    ker_b = kernel(p, b)
    trans_b = _transversal(inst, ker_b)
    img_trans = extend_basis(inst.u.basis, img_a)
    domain = ker_b.basis + tuple(trans_b) + inst.u.basis
    zeros = ((0,) * inst.n,) * ker_b.dim
    images = zeros + tuple(img_trans) + _act(inst, inst.u.basis, a)
    gamma = linear_map(p, domain, images)
    if not is_member(inst, gamma) or image(p, gamma) != img_a or kernel(p, gamma) != ker_b:
        raise InternalInconsistencyError("constructed witness has the wrong image or kernel")
    return gamma


def factor_through(inst: Instance, a: Mat, b: Mat) -> tuple[Mat, Mat]:
    """Members (lam, mu) with a = lam * b * mu, possible iff codim(a) <= codim(b)."""
    p, n = inst.p, inst.n
    ka, kb = codim(inst, a), codim(inst, b)
    if ka > kb:
        raise InfeasibleError(
            f"codim {ka} cannot factor through codim {kb}: products only lower codimension"
        )
    ker_a, ker_b = kernel(p, a), kernel(p, b)
    w_rows = _transversal(inst, ker_a)          # ka vectors
    w_primed = _transversal(inst, ker_b)[:ka]   # matching transversal for b
    zeros_a = ((0,) * n,) * ker_a.dim
    lam = linear_map(
        p,
        ker_a.basis + tuple(w_rows) + inst.u.basis,
        zeros_a + tuple(w_primed) + inst.u.basis,
    )
    wpb = _act(inst, w_primed, b)
    ub = _act(inst, inst.u.basis, b)
    tail = extend_basis(wpb + ub, full_space(p, n))
    zeros_t = ((0,) * n,) * len(tail)
    mu = linear_map(
        p,
        tuple(tail) + wpb + ub,
        zeros_t + _act(inst, w_rows, a) + _act(inst, inst.u.basis, a),
    )
    recomposed = mat_mul(p, mat_mul(p, lam, b), mu)
    if recomposed != a or not (is_member(inst, lam) and is_member(inst, mu)):
        raise InternalInconsistencyError("factor-through construction failed to recompose")
    return lam, mu


def regular_witness(inst: Instance, a: Mat) -> Mat:
    """An inner inverse: b with a*b*a = a and b*a*b = b."""
    p, n = inst.p, inst.n
    if not is_member(inst, a):
        raise PreconditionError("matrix is not a member of the semigroup")
    if is_invertible(p, a):
        return mat_inverse(p, a)
    ker_a = kernel(p, a)
    w_rows = _transversal(inst, ker_a)
    img_a = image(p, a)
    tail = extend_basis(img_a.basis, full_space(p, n))
    zeros = ((0,) * n,) * len(tail)
    b = linear_map(
        p,
        _act(inst, w_rows, a) + _act(inst, inst.u.basis, a) + tuple(tail),
        tuple(w_rows) + inst.u.basis + zeros,
    )
    aba = mat_mul(p, mat_mul(p, a, b), a)
    bab = mat_mul(p, mat_mul(p, b, a), b)
    if aba != a or bab != b or not is_member(inst, b):
        raise InternalInconsistencyError("inner inverse construction failed")
    return b


def raise_factor(inst: Instance, a: Mat) -> tuple[Mat, Mat]:
    """Split a of codimension k <= n-r-2 as lam*mu with both factors one grade up.

    The kernel then has dimension at least 2: one kernel line is routed
    through a fresh complement vector by lam, and mu keeps a second
    complement vector alive while killing the first, so both factors
    have codimension exactly k+1.
    """
    p, n = inst.p, inst.n
    k = codim(inst, a)
    if k > n - inst.r - 2:
        raise PreconditionError(
            f"raise requires codim <= {n - inst.r - 2} so the kernel has dimension >= 2"
        )
    ker_a = kernel(p, a)
    trans = _transversal(inst, ker_a)           # k vectors
    fresh = extend_basis(image(p, a).basis, full_space(p, n))  # >= 2 vectors
    ta = _act(inst, trans, a)
    ua = _act(inst, inst.u.basis, a)
    kernel_imgs = (fresh[0],) + ((0,) * n,) * (ker_a.dim - 1)
    lam = linear_map(p, tuple(trans) + ker_a.basis + inst.u.basis, ta + kernel_imgs + ua)
    mu_imgs = list(ta)
    mu_imgs.append((0,) * n)                    # kill the fresh line used by lam
    mu_imgs.append(fresh[1])                    # keep the second fresh line alive
    mu_imgs.extend(((0,) * n,) * (len(fresh) - 2))
    mu_imgs.extend(ua)
    mu = linear_map(p, ta + tuple(fresh) + ua, tuple(mu_imgs))
    if mat_mul(p, lam, mu) != a:
        raise InternalInconsistencyError("raise factorization failed to recompose")
    if codim(inst, lam) != k + 1 or codim(inst, mu) != k + 1:
        raise InternalInconsistencyError("raise factors landed in the wrong grade")
    return lam, mu


def sandwich_factor(inst: Instance, target: Mat, a: Mat) -> tuple[Mat, Mat]:
    """Invertible members (lam, mu) with lam * a * mu = target.

    Both a and target must have codimension n-r-1; conjugating by units
    moves freely inside that top proper grade.
    """
    p, n = inst.p, inst.n
    m = n - inst.r - 1
    if codim(inst, a) != m or codim(inst, target) != m:
        raise PreconditionError(f"sandwich factorization requires codimension {m}")
    ker_a, ker_t = kernel(p, a), kernel(p, target)
    trans_a, trans_t = _transversal(inst, ker_a), _transversal(inst, ker_t)
    ext_a = extend_basis(image(p, a).basis, full_space(p, n))
    ext_t = extend_basis(image(p, target).basis, full_space(p, n))
    lam = linear_map(
        p,
        tuple(trans_t) + ker_t.basis + inst.u.basis,
        tuple(trans_a) + ker_a.basis + inst.u.basis,
    )
    mu = linear_map(
        p,
        _act(inst, trans_a, a) + tuple(ext_a) + _act(inst, inst.u.basis, a),
        _act(inst, trans_t, target) + tuple(ext_t) + _act(inst, inst.u.basis, target),
    )
    recomposed = mat_mul(p, mat_mul(p, lam, a), mu)
    ok = (
        recomposed == target
        and is_member(inst, lam)
        and is_member(inst, mu)
        and is_invertible(p, lam)
        and is_invertible(p, mu)
    )
    if not ok:
        raise InternalInconsistencyError("sandwich factorization failed to recompose")
    return lam, mu


def generating_set(inst: Instance) -> frozenset[Mat]:
    """The unit group plus one fixed element a single grade below it.

    The extra element is the lexicographically least matrix of
    codimension n-r-1, so the set is deterministic.
    """
    units = j_class(inst, inst.n - inst.r)
    below = j_class(inst, inst.n - inst.r - 1)
    return frozenset(units | {min(below)})


def unit_group_subtable(inst: Instance) -> SemigroupTable:
    """The unit group J(n-r) as a standalone table."""
    profs = _profiles(inst)
    top = inst.n - inst.r
    idxs = [i for i in range(len(profs)) if profs[i][2] == top]
    return subtable(_table(inst), idxs)


def rank_value(inst: Instance, rank_cap: int = 4, budget: int | None = 200_000) -> int | None:
    """Minimal generating-set size, computed as (rank of the unit group) + 1.

    Returns None when the exhaustive subset sweep over the unit group
    would exceed the budget or finds nothing within rank_cap.
    """
    units = unit_group_subtable(inst)
    try:
        found = rank_search(units, range(len(units)), rank_cap, budget=budget)
    except CapacityError:
        return None
    if found is None:
        return None
    return found[0] + 1


def is_idempotent_by_image(inst: Instance, m: Mat) -> bool:
    """Idempotency via the restriction test: m fixes its image pointwise."""
    if not is_member(inst, m):
        raise PreconditionError("matrix is not a member of the semigroup")
    return all(vec_mat(inst.p, row, m) == row for row in image(inst.p, m).basis)


def minimal_idempotents(inst: Instance) -> frozenset[Mat]:
    """Idempotent members whose image is exactly U.

    These are the minimal idempotents under the natural partial order;
    there are p^(r(n-r)) of them, one per complement of U serving as
    the kernel.
    """
    table = _table(inst)
    profs = _profiles(inst)
    out = []
    for i, m in enumerate(table.elements):
        if profs[i][2] == 0 and table.mul[i][i] == i:
            out.append(m)
    return frozenset(out)


def _require_subgroup_setting(inst: Instance, kind: str, w: Subspace | None) -> None:
    if inst.r < 1:
        raise PreconditionError("unit-group subgroup structure requires r >= 1")
    if kind not in SUBGROUP_KINDS:
        raise PreconditionError(f"unknown subgroup kind {kind!r}")
    if kind != FIX_U:
        if w is None:
            raise PreconditionError(f"subgroup kind {kind!r} needs a complement W")
        if not is_complement(w, inst.u):
            raise PreconditionError("W is not a complement of U")


def _fixes_pointwise(inst: Instance, m: Mat, rows) -> bool:
    return all(vec_mat(inst.p, row, m) == tuple(row) for row in rows)


def special_subgroup(inst: Instance, kind: str, w: Subspace | None = None) -> frozenset[Mat]:
    """One of the structural subgroups of the unit group.

    fix_u: units restricting to the identity on U.
    fix_w: units restricting to the identity on the complement W.
    g_w:   fix_u elements mapping W onto itself.
    n_w:   fix_u elements translating each W-vector by an element of U.
    """
    _require_subgroup_setting(inst, kind, w)
    p = inst.p
    units = sorted(j_class(inst, inst.n - inst.r))
    picked = []
    for m in units:
        if kind == FIX_U:
            keep = _fixes_pointwise(inst, m, inst.u.basis)
        elif kind == FIX_W:
            keep = _fixes_pointwise(inst, m, w.basis)
        elif kind == G_W:
            keep = _fixes_pointwise(inst, m, inst.u.basis) and (
                rref_canonical(p, inst.n, _act(inst, w.basis, m)) == w
            )
        else:
            keep = _fixes_pointwise(inst, m, inst.u.basis) and all(
                inst.u.contains(vec_sub(p, vec_mat(p, row, m), row)) for row in w.basis
            )
        if keep:
            picked.append(m)
    group = frozenset(picked)
    ident = identity_mat(inst.n)
    if ident not in group:
        raise InternalInconsistencyError("subgroup is missing the identity")
    for a in picked:
        for b in picked:
            if mat_mul(p, a, b) not in group:
                raise InternalInconsistencyError("subgroup is not closed under products")
    return group


def decompose_unit(inst: Instance, a: Mat, w: Subspace) -> tuple[Mat, Mat]:
    """Split a unit as (fix_w part) * (fix_u part); the split is unique."""
    _require_subgroup_setting(inst, FIX_W, w)
    p = inst.p
    if not (is_member(inst, a) and is_invertible(p, a)):
        raise PreconditionError("decomposition is defined on units only")
    first = linear_map(p, w.basis + inst.u.basis, w.basis + _act(inst, inst.u.basis, a))
    second = mat_mul(p, mat_inverse(p, first), a)
    ok = (
        mat_mul(p, first, second) == a
        and _fixes_pointwise(inst, first, w.basis)
        and _fixes_pointwise(inst, second, inst.u.basis)
        and is_member(inst, second)
    )
    if not ok:
        raise InternalInconsistencyError("unit decomposition failed to verify")
    return first, second


def decompose_fix_u(inst: Instance, a: Mat, w: Subspace) -> tuple[Mat, Mat]:
    """Split a U-fixing unit as (W-stabilizing part) * (translation part).

    The translation part moves each basis vector w_i of W by the unique
    u'_i in U with w_i + u'_i inside the image of W under a; the other
    factor is recovered through preimages and stabilizes W.
    """
    _require_subgroup_setting(inst, G_W, w)
    p, n = inst.p, inst.n
    if not (is_member(inst, a) and is_invertible(p, a) and _fixes_pointwise(inst, a, inst.u.basis)):
        raise PreconditionError("decomposition is defined on U-fixing units only")
    moved = _act(inst, w.basis, a)
    mixed_inv = mat_inverse(p, moved + inst.u.basis)
    translated = []
    for row in w.basis:
        coeffs = vec_mat(p, row, mixed_inv)
        u_part = [0] * n
        for c, u_row in zip(coeffs[len(moved) :], inst.u.basis):
            if c:
                for jj, x in enumerate(u_row):
                    u_part[jj] += c * x
        shift = tuple((-x) % p for x in u_part)
        translated.append(vec_add(p, row, shift))
    translation = linear_map(p, w.basis + inst.u.basis, tuple(translated) + inst.u.basis)
    pre = tuple(preimage_vector(p, a, t) for t in translated)
    stabilizer = linear_map(p, pre + inst.u.basis, w.basis + inst.u.basis)
    w_image = rref_canonical(p, n, _act(inst, w.basis, stabilizer))
    ok = (
        mat_mul(p, stabilizer, translation) == a
        and w_image == w
        and _fixes_pointwise(inst, stabilizer, inst.u.basis)
        and _fixes_pointwise(inst, translation, inst.u.basis)
        and all(inst.u.contains(vec_sub(p, t, row)) for t, row in zip(translated, w.basis))
    )
    if not ok:
        raise InternalInconsistencyError("fix-U decomposition failed to verify")
    return stabilizer, translation


def subgroup_iso_check(inst: Instance, kind: str, w: Subspace | None = None) -> bool:
    """Verify the structural isomorphism for the requested subgroup.

    fix_w maps onto GL(U) by restriction to U, g_w onto GL(W) by
    restriction to W, and n_w onto the additive group U^(n-r) by
    extracting the translation tuple.  The map is checked to be a
    bijection and a homomorphism over the whole subgroup.
    """
    _require_subgroup_setting(inst, kind, w)
    if kind == FIX_U:
        raise PreconditionError("no canonical comparison group for fix_u; decompose it instead")
    p = inst.p
    members = sorted(special_subgroup(inst, kind, w))

    if kind in (FIX_W, G_W):
        space = inst.u if kind == FIX_W else w
        degree = space.dim

        def to_small(m):
            return tuple(space.coordinates(vec_mat(p, row, m)) for row in space.basis)

        mapped = [to_small(m) for m in members]
        if set(mapped) != set(general_linear(p, degree)) or len(set(mapped)) != len(members):
            return False
        for a, fa in zip(members, mapped):
            for b, fb in zip(members, mapped):
                if to_small(mat_mul(p, a, b)) != mat_mul(p, fa, fb):
                    return False
        return True

    def to_tuple(m):
        return tuple(vec_sub(p, vec_mat(p, row, m), row) for row in w.basis)

    mapped = [to_tuple(m) for m in members]
    target = set(iter_product(inst.u.vectors(), repeat=w.dim))
    if set(mapped) != target or len(set(mapped)) != len(members):
        return False
    for a, fa in zip(members, mapped):
        for b, fb in zip(members, mapped):
            summed = tuple(vec_add(p, x, y) for x, y in zip(fa, fb))
            if to_tuple(mat_mul(p, a, b)) != summed:
                return False
    return True


CONJUGATION_CASES = ("fix_w_in_units", "g_w_in_fix_u")


@dataclass(frozen=True)
class ConjugationEscapeReport:
    """Record of one conjugation computation leaving a subgroup."""

    case: str
    p: int
    instance: Instance
    complement: Subspace
    alpha: Mat
    beta: Mat
    conjugate: Mat
    conjugated_complement: Subspace
    escaped: bool


def nonnormality_example(p: int, case: str) -> ConjugationEscapeReport:
    """Reproduce the conjugation witnesses showing two subgroups are not normal.

    fix_w_in_units: in dimension 3 with dim U = 2, conjugating the swap
    of the two U-basis vectors by the unit sending w to w + u_1 moves W.
    g_w_in_fix_u: in dimension 3 with dim U = 1, conjugating the swap of
    the two W-basis vectors by the U-fixing unit sending w_1 to w_1 + u
    moves W as well.
    """
    check_modulus(p)
    if case not in CONJUGATION_CASES:
        raise PreconditionError(f"unknown case {case!r}")
    if case == "fix_w_in_units":
        inst = make_instance(p, 3, 2)
        wv = (0, 0, 1)
        u1, u2 = inst.u.basis
        comp = rref_canonical(p, 3, [wv])
        alpha = linear_map(p, (wv, u1, u2), (vec_add(p, wv, u1), u1, u2))
        beta = linear_map(p, (wv, u1, u2), (wv, u2, u1))
        inside = lambda m: _fixes_pointwise(inst, m, comp.basis)
        if not (is_member(inst, alpha) and is_invertible(p, alpha) and inside(beta)):
            raise InternalInconsistencyError("conjugation witnesses are malformed")
    else:
        inst = make_instance(p, 3, 1)
        w1, w2 = (0, 1, 0), (0, 0, 1)
        (u1,) = inst.u.basis
        comp = rref_canonical(p, 3, [w1, w2])
        alpha = linear_map(p, (w1, w2, u1), (vec_add(p, w1, u1), w2, u1))
        beta = linear_map(p, (w1, w2, u1), (w2, w1, u1))
        in_fix_u = lambda m: _fixes_pointwise(inst, m, inst.u.basis)
        inside = lambda m: in_fix_u(m) and rref_canonical(p, 3, _act(inst, comp.basis, m)) == comp
        if not (in_fix_u(alpha) and is_invertible(p, alpha) and inside(beta)):
            raise InternalInconsistencyError("conjugation witnesses are malformed")
    conj = mat_mul(p, mat_mul(p, alpha, beta), mat_inverse(p, alpha))
    moved = rref_canonical(p, 3, _act(inst, comp.basis, conj))
    escaped = not inside(conj)
    if not escaped:
        raise InternalInconsistencyError("conjugate unexpectedly stayed in the subgroup")
    return ConjugationEscapeReport(
        case=case,
        p=p,
        instance=inst,
        complement=comp,
        alpha=alpha,
        beta=beta,
        conjugate=conj,
        conjugated_complement=moved,
        escaped=escaped,
    )


def j_class_count_report(inst: Instance) -> dict:
    """Observed J-class count versus the quotient dimension n - r.

    The grading runs over codimensions 0..n-r, so the observed count is
    n-r+1; the report flags any disagreement with the bare quotient
    dimension instead of asserting either value.
    """
    observed = len(_table(inst).green().j)
    quotient_dim = inst.n - inst.r
    return {
        "observed": observed,
        "quotient_dim": quotient_dim,
        "flagged": observed != quotient_dim,
    }
