"""Command-line front end: verify, eggbox, report.

Instance files are flat key = value text (p, n, r, optional u_basis
rows, optional caps).  `verify` runs the whole structural suite with
one pass/fail/skip line per check and a nonzero exit status iff some
check fails; `eggbox` writes a DOT diagram of the D-class grid;
`report` dumps the structural summary as JSON.

Caps resolve in order: command-line flag, then environment
(GLSEMI_ENUM_CAP / GLSEMI_RANK_CAP), then the instance file, then the
package defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .errors import (
    CapacityError,
    ConfigurationError,
    GlsemiError,
    InfeasibleError,
)
from .gf_linalg import (
    enumerate_complements,
    extend_basis,
    full_space,
    identity_mat,
    is_complement,
    mat_inverse,
    mat_mul,
    vec_add,
    vec_mat,
)
from .gl_restriction import (
    DEFAULT_ENUM_CAP,
    FIX_U,
    FIX_W,
    G_W,
    N_W,
    CONJUGATION_CASES,
    Instance,
    decompose_fix_u,
    decompose_unit,
    enumerate_semigroup,
    factor_through,
    generating_set,
    green_char_partitions,
    j_class_count_report,
    make_instance,
    minimal_idempotents,
    nonnormality_example,
    predicted_order,
    raise_factor,
    rank_value,
    regular_witness,
    sandwich_factor,
    dclass_witness,
    special_subgroup,
    subgroup_iso_check,
    unit_group_subtable,
    _profiles,
)
from .isomorphism import decide_isomorphic
from .semigroup_core import (
    SemigroupTable,
    closure_indices,
    idempotents,
    minimal_idempotents_oracle,
    principal_ideal,
    rank_search,
    verify_ideal,
)

DEFAULT_RANK_CAP = 4
RANK_BUDGET = 200_000
ENV_ENUM_CAP = "GLSEMI_ENUM_CAP"
ENV_RANK_CAP = "GLSEMI_RANK_CAP"

_PAIR_SAMPLE = 64
_LIST_SAMPLE = 120
_COMPLEMENT_SAMPLE = 16


@dataclass
class InstanceConfig:
    p: int
    n: int
    r: int
    u_rows: tuple | None = None
    enum_cap: int | None = None
    rank_cap: int | None = None


@dataclass
class CheckResult:
    name: str
    claim: str
    status: str  # pass | fail | skip
    counts: dict
    reason: str | None
    seconds: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "status": self.status,
            "counts": self.counts,
            "reason": self.reason,
            "seconds": round(self.seconds, 4),
        }


@dataclass
class VerifyReport:
    instance: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def to_dict(self) -> dict:
        tally = {s: sum(1 for c in self.checks if c.status == s) for s in ("pass", "fail", "skip")}
        return {"instance": self.instance, "summary": tally, "checks": [c.to_dict() for c in self.checks]}


def _parse_row(token: str, n: int, p: int) -> tuple:
    if "," in token:
        parts = [part.strip() for part in token.split(",")]
    else:
        parts = list(token)
    try:
        row = tuple(int(x) for x in parts)
    except ValueError:
        raise ConfigurationError(f"cannot parse basis row {token!r}") from None
    if len(row) != n:
        raise ConfigurationError(f"basis row {token!r} has length {len(row)}, expected {n}")
    if any(x < 0 or x >= p for x in row):
        raise ConfigurationError(f"basis row {token!r} has entries outside [0, {p})")
    return row


def parse_config(text: str) -> InstanceConfig:
    """Parse the flat key = value instance format."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().lower()
        if key in values:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        values[key] = val.strip()
    known = {"p", "n", "r", "u_basis", "cap", "rank_cap"}
    unknown = set(values) - known
    if unknown:
        raise ConfigurationError(f"unknown keys: {', '.join(sorted(unknown))}")
    for req in ("p", "n", "r"):
        if req not in values:
            raise ConfigurationError(f"missing required key {req!r}")
    try:
        p, n, r = (int(values[k]) for k in ("p", "n", "r"))
    except ValueError:
        raise ConfigurationError("p, n, r must be integers") from None
    u_rows = None
    if "u_basis" in values and values["u_basis"]:
        u_rows = tuple(_parse_row(tok, n, p) for tok in values["u_basis"].split())
    caps = {}
    for key in ("cap", "rank_cap"):
        if key in values:
            try:
                caps[key] = int(values[key])
            except ValueError:
                raise ConfigurationError(f"{key} must be an integer") from None
            if caps[key] < 1:
                raise ConfigurationError(f"{key} must be positive")
    return InstanceConfig(p=p, n=n, r=r, u_rows=u_rows,
                          enum_cap=caps.get("cap"), rank_cap=caps.get("rank_cap"))


def load_config(path: str) -> InstanceConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read instance file {path}: {exc}") from None
    return parse_config(text)


def build_instance(cfg: InstanceConfig) -> Instance:
    return make_instance(cfg.p, cfg.n, cfg.r, cfg.u_rows)


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"environment variable {name} must be an integer") from None
    if value < 1:
        raise ConfigurationError(f"environment variable {name} must be positive")
    return value


def resolve_caps(cfg: InstanceConfig, flag_cap: int | None, flag_rank_cap: int | None) -> tuple[int, int]:
    """Flag beats environment beats instance file beats default."""
    enum_cap = flag_cap or _env_int(ENV_ENUM_CAP) or cfg.enum_cap or DEFAULT_ENUM_CAP
    rank_cap = flag_rank_cap or _env_int(ENV_RANK_CAP) or cfg.rank_cap or DEFAULT_RANK_CAP
    return enum_cap, rank_cap


def _strided(seq, limit):
    seq = list(seq)
    if len(seq) <= limit:
        return seq
    step = len(seq) / limit
    return [seq[int(i * step)] for i in range(limit)]


class _Ctx:
    """Shared lazily-computed state for one verify run."""

    def __init__(self, inst: Instance, enum_cap: int, rank_cap: int):
        self.inst = inst
        self.enum_cap = enum_cap
        self.rank_cap = rank_cap
        self._cache: dict[str, object] = {}

    def table(self) -> SemigroupTable:
        if "table" not in self._cache:
            self._cache["table"] = enumerate_semigroup(self.inst, cap=self.enum_cap)
        return self._cache["table"]

    def profiles(self):
        self.table()
        return _profiles(self.inst)

    def codims(self) -> list[int]:
        return [prof[2] for prof in self.profiles()]

    def unit_indices(self) -> list[int]:
        top = self.inst.n - self.inst.r
        return [i for i, cd in enumerate(self.codims()) if cd == top]

    def q_indices(self, k: int) -> frozenset[int]:
        return frozenset(i for i, cd in enumerate(self.codims()) if cd < k)

    def complements(self):
        if "complements" not in self._cache:
            inst = self.inst
            count = inst.p ** (inst.r * (inst.n - inst.r))
            if count > 100_000:
                raise CapacityError(f"{count} complements exceed the enumeration budget")
            self._cache["complements"] = enumerate_complements(inst.u)
        return self._cache["complements"]


def _check_order_law(ctx: _Ctx):
    table = ctx.table()
    expected = predicted_order(ctx.inst)
    counts = {"order": len(table), "expected": expected}
    return ("pass" if len(table) == expected else "fail", counts, None)


def _check_complement_count(ctx: _Ctx):
    inst = ctx.inst
    comps = ctx.complements()
    expected = inst.p ** (inst.r * (inst.n - inst.r))
    ok = len(comps) == expected
    if len(comps) <= 4096:
        ok = ok and all(is_complement(w, inst.u) for w in comps)
    counts = {"complements": len(comps), "expected": expected}
    return ("pass" if ok else "fail", counts, None)


def _check_green_agreement(ctx: _Ctx):
    table = ctx.table()
    oracle = table.green()
    char = green_char_partitions(ctx.inst)
    same = all(
        getattr(oracle, rel) == getattr(char, rel) for rel in ("l", "r", "h", "d", "j")
    )
    d_equals_j = oracle.d == oracle.j
    counts = {
        "elements": len(table),
        "l_classes": len(oracle.l),
        "r_classes": len(oracle.r),
        "h_classes": len(oracle.h),
        "d_classes": len(oracle.d),
        "agrees": same,
        "d_equals_j": d_equals_j,
    }
    return ("pass" if same and d_equals_j else "fail", counts, None)


def _check_ideal_structure(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    profs = ctx.profiles()
    top = inst.n - inst.r
    failures = []
    for k in range(1, top + 1):
        if not verify_ideal(table, ctx.q_indices(k)):
            failures.append(f"Q({k}) is not an ideal")
    if top >= 1 and verify_ideal(table, ctx.unit_indices()):
        failures.append("unit grade wrongly closed as an ideal")
    # Principal two-sided ideals are constant on L-classes, so reps suffice.
    if len(table) <= _LIST_SAMPLE:
        reps = list(range(len(table)))
    else:
        by_image = {}
        for i, prof in enumerate(profs):
            by_image.setdefault(prof[0], i)
        reps = sorted(by_image.values())
    for i in reps:
        cd = profs[i][2]
        expected = frozenset(range(len(table))) if cd == top else ctx.q_indices(cd + 1)
        if principal_ideal(table, i) != expected:
            failures.append(f"principal ideal mismatch at element {i}")
    minimal = ctx.q_indices(1)
    for i in minimal:
        img, ker, _ = profs[i]
        if img != inst.u or not is_complement(ker, inst.u):
            failures.append(f"minimal-ideal element {i} fails image/kernel split")
    counts = {"ideals": top, "principal_reps": len(reps), "minimal_ideal": len(minimal)}
    return ("pass" if not failures else "fail", counts, "; ".join(failures) or None)


def _check_minimal_idempotents(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    char = minimal_idempotents(inst)
    oracle = frozenset(table.elements[i] for i in minimal_idempotents_oracle(table))
    expected = inst.p ** (inst.r * (inst.n - inst.r))
    ok = char == oracle and len(char) == expected
    counts = {"characterized": len(char), "oracle": len(oracle), "expected": expected}
    return ("pass" if ok else "fail", counts, None)


def _check_regularity(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    for m in table.elements:
        regular_witness(inst, m)  # verifies m * b * m == m internally
    counts = {"members": len(table), "verified": len(table)}
    return ("pass", counts, None)


def _check_factorizations(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    profs = ctx.profiles()
    top = inst.n - inst.r
    sampled = len(table) > _LIST_SAMPLE
    idxs = _strided(range(len(table)), _PAIR_SAMPLE) if sampled else list(range(len(table)))
    factored = witnesses = infeasible = 0
    for i in idxs:
        for j in idxs:
            a, b = table.elements[i], table.elements[j]
            if profs[i][2] <= profs[j][2]:
                factor_through(inst, a, b)
                factored += 1
            else:
                try:
                    factor_through(inst, a, b)
                except InfeasibleError:
                    infeasible += 1
                else:
                    return ("fail", {}, "factor_through accepted an impossible pair")
            if profs[i][2] == profs[j][2]:
                dclass_witness(inst, a, b)
                witnesses += 1
    raised = 0
    low = [i for i in range(len(table)) if profs[i][2] <= top - 2]
    for i in _strided(low, _LIST_SAMPLE):
        raise_factor(inst, table.elements[i])
        raised += 1
    sandwiched = 0
    mid = [i for i in range(len(table)) if profs[i][2] == top - 1]
    for i in _strided(mid, 40):
        for j in _strided(mid, 40):
            sandwich_factor(inst, table.elements[j], table.elements[i])
            sandwiched += 1
    counts = {
        "factored": factored,
        "infeasible_rejected": infeasible,
        "d_witnesses": witnesses,
        "raised": raised,
        "sandwiched": sandwiched,
        "sampled": sampled,
    }
    return ("pass", counts, None)


def _check_generation(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    top = inst.n - inst.r
    gens = [table.index_of(m) for m in generating_set(inst)]
    full = closure_indices(table, gens)
    failures = []
    if len(full) != len(table):
        failures.append("units plus one lower element failed to generate")
    profs = ctx.profiles()
    for k in range(1, top):
        grade = [i for i, prof in enumerate(profs) if prof[2] == k]
        if closure_indices(table, grade) != ctx.q_indices(k + 1):
            failures.append(f"grade {k} did not generate the ideal below {k + 1}")
    counts = {"generators": len(gens), "closure": len(full), "grades_checked": max(0, top - 1)}
    return ("pass" if not failures else "fail", counts, "; ".join(failures) or None)


def _check_rank_identity(ctx: _Ctx):
    inst = ctx.inst
    table = ctx.table()
    via_units = rank_value(inst, rank_cap=ctx.rank_cap, budget=RANK_BUDGET)
    if via_units is None:
        return ("skip", {}, "unit-group rank search exceeded its cap or budget")
    if len(table) > 20:
        counts = {"rank_via_units": via_units}
        return ("skip", counts, "full-semigroup subset sweep infeasible at this order")
    found = rank_search(table, range(len(table)), ctx.rank_cap, budget=RANK_BUDGET)
    if found is None:
        return ("skip", {"rank_via_units": via_units}, "no generating set within the rank cap")
    counts = {"rank_via_units": via_units, "rank_exhaustive": found[0]}
    return ("pass" if found[0] == via_units else "fail", counts, None)


def _check_unit_decomposition(ctx: _Ctx):
    inst = ctx.inst
    if inst.r < 1:
        return ("skip", {}, "subgroup structure needs r >= 1")
    table = ctx.table()
    p = inst.p
    units = [table.elements[i] for i in ctx.unit_indices()]
    fix_u = sorted(special_subgroup(inst, FIX_U))
    failures = []
    ident = identity_mat(inst.n)
    # Conjugation closure of the U-fixing normal factor under all units.
    unit_sample = units if len(units) * len(fix_u) <= 60_000 else _strided(units, 100)
    for g in unit_sample:
        g_inv = mat_inverse(p, g)
        for h in fix_u:
            conj = mat_mul(p, mat_mul(p, g, h), g_inv)
            if any(vec_mat(p, row, conj) != tuple(row) for row in inst.u.basis):
                failures.append("conjugate left the U-fixing subgroup")
                break
        if failures:
            break
    comps = _strided(ctx.complements(), _COMPLEMENT_SAMPLE)
    decomposed = 0
    for w in comps:
        fix_w = special_subgroup(inst, FIX_W, w)
        if len(units) != len(fix_w) * len(fix_u):
            failures.append("order of the unit group does not split")
        if frozenset(fix_w) & frozenset(fix_u) != {ident}:
            failures.append("the two unit factors overlap beyond the identity")
        for a in _strided(units, 100):
            decompose_unit(inst, a, w)
            decomposed += 1
        for a in _strided(fix_u, 100):
            decompose_fix_u(inst, a, w)
            decomposed += 1
    counts = {
        "units": len(units),
        "fix_u": len(fix_u),
        "complements_checked": len(comps),
        "decompositions": decomposed,
    }
    return ("pass" if not failures else "fail", counts, "; ".join(failures) or None)


def _check_subgroup_isomorphisms(ctx: _Ctx):
    inst = ctx.inst
    if inst.r < 1:
        return ("skip", {}, "subgroup structure needs r >= 1")
    ctx.table()
    comps = _strided(ctx.complements(), _COMPLEMENT_SAMPLE)
    checked = 0
    for w in comps:
        for kind in (FIX_W, G_W, N_W):
            if not subgroup_iso_check(inst, kind, w):
                return ("fail", {"complement": [list(r) for r in w.basis]}, f"{kind} comparison failed")
            checked += 1
    return ("pass", {"isomorphisms_checked": checked}, None)


def _check_nonnormality(ctx: _Ctx):
    reports = [nonnormality_example(ctx.inst.p, case) for case in CONJUGATION_CASES]
    ok = all(rep.escaped for rep in reports)
    counts = {"cases": len(reports)}
    return ("pass" if ok else "fail", counts, None)


def _check_isomorphism_theorem(ctx: _Ctx):
    inst = ctx.inst
    failures = []
    if inst.r >= 1:
        anchor = extend_basis(inst.u.basis, full_space(inst.p, inst.n))[0]
        rows = list(inst.u.basis)
        rows[0] = vec_add(inst.p, rows[0], anchor)
        partner = make_instance(inst.p, inst.n, inst.r, rows)
    else:
        partner = inst
    witness = decide_isomorphic(inst, partner, cap=ctx.enum_cap)
    if witness is None:
        failures.append("matched parameters did not produce a witness")
    verified_pairs = len(witness.psi) ** 2 if witness and witness.psi else 0
    negative = None
    for r2 in (inst.r + 1, inst.r - 1):
        if 0 <= r2 < inst.n and r2 != inst.r:
            negative = make_instance(inst.p, inst.n, r2)
            break
    if negative is not None and decide_isomorphic(inst, negative, cap=ctx.enum_cap) is not None:
        failures.append("differing subspace dimensions wrongly reported isomorphic")
    counts = {
        "psi_pairs_verified": verified_pairs,
        "negative_case": negative is not None,
    }
    return ("pass" if not failures else "fail", counts, "; ".join(failures) or None)


def _check_j_class_count(ctx: _Ctx):
    ctx.table()
    report = j_class_count_report(ctx.inst)
    consistent = report["flagged"] == (report["observed"] != report["quotient_dim"])
    return ("pass" if consistent else "fail", dict(report), None)


_CHECKS = (
    ("order_law", "order equals |GL_r(p)| * p^(n(n-r))", _check_order_law),
    ("complement_count", "U has exactly p^(r(n-r)) complements", _check_complement_count),
    ("green_agreement", "image/kernel/codim classes match the ideal-based Green classes, and D = J", _check_green_agreement),
    ("ideal_structure", "the Q(k) chain gives all proper ideals; principal ideals follow the grading", _check_ideal_structure),
    ("minimal_idempotents", "idempotents with image U are exactly the order-minimal idempotents", _check_minimal_idempotents),
    ("regularity", "every element has a verified inner inverse", _check_regularity),
    ("factorizations", "all constructive factorizations recompose exactly in the stated grades", _check_factorizations),
    ("generation", "units plus one corank-1 element generate; each grade generates the ideal below it", _check_generation),
    ("rank_identity", "minimal generating-set size equals unit-group rank plus one", _check_rank_identity),
    ("unit_decomposition", "unit group = Fix(W) x Fix(U) with unique factors; Fix(U) closed under conjugation", _check_unit_decomposition),
    ("subgroup_isomorphisms", "Fix(W) matches GL(U), G(W) matches GL(W), N(W) matches U^(n-r)", _check_subgroup_isomorphisms),
    ("nonnormality", "conjugation moves Fix(W) out of itself inside the units, and G(W) inside Fix(U)", _check_nonnormality),
    ("isomorphism_theorem", "same (n, r) over one field gives a verified witness; different r does not", _check_isomorphism_theorem),
    ("j_class_count", "observed J-class count is reported and any gap to n-r is flagged", _check_j_class_count),
)


def cmd_verify(cfg: InstanceConfig, enum_cap: int, rank_cap: int) -> VerifyReport:
    inst = build_instance(cfg)
    ctx = _Ctx(inst, enum_cap, rank_cap)
    report = VerifyReport(
        instance={
            "p": inst.p,
            "n": inst.n,
            "r": inst.r,
            "u_basis": [list(row) for row in inst.u.basis],
            "enum_cap": enum_cap,
            "rank_cap": rank_cap,
        }
    )
    for name, claim, fn in _CHECKS:
        start = time.perf_counter()
        try:
            status, counts, reason = fn(ctx)
        except CapacityError as exc:
            status, counts, reason = "skip", {}, str(exc)
        except GlsemiError as exc:
            status, counts, reason = "fail", {}, f"{type(exc).__name__}: {exc}"
        report.checks.append(CheckResult(name, claim, status, counts, reason, time.perf_counter() - start))
    return report


def eggbox_dot(table: SemigroupTable, codims, minimal_idxs=frozenset()) -> str:
    """DOT text for the egg-box diagram: one cluster per D-class ordered
    by codimension, H-classes as grid cells, idempotents starred."""
    green = table.green()
    idem = idempotents(table)
    order_of = {cls: max(codims[i] for i in cls) for cls in green.d}
    d_sorted = sorted(green.d, key=lambda cls: (-order_of[cls], min(cls)))
    lines = [
        "digraph eggbox {",
        "  compound=true;",
        "  rankdir=TB;",
        '  node [shape=box fontname="Courier"];',
    ]
    anchors = []
    for di, dcls in enumerate(d_sorted):
        r_rows = sorted((cls & dcls for cls in green.r if cls & dcls), key=min)
        l_cols = sorted((cls & dcls for cls in green.l if cls & dcls), key=min)
        lines.append(f"  subgraph cluster_{di} {{")
        lines.append(f'    label="codim {order_of[dcls]}: {len(dcls)} elements";')
        anchor = None
        for ri, rcls in enumerate(r_rows):
            row_nodes = []
            for li, lcls in enumerate(l_cols):
                hcls = rcls & lcls
                if not hcls:
                    continue
                name = f"h{di}_{ri}_{li}"
                stars = ""
                if hcls & idem:
                    stars += "*"
                if hcls & minimal_idxs:
                    stars += "*"
                lines.append(f'    {name} [label="{len(hcls)}{stars}"];')
                row_nodes.append(name)
                if anchor is None:
                    anchor = name
            if len(row_nodes) > 1:
                lines.append("    { rank=same; " + "; ".join(row_nodes) + "; }")
        lines.append("  }")
        anchors.append((di, anchor))
    for (d1, a1), (d2, a2) in zip(anchors, anchors[1:]):
        lines.append(
            f"  {a1} -> {a2} [ltail=cluster_{d1}, lhead=cluster_{d2}, style=dashed];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_eggbox(cfg: InstanceConfig, enum_cap: int) -> str:
    inst = build_instance(cfg)
    table = enumerate_semigroup(inst, cap=enum_cap)
    codims = [prof[2] for prof in _profiles(inst)]
    minimal = frozenset(minimal_idempotents_oracle(table))
    return eggbox_dot(table, codims, minimal)


def cmd_report(cfg: InstanceConfig, enum_cap: int, rank_cap: int) -> dict:
    inst = build_instance(cfg)
    payload: dict = {
        "instance": {
            "p": inst.p,
            "n": inst.n,
            "r": inst.r,
            "u_basis": [list(row) for row in inst.u.basis],
        },
        "order": None,
        "j_classes": None,
        "ideals": None,
        "minimal_idempotents": None,
        "unit_group": None,
        "rank": None,
        "j_class_count": None,
        "skipped": [],
    }
    order = predicted_order(inst)
    if order > enum_cap:
        payload["skipped"].append(f"enumeration (predicted order {order} > cap {enum_cap})")
        return payload
    table = enumerate_semigroup(inst, cap=enum_cap)
    profs = _profiles(inst)
    top = inst.n - inst.r
    payload["order"] = len(table)
    payload["j_classes"] = [
        {"codim": k, "size": sum(1 for prof in profs if prof[2] == k)} for k in range(top + 1)
    ]
    payload["ideals"] = [
        {"k": k, "size": sum(1 for prof in profs if prof[2] < k)} for k in range(1, top + 1)
    ]
    payload["minimal_idempotents"] = {
        "count": len(minimal_idempotents(inst)),
        "expected": inst.p ** (inst.r * (inst.n - inst.r)),
    }
    if inst.r >= 1:
        comps = enumerate_complements(inst.u)
        w = comps[0]
        payload["unit_group"] = {
            "order": len(unit_group_subtable(inst)),
            "complement": [list(row) for row in w.basis],
            "fix_w": len(special_subgroup(inst, FIX_W, w)),
            "fix_u": len(special_subgroup(inst, FIX_U)),
            "g_w": len(special_subgroup(inst, G_W, w)),
            "n_w": len(special_subgroup(inst, N_W, w)),
        }
    else:
        payload["unit_group"] = {"order": len(unit_group_subtable(inst))}
        payload["skipped"].append("subgroup structure (r = 0)")
    value = rank_value(inst, rank_cap=rank_cap, budget=RANK_BUDGET)
    if value is None:
        payload["skipped"].append("rank (search cap or budget exceeded)")
    payload["rank"] = value
    payload["j_class_count"] = j_class_count_report(inst)
    return payload


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise ConfigurationError(f"cannot write {path}: {exc}") from None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="glsemi",
        description="Structural verification for semigroups of linear maps acting invertibly on a fixed subspace.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the full check suite for one instance")
    p_verify.add_argument("--instance", required=True, help="instance config file")
    p_verify.add_argument("--cap", type=int, default=None, help="enumeration cap override")
    p_verify.add_argument("--rank-cap", type=int, default=None, help="rank search cap override")
    p_verify.add_argument("--out", default=None, help="also write the report as JSON")

    p_eggbox = sub.add_parser("eggbox", help="emit the egg-box diagram as DOT")
    p_eggbox.add_argument("--instance", required=True)
    p_eggbox.add_argument("--out", required=True, help="output .dot path")
    p_eggbox.add_argument("--cap", type=int, default=None)

    p_report = sub.add_parser("report", help="emit the structural summary as JSON")
    p_report.add_argument("--instance", required=True)
    p_report.add_argument("--out", required=True, help="output .json path")
    p_report.add_argument("--cap", type=int, default=None)
    p_report.add_argument("--rank-cap", type=int, default=None)

    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.instance)
        enum_cap, rank_cap = resolve_caps(
            cfg, getattr(args, "cap", None), getattr(args, "rank_cap", None)
        )
        if args.command == "verify":
            report = cmd_verify(cfg, enum_cap, rank_cap)
            header = report.instance
            print(f"instance p={header['p']} n={header['n']} r={header['r']} (cap={enum_cap})")
            for check in report.checks:
                line = f"{check.status.upper():4s} {check.name}"
                if check.counts:
                    pretty = ", ".join(f"{k}={v}" for k, v in check.counts.items())
                    line += f" ({pretty})"
                if check.reason:
                    line += f" -- {check.reason}"
                line += f" [{check.seconds:.2f}s]"
                print(line)
            tally = report.to_dict()["summary"]
            print(f"verify: {tally['pass']} passed, {tally['fail']} failed, {tally['skip']} skipped")
            if args.out:
                _write_text(args.out, json.dumps(report.to_dict(), indent=2) + "\n")
            return 1 if report.failed else 0
        if args.command == "eggbox":
            _write_text(args.out, cmd_eggbox(cfg, enum_cap))
            print(f"wrote {args.out}")
            return 0
        payload = cmd_report(cfg, enum_cap, rank_cap)
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}")
        return 0
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GlsemiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
