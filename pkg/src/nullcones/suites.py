"""Seeded verification suites and the dimension table.

Each suite runs independent trials over a grid of parameter cells.  Trial
``k`` of a cell draws from ``random.Random(f"{seed}/{suite}/{cell_key}/{k}")``
where ``cell_key`` is the sorted-key JSON of the cell, so any single trial
can be replayed in isolation and parallel runs give identical reports.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from .exact import Matrix, column_space, det, kernel, random_invertible, random_matrix, rank
from .forms import FormedSpace, Kind, is_isometry, sample_isometry
from .isotropic import (
    IsotropicSubspace,
    component_label,
    dim_flag2,
    dim_grassmannian,
    dim_isotropic_grassmannian,
    dim_isotropic_grassmannian_uniform,
    is_isotropic,
    isotropic_seed,
    sample_flag2,
    sample_isotropic,
    sample_subspace,
    tangent_dim_isotropic_at,
)
from .nullcone import (
    GLPoint,
    GlSetting,
    OrthSympSetting,
    OSPoint,
    check_equivariance_gl,
    check_equivariance_os,
    component_label_null,
    eval_phi,
    is_null,
    sample_null_gl,
    sample_null_os,
    tangent_dim_at,
)
from .resolutions import (
    NotRepresentableError,
    NotUniqueError,
    check_diagram,
    check_q_triangle,
    closure_preimage_gl,
    closure_preimage_os,
    dim_resolution_total,
    f0_nilpotency_check,
    fiber_dim_at,
    in_orbit_closure_gl,
    in_orbit_closure_os,
    is_valid_orbit_point,
    is_valid_resolution_point,
    mu,
    normalize_variant,
    opposite_space,
    orbit_dim_gl,
    orbit_fiber_dim_at,
    orbit_fiber_is_singleton,
    orbit_unique_preimage,
    quotient_BA,
    quotient_Qtilde,
    quotient_R,
    sample_resolution_point,
    unique_preimage,
    _gl_flag_forced,
)
from .serialize import matrix_to_json, point_to_json, subspace_to_json

KIND_NAMES = {"orth": Kind.SYMMETRIC, "symp": Kind.SYMPLECTIC}


class SuiteError(ValueError):
    """Unknown suite or unusable parameters."""


@dataclass
class TrialResult:
    ok: bool
    description: str = ""
    witnesses: dict = field(default_factory=dict)
    tags: tuple = ()


@dataclass
class SuiteReport:
    suite_name: str
    parameters: dict
    seed: int
    trials: int
    passes: int
    failures: list
    elapsed_ms: float
    notes: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, with_elapsed: bool = True) -> dict:
        d = asdict(self)
        if not with_elapsed:
            d.pop("elapsed_ms")
        return d


# -- parameter cells ----------------------------------------------------------

def cell_key(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def trial_seed(seed: int, suite: str, params: dict, trial: int) -> str:
    return f"{seed}/{suite}/{cell_key(params)}/{trial}"


def os_setting(params: dict) -> OrthSympSetting:
    kind = params.get("kind")
    if kind not in KIND_NAMES:
        raise SuiteError(f"kind must be orth or symp here, got {kind!r}")
    try:
        return OrthSympSetting.standard(KIND_NAMES[kind], params["n"], params["m"])
    except KeyError as e:
        raise SuiteError(f"missing parameter {e.args[0]}") from None
    except ValueError as e:
        raise SuiteError(str(e)) from None


def gl_setting(params: dict) -> GlSetting:
    try:
        return GlSetting(params["n"], params["s"], params["m"])
    except KeyError as e:
        raise SuiteError(f"missing parameter {e.args[0]}") from None
    except ValueError as e:
        raise SuiteError(str(e)) from None


def setting_for(params: dict):
    variant = normalize_variant(params.get("variant", "nc0" if params.get("kind") != "gl" else "nc"))
    if variant == "nc0":
        return variant, os_setting(params)
    return variant, gl_setting(params)


def _point_witness(name: str, point) -> dict:
    return {name: point_to_json(point)}


# -- dimension suites ----------------------------------------------------------

def _os_dim_formula(n: int, m: int, r: int) -> int:
    return r * (2 * m + 2 * n - 3 * r - 1) // 2


def trial_dims_orth(params, rng):
    st = os_setting(params)
    if st.kind is not Kind.SYMMETRIC:
        raise SuiteError("dims-orth needs kind orth")
    p = sample_resolution_point("nc0", st, rng)
    t = mu(p)
    tan = tangent_dim_at(st, t)
    formula = _os_dim_formula(st.n, st.m, st.r)
    iso = tangent_dim_isotropic_at(IsotropicSubspace(st.space, p.u))
    ok = (rank(t.t) == st.r and tan == formula
          and iso == dim_isotropic_grassmannian(st.n, st.r, st.kind)
          and dim_resolution_total("nc0", st) == formula)
    return TrialResult(ok, f"tangent {tan}, formula {formula}, isotropic oracle {iso}",
                       _point_witness("point", p))


def trial_dims_symp(params, rng):
    st = os_setting(params)
    if st.kind is not Kind.SYMPLECTIC:
        raise SuiteError("dims-symp needs kind symp")
    p = sample_resolution_point("nc0", st, rng)
    t = mu(p)
    tan = tangent_dim_at(st, t)
    iso = tangent_dim_isotropic_at(IsotropicSubspace(st.space, p.u))
    want = st.m * st.r + iso
    ok = (rank(t.t) == st.r and tan == want
          and iso == dim_isotropic_grassmannian(st.n, st.r, st.kind)
          and dim_resolution_total("nc0", st) == want)
    return TrialResult(ok, f"tangent {tan}, mr + isotropic oracle {want}",
                       _point_witness("point", p))


def notes_dims_symp(params, rng):
    st = os_setting(params)
    u = sample_isotropic(st.space, st.r, rng)
    oracle = tangent_dim_isotropic_at(u)
    uniform = dim_isotropic_grassmannian_uniform(st.n, st.r)
    flag = "DISCREPANCY" if oracle != uniform else "agree"
    return [f"dim J_{st.r}(C^{st.n}): uniform expression r(2n-3r-1)/2 = {uniform}, "
            f"tangent oracle = {oracle} [{flag}]"]


def trial_dims_gl(params, rng):
    st = gl_setting(params)
    n, s, m = st.n, st.s, st.m
    flag = sample_flag2(n, m, s, rng)
    pt = sample_null_gl(st, s, m, rng, flag)
    tan = tangent_dim_at(st, pt)
    formula = s * n + m * n - s * m
    bundle = dim_flag2(m, s, n) + s * s + m * m
    lin = fiber_dim_at("nc", st, flag)
    ok = tan == formula == bundle and lin == s * s + m * m
    return TrialResult(ok, f"tangent {tan}, sn+mn-sm {formula}, flag+fiber {bundle}, "
                           f"fiber oracle {lin}", _point_witness("point", pt))


# -- equivariance ---------------------------------------------------------------

def _non_isometry(n: int) -> Matrix:
    return Matrix.diag([2] + [1] * (n - 1))


def trial_equivariance(params, rng):
    kind = params.get("kind", "orth")
    if kind == "gl":
        st = gl_setting(params)
        a = random_matrix(rng, st.s, st.n)
        b = random_matrix(rng, st.n, st.m)
        g1, g2, g3 = (random_invertible(rng, st.s), random_invertible(rng, st.n),
                      random_invertible(rng, st.m))
        ok = check_equivariance_gl(st, a, b, g1, g2, g3)
        # control: acting by g2 on both sides does not preserve AB
        control = False
        for _ in range(10):
            a2 = random_matrix(rng, st.s, st.n)
            b2 = random_matrix(rng, st.n, st.m)
            if eval_phi(st, a2 @ g2, g2 @ b2) != eval_phi(st, a2, b2):
                control = True
                break
        wit = {"a": matrix_to_json(a), "b": matrix_to_json(b)}
        return TrialResult(ok and control, f"identities {ok}, negative control {control}", wit)
    st = os_setting(params)
    t = random_matrix(rng, st.n, st.m)
    g = sample_isometry(st.space, rng)
    h = random_invertible(rng, st.m)
    ok = is_isometry(st.space, g) and check_equivariance_os(st, t, g, h)
    wit = {"t": matrix_to_json(t), "g": matrix_to_json(g), "h": matrix_to_json(h)}
    if st.kind is Kind.SYMPLECTIC and st.m == 1:
        # 1x1 antisymmetric matrices vanish, so no g can break the identity
        return TrialResult(ok, f"identities {ok}", wit, ("negative control not applicable",))
    bad = _non_isometry(st.n)
    control = False
    # search for T exposing that a non-isometry breaks the first identity
    for _ in range(10):
        t2 = random_matrix(rng, st.n, st.m)
        if not check_equivariance_os(st, t2, bad, Matrix.identity(st.m)):
            control = not is_isometry(st.space, bad)
            break
    return TrialResult(ok and control, f"identities {ok}, negative control {control}", wit)


# -- birationality ---------------------------------------------------------------

def _max_ranks(variant, st):
    return st.r if variant == "nc0" else (st.s, st.m)


def trial_birationality(params, rng):
    variant, st = setting_for(params)
    p = sample_resolution_point(variant, st, rng)
    back = unique_preimage(variant, st, mu(p), rng)
    first = is_valid_resolution_point(st, p) and back == p
    if variant == "nc0":
        x = sample_null_os(st, st.r, rng)
    else:
        x = sample_null_gl(st, st.s, st.m, rng)
    second = mu(unique_preimage(variant, st, x, rng)) == x
    wit = _point_witness("point", p)
    wit.update(_point_witness("null_point", x))
    return TrialResult(first and second, f"resolution round trip {first}, null round trip {second}", wit)


def _forced(variant, st, ra, rb) -> bool:
    n, s, m = st.n, st.s, st.m
    K = n - ra
    if variant == "nc":
        return _gl_flag_forced(n, s, m, rb, K)
    if variant == "nc1":
        return rb == m or K == m
    return K == n - s or rb == n - s


def _deficient_ranks(variant, st, rng):
    if variant == "nc0":
        return rng.randint(0, st.r - 1)
    pairs = [(ra, rb) for ra in range(st.s + 1) for rb in range(st.m + 1)
             if not _forced(variant, st, ra, rb)]
    return rng.choice(pairs)


def trial_fiber_witnesses(params, rng):
    variant, st = setting_for(params)
    ranks = _deficient_ranks(variant, st, rng)
    p = sample_resolution_point(variant, st, rng, ranks=ranks)
    x = mu(p)
    try:
        unique_preimage(variant, st, x, rng)
    except NotUniqueError as e:
        ws = e.witnesses
        ok = (len(ws) == 2 and ws[0] != ws[1]
              and all(is_valid_resolution_point(st, w) and mu(w) == x for w in ws))
        wit = {"null_point": point_to_json(x), "witnesses": [point_to_json(w) for w in ws]}
        return TrialResult(ok, f"ranks {ranks}: {len(ws)} witnesses", wit)
    return TrialResult(False, f"ranks {ranks}: preimage reported unique",
                       _point_witness("null_point", x))


# -- quotient maps -----------------------------------------------------------------

def trial_quotient(params, rng):
    if params.get("kind") == "gl":
        st = gl_setting(params)
        if st.s != st.m:
            raise SuiteError("the GL quotient needs s = m")
        pt = sample_null_gl(st, rng.randint(0, st.s), rng.randint(0, st.m), rng)
        g = quotient_BA(st, pt.a, pt.b)
        ok = (g @ g).is_zero() and rank(g) <= st.m and in_orbit_closure_gl(g, st.m)
        desc = f"rank BA {rank(g)}"
        tags = ()
        if rank(g) == st.m:
            a, b = closure_preimage_gl(g, st.m)
            surj = (a @ b).is_zero() and b @ a == g
            ok = ok and surj
            desc += f", preimage {surj}"
            tags = ("preimage constructed",)
        return TrialResult(ok, desc, _point_witness("null_point", pt), tags)
    st = os_setting(params)
    w = opposite_space(st)
    if rng.random() < 0.5:
        t = sample_null_os(st, rng.randint(0, st.r), rng).t
    else:
        t = random_matrix(rng, st.n, st.m)
    null = is_null(st, OSPoint(t))
    qt = quotient_Qtilde(st, t, w)
    ok = qt.is_zero() == null
    desc = f"null {null}, T*T zero {qt.is_zero()}"
    tags = ("null" if null else "non-null",)
    if null:
        g = quotient_R(st, t, w)
        closure = (in_orbit_closure_os(g, st.m, st.space) and (g @ g).is_zero()
                   and rank(g) <= st.m and is_isotropic(st.space, column_space(g)))
        ok = ok and closure
        desc += f", R(T) in closure {closure}"
        if rank(g) == st.m:
            try:
                t2 = closure_preimage_os(st, g, w)
                surj = is_null(st, OSPoint(t2)) and quotient_R(st, t2, w) == g
                ok = ok and surj
                desc += f", preimage {surj}"
                tags += ("preimage constructed",)
            except NotRepresentableError:
                tags += ("preimage needs square roots outside Q(i)",)
    return TrialResult(ok, desc, {"t": matrix_to_json(t)}, tags)


# -- diagrams ----------------------------------------------------------------------

def _random_ranks(variant, st, rng):
    if variant == "nc0":
        return rng.randint(0, st.r)
    return rng.randint(0, st.s), rng.randint(0, st.m)


def trial_diagrams(params, rng):
    variant, st = setting_for(params)
    ranks = _max_ranks(variant, st) if rng.random() < 0.5 else _random_ranks(variant, st, rng)
    p = sample_resolution_point(variant, st, rng, ranks=ranks)
    checks = {}
    if variant == "nc0":
        checks["square"] = check_diagram(st, p)
    elif st.s == st.m:
        checks["square"] = check_diagram(st, p)
    if variant == "nc":
        checks["q-triangle"] = check_q_triangle(st, p)
    if not checks:
        raise SuiteError("no diagram applies: one-step variants need s = m")
    ok = all(checks.values())
    desc = ", ".join(f"{k} {v}" for k, v in checks.items())
    return TrialResult(ok, f"ranks {ranks}: {desc}", _point_witness("point", p))


# -- components ----------------------------------------------------------------------

def trial_components(params, rng):
    m = params["m"]
    space = FormedSpace.standard(Kind.SYMMETRIC, 2 * m)
    st = OrthSympSetting(space, m)
    ref = IsotropicSubspace(space, isotropic_seed(space, m))
    u = sample_isotropic(space, m, rng)
    lab = component_label(u, ref)
    gp = sample_isometry(space, rng, 1)
    gm = sample_isometry(space, rng, -1)
    dets = det(gp) == 1 and det(gm) == -1
    keep = component_label(IsotropicSubspace(space, column_space(gp @ u.sub.basis)), ref) == lab
    flip = component_label(IsotropicSubspace(space, column_space(gm @ u.sub.basis)), ref) != lab
    t = sample_null_os(st, m, rng, u)
    on_cone = (component_label_null(st, t, ref) == lab
               and component_label_null(st, OSPoint(gm @ t.t), ref) != lab)
    ok = dets and keep and flip and on_cone
    return TrialResult(ok, f"label {lab}: preserved {keep}, flipped {flip}, null points {on_cone}",
                       {"u": subspace_to_json(u.sub), "g_plus": matrix_to_json(gp),
                        "g_minus": matrix_to_json(gm)}, (f"label {lab}",))


# -- orbit side ------------------------------------------------------------------------

def _interior_orbit_element(variant, params, rng, target_rank):
    """A square-zero ``g`` of the given rank, with the formed space for ``nc0``."""
    if variant == "nc0":
        st = os_setting(params)
        t = sample_null_os(st, target_rank, rng).t
        return quotient_R(st, t, opposite_space(st)), st.space
    n, m = params["n"], params["m"]
    st = GlSetting(n, m, m)
    pt = sample_null_gl(st, target_rank, target_rank, rng)
    return quotient_BA(st, pt.a, pt.b), None


def trial_orbit_fibers(params, rng):
    variant = normalize_variant(params.get("variant", "nc0"))
    m = params["m"]
    g, space = _interior_orbit_element(variant, params, rng, m)
    n = g.rows
    if rank(g) != m:
        return TrialResult(False, f"constructed g has rank {rank(g)}, expected {m}",
                           {"g": matrix_to_json(g)})
    op = orbit_unique_preimage(variant, g, m, space)
    im_g, ker_g = column_space(g), kernel(g)
    if variant == "nc0":
        forced = op.u == im_g and f0_nilpotency_check(g, op.u, space)
    elif variant == "nc":
        forced = op.u1 == im_g and op.u2 == ker_g
    elif variant == "nc1":
        forced = op.u == im_g
    else:
        forced = op.u == ker_g
    ok = (is_valid_orbit_point(op, m, space) and orbit_fiber_is_singleton(variant, g, m)
          and forced and im_g.dim == m and ker_g.dim == n - m)
    # rank-deficient control: the fiber must then contain two distinct points
    gd, _ = _interior_orbit_element(variant, params, rng, m - 1)
    control = False
    try:
        orbit_unique_preimage(variant, gd, m, space, rng)
    except NotUniqueError as e:
        ws = e.witnesses
        control = (len(ws) == 2 and ws[0] != ws[1]
                   and all(is_valid_orbit_point(w, m, space) for w in ws)
                   and (variant != "nc0" or all(f0_nilpotency_check(gd, w.u, space) for w in ws)))
    return TrialResult(ok and control, f"forced single point {ok}, deficient control {control}",
                       {"orbit_point": point_to_json(op)})


def trial_cotangent(params, rng):
    n, m = params["n"], params["m"]
    base = dim_grassmannian(m, n)
    u = sample_subspace(n, m, rng)
    fib = orbit_fiber_dim_at("nc1", u)
    st = GlSetting(n, m, m)
    pt = sample_null_gl(st, m, m, rng)
    g = quotient_BA(st, pt.a, pt.b)
    orbit = orbit_dim_gl(g)
    ok = base + fib == 2 * base == orbit
    return TrialResult(ok, f"dim Gr {base} + fiber {fib} = {base + fib}; 2 dim Gr = {2 * base}; "
                           f"orbit dimension {orbit}", {"u": subspace_to_json(u)})


# -- registry ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    trial: Callable
    default_grid: tuple
    default_trials: int
    notes: Callable | None = None
    description: str = ""


def _os_cells(kind, pairs, variant=None):
    out = []
    for n, m in pairs:
        cell = {"kind": kind, "n": n, "m": m}
        if variant:
            cell["variant"] = variant
        out.append(cell)
    return out


def _gl_cells(triples, variant=None):
    out = []
    for n, s, m in triples:
        cell = {"kind": "gl", "n": n, "s": s, "m": m}
        if variant:
            cell["variant"] = variant
        out.append(cell)
    return out


_ORTH_DIMS = [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2), (6, 2), (6, 3)]
_GL_DIMS = [(2, 1, 1), (3, 1, 1), (3, 2, 1), (4, 2, 2), (5, 2, 2), (5, 3, 2)]
_BIRAT = (_os_cells("orth", [(4, 2), (5, 2), (3, 2)], "nc0") + _os_cells("symp", [(6, 2)], "nc0")
          + [c for v in ("nc", "nc1", "nc2") for c in _gl_cells([(5, 2, 2), (4, 1, 2), (5, 2, 1)], v)])

SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("dims-orth", trial_dims_orth, tuple(_os_cells("orth", _ORTH_DIMS)), 20,
          description="Jacobian tangent dimension at maximal-rank null points vs r(2m+2n-3r-1)/2"),
    Suite("dims-symp", trial_dims_symp,
          tuple(_os_cells("symp", [(n, m) for n, m in _ORTH_DIMS if n % 2 == 0])), 20,
          notes=notes_dims_symp,
          description="symplectic tangent dimension vs mr + isotropic tangent oracle"),
    Suite("dims-gl", trial_dims_gl, tuple(_gl_cells(_GL_DIMS)), 20,
          description="GL tangent dimension vs sn+mn-sm and flag + fiber"),
    Suite("equivariance", trial_equivariance,
          ({"kind": "orth", "n": 4, "m": 2}, {"kind": "symp", "n": 4, "m": 2},
           {"kind": "gl", "n": 4, "s": 1, "m": 2}), 100,
          description="invariance and covariance identities, with a negative control"),
    Suite("birationality", trial_birationality, tuple(_BIRAT), 50,
          description="unique preimages over maximal rank: both round trips"),
    Suite("fiber-witnesses", trial_fiber_witnesses, tuple(_BIRAT), 10,
          description="rank-deficient points have two distinct valid fiber witnesses"),
    Suite("quotient", trial_quotient,
          tuple(_os_cells("orth", [(4, 2), (6, 2)]) + _os_cells("symp", [(4, 1), (4, 2), (6, 3)])
                + _gl_cells([(4, 2, 2), (5, 2, 2)])), 50,
          description="T*T, T T* and BA land where they should"),
    Suite("diagrams", trial_diagrams,
          tuple(_os_cells("orth", [(4, 2)], "nc0") + _os_cells("symp", [(4, 2)], "nc0")
                + [c for v in ("nc", "nc1", "nc2") for c in _gl_cells([(4, 2, 2), (5, 2, 2)], v)]
                + _gl_cells([(5, 2, 1)], "nc")), 50,
          description="commutative squares and the q1/q2 triangle"),
    Suite("components", trial_components,
          tuple({"kind": "orth", "n": 2 * m, "m": m} for m in (1, 2, 3)), 50,
          description="component labels under det +1 and det -1 isometries"),
    Suite("orbit-fibers", trial_orbit_fibers,
          tuple(_os_cells("orth", [(4, 2), (6, 2)], "nc0") + _os_cells("symp", [(4, 1), (6, 2)], "nc0")
                + [{"kind": "gl", "n": n, "m": m, "variant": v}
                   for v in ("nc", "nc1", "nc2") for n, m in ((2, 1), (4, 2), (5, 2))]), 20,
          description="single-point fibers over interior orbit points"),
    Suite("cotangent", trial_cotangent,
          tuple({"kind": "gl", "n": n, "m": m} for n, m in ((2, 1), (4, 2), (6, 3))), 1,
          description="dim Gr(m,n) + fiber = 2 dim Gr(m,n) = orbit dimension"),
]}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise SuiteError(f"unknown suite {name!r}; available: {', '.join(SUITES)}") from None


def run_trial(name: str, params: dict, seed: int, index: int) -> dict:
    suite = get_suite(name)
    tseed = trial_seed(seed, name, params, index)
    rng = random.Random(tseed)
    try:
        res = suite.trial(params, rng)
    except SuiteError:
        raise
    except Exception as e:  # reported, not swallowed
        res = TrialResult(False, f"raised {type(e).__name__}: {e}")
    return {"trial": index, "seed": tseed, "ok": res.ok, "description": res.description,
            "witnesses": res.witnesses, "tags": list(res.tags)}


def _run_trial_args(args):
    return run_trial(*args)


def run_suite(name: str, params: dict, trials: int | None = None, seed: int = 0,
              jobs: int = 1) -> SuiteReport:
    suite = get_suite(name)
    trials = suite.default_trials if trials is None else trials
    if trials < 0:
        raise SuiteError("trials must be non-negative")
    start = time.perf_counter()
    work = [(name, params, seed, k) for k in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_args, work))
    else:
        results = [_run_trial_args(w) for w in work]
    results.sort(key=lambda r: r["trial"])
    failures = [{k: r[k] for k in ("trial", "seed", "description", "witnesses")}
                for r in results if not r["ok"]]
    notes = []
    if suite.notes is not None:
        notes.extend(suite.notes(params, random.Random(f"{seed}/{name}/{cell_key(params)}/notes")))
    tag_counts = Counter(t for r in results for t in r["tags"])
    notes.extend(f"{tag}: {count} of {trials}" for tag, count in sorted(tag_counts.items()))
    elapsed = (time.perf_counter() - start) * 1000.0
    return SuiteReport(name, dict(params), seed, trials, trials - len(failures), failures,
                       round(elapsed, 3), notes)


def run_grid(name: str, grid=None, trials: int | None = None, seed: int = 0,
             jobs: int = 1) -> list[SuiteReport]:
    suite = get_suite(name)
    cells = suite.default_grid if grid is None else grid
    return [run_suite(name, dict(c), trials, seed, jobs) for c in cells]


# -- dimension table ----------------------------------------------------------------------

DEFAULT_DIMS_GRID = tuple(
    [{"kind": "orth", "n": n, "m": m} for n in (4, 5, 6) for m in (1, 2, 3)]
    + [{"kind": "symp", "n": 2, "m": 1}]
    + [{"kind": "gl", "n": n, "s": s, "m": m} for n, s, m in _GL_DIMS])


def dims_row(params: dict, seed: int = 0) -> dict:
    """Formula vs oracle for one cell.

    ``agree`` compares the closed-form values with the resolution-side
    oracles (tangent count of the base plus the fiber dimension).  The
    Jacobian column is the tangent space of the defining equations at a
    maximal-rank null point and is reported with its own flag.
    """
    rng = random.Random(f"{seed}/dims/{cell_key(params)}")
    kind = params.get("kind")
    row = dict(params)
    if kind == "gl":
        st = gl_setting(params)
        n, s, m = st.n, st.s, st.m
        flag = sample_flag2(n, m, s, rng)
        base_formula = dim_flag2(m, s, n)
        base_oracle = dim_grassmannian(m, n) + dim_grassmannian(n - s - m, n - m)
        total_formula = s * n + m * n - s * m
        total_oracle = base_oracle + fiber_dim_at("nc", st, flag)
        jac = tangent_dim_at(st, sample_null_gl(st, s, m, rng, flag))
    else:
        st = os_setting(params)
        n, m, r = st.n, st.m, st.r
        p = sample_resolution_point("nc0", st, rng)
        base_formula = dim_isotropic_grassmannian_uniform(n, r)
        base_oracle = tangent_dim_isotropic_at(IsotropicSubspace(st.space, p.u))
        total_formula = _os_dim_formula(n, m, r)
        total_oracle = base_oracle + fiber_dim_at("nc0", st, p.u)
        jac = tangent_dim_at(st, mu(p))
        row["r"] = r
    row.update({
        "base_formula": base_formula, "base_oracle": base_oracle,
        "total_formula": total_formula, "total_oracle": total_oracle,
        "agree": base_formula == base_oracle and total_formula == total_oracle,
        "jacobian": jac, "jacobian_agree": jac == total_oracle,
    })
    return row


def dims_table(grid=None, seed: int = 0) -> list[dict]:
    cells = DEFAULT_DIMS_GRID if grid is None else grid
    return [dims_row(dict(c), seed) for c in cells]


def format_dims_table(rows: list[dict]) -> str:
    cols = ["kind", "n", "s", "m", "r", "base_formula", "base_oracle", "total_formula",
            "total_oracle", "agree", "jacobian", "jacobian_agree"]
    header = ["kind", "n", "s", "m", "r", "base", "base*", "total", "total*", "agree", "jac",
              "jac_agree"]
    table = [header] + [[str(row.get(c, "-")) for c in cols] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in table)


__all__ = [
    "DEFAULT_DIMS_GRID",
    "SUITES",
    "Suite",
    "SuiteError",
    "SuiteReport",
    "TrialResult",
    "dims_row",
    "dims_table",
    "format_dims_table",
    "get_suite",
    "run_grid",
    "run_suite",
    "run_trial",
    "trial_seed",
]
