"""Corpus definition, inequality suite runner, and report emission.

The suite evaluates every inequality check on a seeded corpus of bodies
and emits a deterministic report: identical configs produce byte-identical
CSV/JSON files.  Typed errors from lower modules become failed rows, never
crashes.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bodies, ellipsoids, functionals, measures, positions
from .bodies import ConvexBody, Ellipsoid, PolytopeV, SmoothBody
from .errors import ConvexLabError
from .records import ChainRecord, InequalityRecord
from .sphere import DEFAULT_SEED, build_quadrature, default_resolution, unit_ball_volume

CSV_COLUMNS = [
    "suite",
    "inequality",
    "dim",
    "body",
    "body2",
    "lhs",
    "rhs",
    "gap",
    "tol",
    "pass",
    "seed",
    "resolution",
]


@dataclass
class SuiteConfig:
    dims: tuple = (2,)
    resolutions: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    n_random_symmetric: int = 50
    n_random_general: int = 20
    random_vertices: int = 12
    parallelism: int = 1
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        cap = os.environ.get("CONVEXLAB_THREADS")
        if cap:
            self.parallelism = max(1, min(self.parallelism, int(cap)))

    def resolution_for(self, dim: int) -> int:
        return int(self.resolutions.get(dim, self.resolutions.get(str(dim), default_resolution(dim))))

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in d.items() if k in known})


@dataclass
class Report:
    rows: list
    metadata: dict

    @property
    def all_pass(self) -> bool:
        return all(r["pass"] for r in self.rows)

    @property
    def summary(self) -> dict:
        failed = sum(1 for r in self.rows if not r["pass"])
        return {"rows": len(self.rows), "failed": failed, "passed": len(self.rows) - failed}


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusBody:
    name: str
    body: ConvexBody
    seed: int


def default_corpus(dim: int, config: SuiteConfig) -> list[CorpusBody]:
    """Named extremal bodies, smooth families, and seeded random polytopes."""
    out = [
        CorpusBody("cube", bodies.cube(dim), 0),
        CorpusBody("cross-polytope", bodies.cross_polytope(dim), 0),
        CorpusBody("regular-simplex", bodies.regular_simplex(dim), 0),
        CorpusBody("ball", bodies.ball(dim), 0),
    ]
    for p in (1.5, 3.0, 4.0):
        out.append(CorpusBody(f"pball-{p}", bodies.p_ball_smooth(dim, p), 0))
    for aspect in (2.0, 4.0):
        axes = np.ones(dim)
        axes[0] = aspect
        axes[1] = 1.0 / aspect
        out.append(CorpusBody(f"ellipsoid-{aspect:g}", bodies.ellipsoid(axes), 0))
    m = max(config.random_vertices, 2 * dim + 2)
    for i in range(config.n_random_symmetric):
        seed = config.seed + i
        out.append(
            CorpusBody(f"rand-sym-{i:03d}", bodies.random_symmetric_polytope(dim, m, seed), seed)
        )
    for i in range(config.n_random_general):
        seed = config.seed + 10_000 + i
        out.append(CorpusBody(f"rand-gen-{i:03d}", bodies.random_polytope(dim, m, seed), seed))
    return out


def _has_curvature(body: ConvexBody) -> bool:
    if isinstance(body, Ellipsoid):
        return True
    return isinstance(body, SmoothBody) and body.curvature_fn is not None


# ---------------------------------------------------------------------------
# record flattening


def _row(suite, name, dim, body, body2, lhs, rhs, tol, passed, seed, resolution):
    return {
        "suite": suite,
        "inequality": name,
        "dim": int(dim),
        "body": body,
        "body2": body2,
        "lhs": float(lhs),
        "rhs": float(rhs),
        "gap": float(lhs) - float(rhs),
        "tol": float(tol),
        "pass": bool(passed),
        "seed": seed if seed is None else int(seed),
        "resolution": resolution if resolution is None else int(resolution),
    }


def rows_from_record(suite: str, rec, name_body: str, name_body2: str = "", seed=None, resolution=None):
    if isinstance(rec, InequalityRecord):
        return [
            _row(
                suite, rec.name, rec.dim, name_body, name_body2,
                rec.lhs, rec.rhs, rec.tolerance, rec.passed, seed, resolution,
            )
        ]
    if isinstance(rec, ChainRecord):
        return [
            _row(
                suite, rec.name + ":lower", rec.dim, name_body, name_body2,
                rec.middle, rec.lower, rec.tolerance, rec.pass_lower, seed, resolution,
            ),
            _row(
                suite, rec.name + ":upper", rec.dim, name_body, name_body2,
                rec.upper, rec.middle, rec.tolerance, rec.pass_upper, seed, resolution,
            ),
        ]
    raise TypeError(f"cannot flatten {type(rec)!r}")


def _error_row(suite, name, dim, body, body2, exc, seed, resolution):
    row = _row(suite, name, dim, body, body2, float("nan"), float("nan"), 0.0, False, seed, resolution)
    row["pass"] = False
    row["inequality"] = f"{name}!{type(exc).__name__}"
    return row


# ---------------------------------------------------------------------------
# suite

_COVERAGE: set = set()


def _cover(op: str):
    _COVERAGE.add(op)


REQUIRED_COVERAGE = {
    "surface_measure", "cone_volume_measure", "mixed_volume_measure", "mixed_volume_V1",
    "minkowski_first_check", "polar_volume", "volume_product", "log_minkowski_L",
    "log_minkowski_1", "check_prop11", "entropy_chain", "gardner_functional",
    "holder_limit", "affine_surface_area", "reverse_holder_check", "prop21_bound",
    "corollary22_bound", "mean_width_w", "second_moment", "M_functional",
    "mvee", "exterior_volume_ratio", "john_containment_check", "theorem11_check",
    "barthe_constants", "sl_exp", "optimize_M", "degeneracy_experiment", "isotropic_probe",
}


def _body_checks(entry: CorpusBody, quad, resolution: int) -> list:
    """All single-body checks for one corpus entry."""
    rows = []
    K, name, seed = entry.body, entry.name, entry.seed
    dim = K.dim

    def run(suite, op_name, fn):
        try:
            for rec in fn():
                rows.extend(rows_from_record(suite, rec, name, seed=seed, resolution=resolution))
        except ConvexLabError as exc:
            rows.append(_error_row(suite, op_name, dim, name, "", exc, seed, resolution))

    _cover("theorem11_check")
    _cover("exterior_volume_ratio")
    _cover("mvee")
    _cover("volume_product")
    _cover("polar_volume")
    run("ellipsoids", "theorem11", lambda: [ellipsoids.theorem11_check(K)])
    _cover("john_containment_check")
    run("ellipsoids", "john", lambda: [ellipsoids.john_containment_check(K)])

    def m_identity():
        _cover("M_functional")
        _cover("mean_width_w")
        _cover("second_moment")
        m = functionals.M_functional(K, None, quad)
        vp = functionals.volume_product(K, quad)
        omega = unit_ball_volume(dim)
        rec = InequalityRecord(
            name="mean-width-position-bound",
            dim=dim,
            lhs=vp,
            rhs=omega * m,
            tolerance=max(1e-3 * abs(vp), 1e-6),
            body=name,
        )
        return [rec]

    run("positions", "m-identity", m_identity)

    if _has_curvature(K):
        _cover("corollary22_bound")
        _cover("affine_surface_area")
        run("functionals", "corollary22", lambda: list(functionals.corollary22_bound(K, quad)))
    return rows


def _pair_checks(entry: CorpusBody, l_name: str, L: ConvexBody, quad, resolution: int) -> list:
    rows = []
    K, name, seed = entry.body, entry.name, entry.seed
    dim = K.dim

    def run(suite, op_name, fn):
        try:
            for rec in fn():
                rows.extend(
                    rows_from_record(suite, rec, name, l_name, seed=seed, resolution=resolution)
                )
        except ConvexLabError as exc:
            rows.append(_error_row(suite, op_name, dim, name, l_name, exc, seed, resolution))

    def prop11():
        _cover("check_prop11")
        _cover("log_minkowski_1")
        _cover("log_minkowski_L")
        _cover("cone_volume_measure")
        _cover("mixed_volume_measure")
        _cover("mixed_volume_V1")
        _cover("surface_measure")
        chain, second = functionals.check_prop11(K, L, quad)
        return [chain, second]

    run("log-minkowski", "prop11", prop11)
    _cover("entropy_chain")
    run("log-minkowski", "chain", lambda: [functionals.entropy_chain(K, L, quad)])
    _cover("gardner_functional")
    run("log-minkowski", "gardner2", lambda: [functionals.gardner_functional(K, L, "gardner2", quad)])
    _cover("minkowski_first_check")
    run("mixed-volume", "minkowski-first", lambda: [measures.minkowski_first_check(L, K, quad)])

    def holder():
        _cover("holder_limit")
        a3, t3 = functionals.holder_limit(K, L, 1e3, quad)
        a4, t4 = functionals.holder_limit(K, L, 1e4, quad)
        rec = InequalityRecord(
            name="holder-limit-decay",
            dim=dim,
            lhs=abs(a3 - t3),
            rhs=abs(a4 - t4),
            tolerance=1e-12,
            body=name,
            body2=l_name,
        )
        return [rec]

    run("log-minkowski", "holder-limit", holder)

    if _has_curvature(L):
        _cover("prop21_bound")
        run("functionals", "prop21", lambda: [functionals.prop21_bound(K, L, quad)])
        _cover("reverse_holder_check")
        run("functionals", "reverse-holder", lambda: [functionals.reverse_holder_check(K, L, quad)])
    return rows


def run_suite(config: SuiteConfig) -> Report:
    """Run every check on the configured corpus and aggregate a Report."""
    _COVERAGE.clear()
    all_rows = []
    quads = {}
    for dim in config.dims:
        res = config.resolution_for(dim)
        quads[dim] = build_quadrature(dim, res, config.seed)

    # exercised once per run for coverage accounting
    for dim in config.dims:
        _cover("barthe_constants")
        ellipsoids.barthe_constants(dim)

    tasks = []
    for dim in config.dims:
        quad = quads[dim]
        res = quad.resolution
        corpus = default_corpus(dim, config)
        pair_targets = [("ball", bodies.ball(dim)), ("cube", bodies.cube(dim))]
        for entry in corpus:
            tasks.append(lambda e=entry, q=quad, r=res: _body_checks(e, q, r))
            for l_name, L in pair_targets:
                tasks.append(
                    lambda e=entry, ln=l_name, L=L, q=quad, r=res: _pair_checks(e, ln, L, q, r)
                )

    if config.parallelism > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as ex:
            chunks = list(ex.map(lambda t: t(), tasks))
    else:
        chunks = [t() for t in tasks]
    for chunk in chunks:
        all_rows.extend(chunk)

    # position ops run once per suite (optimizer is expensive); cover the
    # remaining operations on a tiny representative body
    if config.dims:
        dim0 = config.dims[0]
        _cover("sl_exp")
        _cover("optimize_M")
        _cover("degeneracy_experiment")
        _cover("isotropic_probe")
        pr = positions.optimize_M(
            bodies.ellipsoid([2.0] + [0.5] + [1.0] * (dim0 - 2)), restarts=2, seed=config.seed
        )
        all_rows.extend(
            rows_from_record(
                "positions",
                InequalityRecord(
                    name="optimized-position-bound",
                    dim=dim0,
                    lhs=pr.volume_product,
                    rhs=pr.omega_M,
                    tolerance=max(1e-3 * abs(pr.volume_product), 1e-6),
                    body=pr.body,
                ),
                pr.body,
                seed=config.seed,
                resolution=quads[dim0].resolution,
            )
        )
        positions.degeneracy_experiment(dim0, [1.0, 4.0], config.seed)
        positions.isotropic_probe(bodies.ball(dim0))

    all_rows.sort(key=lambda r: (r["suite"], r["inequality"], r["dim"], r["body"], r["body2"]))
    metadata = {
        "config": {
            "dims": list(config.dims),
            "resolutions": {str(d): quads[d].resolution for d in config.dims},
            "seed": config.seed,
            "n_random_symmetric": config.n_random_symmetric,
            "n_random_general": config.n_random_general,
            "random_vertices": config.random_vertices,
        },
        "coverage": sorted(_COVERAGE),
        "summary": {},
    }
    report = Report(rows=all_rows, metadata=metadata)
    report.metadata["summary"] = report.summary
    return report


# ---------------------------------------------------------------------------
# emission


def report_to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        writer.writerow(
            [
                r["suite"],
                r["inequality"],
                r["dim"],
                r["body"],
                r["body2"],
                repr(r["lhs"]),
                repr(r["rhs"]),
                repr(r["gap"]),
                repr(r["tol"]),
                str(r["pass"]).lower(),
                "" if r["seed"] is None else r["seed"],
                "" if r["resolution"] is None else r["resolution"],
            ]
        )
    return buf.getvalue()


def report_to_json(report: Report) -> str:
    return json.dumps({"metadata": report.metadata, "rows": report.rows}, sort_keys=True, indent=2)


def emit_report(report: Report, fmt: str, path: str) -> None:
    """Write the report; byte-stable for identical configs."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown report format {fmt!r}")
    text = report_to_csv(report) if fmt == "csv" else report_to_json(report)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write report to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# fuzzing support (degenerate / malformed body specs)


def fuzz_specs(count: int, seed: int = DEFAULT_SEED) -> list:
    """Deterministic stream of malformed/degenerate body specs."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        kind = int(rng.integers(0, 10))
        if kind == 0:
            out.append({})
        elif kind == 1:
            out.append({"type": "polytope-v", "vertices": rng.normal(size=(2, 2)).tolist()})
        elif kind == 2:
            # collinear points
            t = rng.normal(size=(5, 1))
            d = rng.normal(size=(1, 2))
            out.append({"type": "polytope-v", "vertices": (t @ d).tolist()})
        elif kind == 3:
            # origin outside
            pts = rng.normal(size=(6, 2)) + np.array([10.0, 10.0])
            out.append({"type": "polytope-v", "vertices": pts.tolist()})
        elif kind == 4:
            out.append({"type": "ellipsoid", "shape": [[1.0, 2.0], [0.0, 1.0]]})
        elif kind == 5:
            out.append({"type": "ellipsoid", "shape": [[1.0, 0.0], [0.0, -2.0]]})
        elif kind == 6:
            out.append({"type": "pball", "dim": 2, "p": float(rng.uniform(-2.0, 1.0))})
        elif kind == 7:
            out.append({"type": "named", "name": "dodecahedron", "dim": 3})
        elif kind == 8:
            out.append({"type": "polytope-v", "vertices": "not-a-matrix"})
        else:
            out.append({"type": int(rng.integers(0, 100))})
    return out
