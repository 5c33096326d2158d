"""Experiment configs, the sweep runner, and deterministic report emission.

A config is a plain JSON document; rerunning an identical config (any worker
count) produces byte-identical CSV/JSON output.  Exact rationals are rendered
as "p/q"; display floats use 12 significant digits.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import containers, generators, graphs, homogeneous, tournaments
from .containers import ContainerParams, minimal_ell
from .errors import CapabilityError, InputError
from .graphs import Graph, path_graph

__all__ = [
    "ExperimentConfig",
    "ReportRow",
    "run_experiment",
    "emit_report",
    "render_value",
    "exhaustive_graph_container_check",
    "spot_check_vectorized",
    "ComboSummary",
]


# ---------------------------------------------------------------------------
# config and rows


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    generator: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    seeds: tuple[int, ...] = ()
    caps: dict = field(default_factory=dict)
    out: str | None = None

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"config is not valid JSON: {exc}") from exc
        if "kind" not in doc:
            raise InputError("config needs a 'kind' field")
        return cls(
            kind=doc["kind"],
            generator=doc.get("generator", {}),
            grid=doc.get("grid", {}),
            seeds=tuple(doc.get("seeds", [])),
            caps=doc.get("caps", {}),
            out=doc.get("out"),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "generator": self.generator,
                "grid": self.grid,
                "seeds": list(self.seeds),
                "caps": self.caps,
                "out": self.out,
            },
            indent=2,
            sort_keys=True,
        )


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    instance: str
    params: tuple[tuple[str, Any], ...]
    measures: tuple[tuple[str, Any], ...]
    verdict: str

    def as_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"experiment": self.experiment, "instance_id": self.instance}
        d.update(self.params)
        d.update(self.measures)
        d["verdict"] = self.verdict
        return d


def render_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_report(rows: Iterable[ReportRow], format: str = "csv", path: str | None = None) -> str:
    rows = list(rows)
    if format == "csv":
        columns: list[str] = ["experiment", "instance_id"]
        for row in rows:
            for key, _ in row.params + row.measures:
                if key not in columns:
                    columns.append(key)
        if "verdict" not in columns:
            columns.append("verdict")
        lines = [",".join(columns)]
        for row in rows:
            d = row.as_dict()
            lines.append(",".join(render_value(d[c]) if c in d else "" for c in columns))
        text = "\n".join(lines) + "\n"
    elif format == "json":
        text = (
            json.dumps(
                [
                    {k: render_value(v) for k, v in row.as_dict().items()}
                    for row in rows
                ],
                indent=2,
            )
            + "\n"
        )
    else:
        raise InputError(f"unknown report format {format!r}")
    if path is not None:
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write report to {path}: {exc}") from exc
    return text


# ---------------------------------------------------------------------------
# exhaustive vectorized sweep over all labeled graphs on n <= 7 vertices


@dataclass(frozen=True)
class ComboSummary:
    n: int
    epsilon: Fraction
    u: int
    k: int
    ell: int
    bound: int
    instances_checked: int  # graphs passing the degree precondition
    violations: int
    improved_bound_violations: int


def _vectorized_tables(
    n: int, eps_values: list[Fraction], u_values: list[int]
) -> tuple[list[np.ndarray], dict[tuple[Fraction, int], np.ndarray]]:
    """Per-graph tables over all 2^C(n,2) edge-set codes: independent-set
    counts by size, and degree-precondition booleans per (eps, u)."""
    if n > 7:
        raise CapabilityError("exhaustive sweep capped at n=7 (2^21 graphs)")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = len(pairs)
    codes = np.arange(1 << m, dtype=np.uint32)
    # adjacency bitmask rows per graph
    adj = [np.zeros(1 << m, dtype=np.uint8) for _ in range(n)]
    for b, (u, v) in enumerate(pairs):
        bit = ((codes >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
        adj[u] |= bit << np.uint8(v)
        adj[v] |= bit << np.uint8(u)
    pop = np.array([bin(i).count("1") for i in range(1 << n)], dtype=np.uint8)

    # independent-set counts per size, and degree preconditions per (eps, u)
    counts = [np.zeros(1 << m, dtype=np.int16) for _ in range(n + 1)]
    ok: dict[tuple[Fraction, int], np.ndarray] = {
        (eps, u): np.ones(1 << m, dtype=bool) for eps in eps_values for u in u_values
    }
    for smask in range(1 << n):
        svertices = [v for v in range(n) if smask >> v & 1]
        size = len(svertices)
        ew_code = 0
        for b, (u, v) in enumerate(pairs):
            if smask >> u & 1 and smask >> v & 1:
                ew_code |= 1 << b
        indep = (codes & np.uint32(ew_code)) == 0
        counts[size] += indep
        if size == 0:
            continue
        maxdeg = np.zeros(1 << m, dtype=np.uint8)
        for v in svertices:
            np.maximum(maxdeg, pop[adj[v] & np.uint8(smask)], out=maxdeg)
        for eps in eps_values:
            thr = eps * size - 1
            if thr <= 0:
                continue
            ithr = -((-thr.numerator) // thr.denominator)  # ceil
            cond = maxdeg >= ithr
            for u in u_values:
                if size >= u:
                    ok[(eps, u)] &= cond
    return counts, ok


def exhaustive_graph_container_check(
    n: int, eps_values: Iterable[Fraction], u_values: Iterable[int], k_values: Iterable[int]
) -> list[ComboSummary]:
    """Container soundness over ALL 2^C(n,2) labeled graphs on n vertices.

    Vectorized with numpy over the edge-set codes; ell is always the minimal
    value with (1-eps)^ell * n <= u.  Parameter combos where that ell exceeds
    k are skipped (invalid for the graph bound).  The vectorized primitives
    are cross-checked against the scalar oracles by `spot_check_vectorized`.
    """
    eps_values = list(eps_values)
    u_values = list(u_values)
    k_values = list(k_values)
    counts, ok = _vectorized_tables(n, eps_values, u_values)
    summaries = []
    for eps in eps_values:
        for u in u_values:
            ok_arr = ok[(eps, u)]
            checked = int(ok_arr.sum())
            for k in k_values:
                ell = minimal_ell(n, eps, u)
                if ell > k:
                    continue
                params = ContainerParams(eps, u=u, ell=ell, k=k)
                bound = containers.kw_bound(n, params)
                improved = containers.kw_bound(n, params, improved=True)
                viol = int((ok_arr & (counts[k] > bound)).sum())
                viol_improved = int((ok_arr & (counts[k] > improved)).sum())
                summaries.append(
                    ComboSummary(
                        n=n,
                        epsilon=eps,
                        u=u,
                        k=k,
                        ell=ell,
                        bound=bound,
                        instances_checked=checked,
                        violations=viol,
                        improved_bound_violations=viol_improved,
                    )
                )
    return summaries


def spot_check_vectorized(
    n: int, eps_values: list[Fraction], u_values: list[int], codes: Iterable[int]
) -> None:
    """Cross-check the vectorized sweep's per-graph tables against the scalar
    oracles on specific edge-set codes; raises ConsistencyError on any
    disagreement."""
    from .errors import ConsistencyError

    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    counts, ok = _vectorized_tables(n, eps_values, u_values)
    for code in codes:
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])
        for k in range(n + 1):
            exact = containers.count_independent_sets_exact(g, k)
            if exact != int(counts[k][code]):
                raise ConsistencyError(
                    f"IS count mismatch at code={code}, k={k}: "
                    f"scalar {exact} vs vectorized {int(counts[k][code])}"
                )
        for eps in eps_values:
            for u in u_values:
                scalar_ok, _ = containers.verify_degree_precondition(g, eps, u, variant="graph")
                if scalar_ok != bool(ok[(eps, u)][code]):
                    raise ConsistencyError(
                        f"degree precondition mismatch at code={code}, eps={eps}, u={u}"
                    )


# ---------------------------------------------------------------------------
# experiment kinds


def _rows_graph_container_exhaustive(config: ExperimentConfig) -> list[ReportRow]:
    n = int(config.grid.get("n", 7))
    eps_values = [Fraction(e) for e in config.grid.get("eps", ["1/4", "1/2", "1"])]
    u_values = [int(u) for u in config.grid.get("u", list(range(1, n + 1)))]
    k_values = [int(k) for k in config.grid.get("k", list(range(n + 1)))]
    rows = []
    for s in exhaustive_graph_container_check(n, eps_values, u_values, k_values):
        rows.append(
            ReportRow(
                experiment=config.kind,
                instance=f"n{s.n}-eps{s.epsilon}-u{s.u}-k{s.k}",
                params=(
                    ("n", s.n),
                    ("r", 2),
                    ("eps", s.epsilon),
                    ("u", s.u),
                    ("ell", s.ell),
                    ("k", s.k),
                ),
                measures=(
                    ("instances_checked", s.instances_checked),
                    ("bound", s.bound),
                    ("violations", s.violations),
                    ("improved_bound_violations", s.improved_bound_violations),
                ),
                verdict="ok" if s.violations == 0 else "VIOLATION",
            )
        )
    return rows


def _hypergraph_instance_row(
    kind: str, n: int, p: Fraction, eps: Fraction, seed: int, stream: int
) -> ReportRow | None:
    """One r=3 container-soundness instance; None when the degree
    precondition fails (instance does not qualify)."""
    r = 3
    h = generators.random_uniform_hypergraph(r, n, p, seed, stream=stream)
    u = n - 3
    ok_pre, _ = containers.verify_degree_precondition(h, eps, u, variant="uniform")
    if not ok_pre:
        return None
    ell = minimal_ell(n, eps, u)
    k = 2 * ell
    params = ContainerParams(eps, u=u, ell=ell, k=k)
    bound = containers.hypergraph_bound(n, r, params)
    exact = containers.count_independent_sets_exact(h, k)
    i_set = generators.random_independent_set(h, seed, stream=stream + 10**6)
    trace = containers.scythe_fingerprint(h, i_set, params)
    shrink_ok = all(
        trace.round_sizes[i + 1] <= (1 - eps) * trace.round_sizes[i]
        for i in range(len(trace.round_sizes) - 1)
    )
    contain_ok = i_set <= trace.segment_union | trace.container
    ok = exact <= bound and shrink_ok and contain_ok
    return ReportRow(
        experiment=kind,
        instance=f"n{n}-p{p}-eps{eps}-s{seed}-i{stream}",
        params=(("n", n), ("r", r), ("eps", eps), ("u", u), ("ell", ell), ("k", k)),
        measures=(
            ("edges", h.edge_count),
            ("exact_count", exact),
            ("bound", bound),
            ("shrinkage_ok", shrink_ok),
            ("containment_ok", contain_ok),
            ("ok", ok),
        ),
        verdict="ok" if ok else "VIOLATION",
    )


def _rows_hypergraph_container_sample(config: ExperimentConfig) -> list[ReportRow]:
    n_values = [int(n) for n in config.grid.get("n", [8, 9, 10, 11, 12])]
    p_values = [Fraction(p) for p in config.grid.get("p", ["4/5"])]
    eps_values = [Fraction(e) for e in config.grid.get("eps", ["1/8"])]
    per_cell = int(config.grid.get("count", 10))
    rows = []
    for seed in config.seeds or (0,):
        stream = 0
        for n in n_values:
            for p in p_values:
                for eps in eps_values:
                    for _ in range(per_cell):
                        row = _hypergraph_instance_row(config.kind, n, p, eps, seed, stream)
                        stream += 1
                        if row is not None:
                            rows.append(row)
    return rows


def _rows_homog_count_pipeline(config: ExperimentConfig) -> list[ReportRow]:
    n = int(config.grid.get("n", 40))
    p = Fraction(config.grid.get("p", "1/20"))
    t = int(config.grid.get("t", 5))
    k = int(config.grid.get("k", 3))
    count = int(config.grid.get("count", 10))
    rows = []
    for seed in config.seeds or (0,):
        for i in range(count):
            g = generators.gnp(n, p, seed, stream=i)
            embeddings = graphs.count_induced_p4(g)[1]
            report = homogeneous.verify_count_lower_bound(g, path_graph(4), t, k, embeddings=embeddings)
            rows.append(
                ReportRow(
                    experiment=config.kind,
                    instance=f"n{n}-p{p}-s{seed}-i{i}",
                    params=(("n", n), ("p", p), ("t", t), ("k", k)),
                    measures=(
                        ("embeddings", report.embeddings),
                        ("threshold", report.threshold),
                        ("premise_ok", report.premise_ok),
                        ("homogeneous_count", report.homogeneous_count),
                        ("lower_bound", report.lower_bound),
                    ),
                    verdict="ok" if report.ok else ("premise" if not report.premise_ok else "VIOLATION"),
                )
            )
    return rows


def _rows_closeness_pipeline(config: ExperimentConfig) -> list[ReportRow]:
    n = int(config.grid.get("n", 40))
    t = int(config.grid.get("t", 5))
    k = int(config.grid.get("k", 3))
    flips = int(config.grid.get("flips", n * n // (2 * t) // t))
    count = int(config.grid.get("count", 10))
    closeness_budget = n * n // (2 * t)
    rows = []
    for seed in config.seeds or (0,):
        for i in range(count):
            base = generators.random_cograph(n, seed, stream=i)
            g = generators.perturb_edges(base, flips, seed, stream=i + 10**6)
            hom_count = homogeneous.count_homogeneous_k(g, k)
            bound = Fraction(1, 2) * Fraction(n, 2 * t) ** k
            ok = flips <= closeness_budget and hom_count >= bound
            rows.append(
                ReportRow(
                    experiment=config.kind,
                    instance=f"n{n}-s{seed}-i{i}",
                    params=(("n", n), ("t", t), ("k", k), ("flips", flips)),
                    measures=(
                        ("closeness_budget", closeness_budget),
                        ("homogeneous_count", hom_count),
                        ("lower_bound", bound),
                    ),
                    verdict="ok" if ok else "VIOLATION",
                )
            )
    return rows


def _rows_overlay_audit(config: ExperimentConfig) -> list[ReportRow]:
    n = int(config.grid.get("n", 150))
    eps_values = [Fraction(e) for e in config.grid.get("eps", ["1/20", "1/10"])]
    cap = int(config.grid.get("embedding_constant", 100))
    rows = []
    for seed in config.seeds or (0,):
        for eps in eps_values:
            art = generators.overlay_construction(n, eps, seed)
            subsets, embeddings, copies = graphs.count_induced_p4(art.graph)
            within = all(
                len({art.part_of(v) for v in copy}) == 1 for copy in copies
            )
            limit = cap * eps**6 * n**4
            ok = within and embeddings <= limit
            rows.append(
                ReportRow(
                    experiment=config.kind,
                    instance=f"n{n}-eps{eps}-s{seed}",
                    params=(("n", n), ("eps", eps), ("s", art.s)),
                    measures=(
                        ("p4_subsets", subsets),
                        ("p4_embeddings", embeddings),
                        ("embedding_limit", limit),
                        ("all_within_part", within),
                    ),
                    verdict="ok" if ok else "VIOLATION",
                )
            )
    return rows


def _rows_eps_homog_curve(config: ExperimentConfig) -> list[ReportRow]:
    kind = config.generator.get("kind", "bipartite")
    n = int(config.grid.get("n", 60))
    p = Fraction(config.grid.get("p", "1/2"))
    eps_values = [Fraction(e) for e in config.grid.get("eps", ["1/4", "1/8", "1/16"])]
    rows = []
    for seed in config.seeds or (0,):
        if kind == "bipartite":
            g = generators.random_bipartite(n, p, seed)
        elif kind == "cograph":
            g = generators.random_cograph(n, seed)
        elif kind == "gnp":
            g = generators.gnp(n, p, seed)
        else:
            raise InputError(f"unknown generator kind {kind!r}")
        for eps in eps_values:
            witness = homogeneous.find_eps_homogeneous(g, eps, mode="density", strategy="greedy-peel")
            rows.append(
                ReportRow(
                    experiment=config.kind,
                    instance=f"{kind}-n{n}-eps{eps}-s{seed}",
                    params=(("generator", kind), ("n", n), ("eps", eps)),
                    measures=(
                        ("witness_size", len(witness.vertices)),
                        ("witness_side", witness.side),
                        ("size_over_eps_n", Fraction(len(witness.vertices)) / (eps * n)),
                    ),
                    verdict="ok",
                )
            )
    return rows


def _rows_triangle_scan(config: ExperimentConfig) -> list[ReportRow]:
    m = int(config.grid.get("m", 9))
    samples = int(config.grid.get("samples", 100))
    rows = []
    for seed in config.seeds or (0,):
        report = tournaments.triangle_distance_scan(m, samples, seed)
        for pt in report.points:
            rows.append(
                ReportRow(
                    experiment=config.kind,
                    instance=f"m{m}-s{seed}-i{pt.instance}",
                    params=(("m", m), ("seed", seed)),
                    measures=(
                        ("triangles", pt.triangles),
                        ("dist", pt.dist),
                        ("ratio", pt.dist_rate**2 * m**3 / pt.triangles if pt.triangles else ""),
                    ),
                    verdict="ok",
                )
            )
        rows.append(
            ReportRow(
                experiment=config.kind,
                instance=f"m{m}-s{seed}-summary",
                params=(("m", m), ("seed", seed)),
                measures=(
                    ("worst_ratio", report.worst_ratio if report.worst_ratio is not None else ""),
                ),
                verdict="ok",
            )
        )
    return rows


_KINDS: dict[str, Callable[[ExperimentConfig], list[ReportRow]]] = {
    "graph-container-exhaustive": _rows_graph_container_exhaustive,
    "hypergraph-container-sample": _rows_hypergraph_container_sample,
    "homog-count-pipeline": _rows_homog_count_pipeline,
    "closeness-pipeline": _rows_closeness_pipeline,
    "overlay-audit": _rows_overlay_audit,
    "eps-homog-curve": _rows_eps_homog_curve,
    "triangle-scan": _rows_triangle_scan,
}


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[ReportRow]:
    """Run one experiment; deterministic row list for identical configs,
    independent of the worker count.

    Per-seed work units run in parallel when workers > 1; per-row capability
    errors become rows with verdict "error:<type>" instead of aborting."""
    if config.kind not in _KINDS:
        raise InputError(f"unknown experiment kind {config.kind!r}; known: {sorted(_KINDS)}")
    builder = _KINDS[config.kind]
    seeds = list(config.seeds) or [0]

    def unit(seed: int) -> list[ReportRow]:
        sub = ExperimentConfig(
            kind=config.kind,
            generator=config.generator,
            grid=config.grid,
            seeds=(seed,),
            caps=config.caps,
            out=None,
        )
        try:
            return builder(sub)
        except CapabilityError as exc:
            return [
                ReportRow(
                    experiment=config.kind,
                    instance=f"seed{seed}",
                    params=(("seed", seed),),
                    measures=(("error", str(exc)),),
                    verdict="error:capability",
                )
            ]

    if workers > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(unit, seeds))
    else:
        chunks = [unit(seed) for seed in seeds]
    rows: list[ReportRow] = []
    for chunk in chunks:  # chunk order fixed by seed order, not completion order
        rows.extend(chunk)
    return rows
