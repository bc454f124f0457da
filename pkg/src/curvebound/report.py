"""Pipeline stages and deterministic report documents.

Every stage returns plain dicts holding ``Fraction``, ``int``, ``float``,
``str``, lists and dicts. :func:`to_jsonable` turns rationals into
``"p/q"`` strings; JSON is emitted with sorted keys so a fixed config and
seed always give the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import __version__
from .curvature import (
    HALF,
    check_neighbor_minimization,
    check_tensorization,
    global_lower_bound,
    nu_from_curvature,
    shell_growth_violations,
)
from .errors import CurveboundError, GuardError, ParameterOutOfRange
from .graph import Graph, load_graph
from .isoperimetry import (
    cheeger_brute,
    cheeger_family,
    higher_cheeger_brute,
    partition_guard,
    stirling2,
    subset_guard,
    verify_h_monotonicity,
)
from .shells import (
    GrowthEnvelope,
    constant_envelope,
    empirical_envelope,
    envelope_violations,
    middle_slice,
    mu_from_hout,
    outer_boundary,
    shell_profile,
    sphere_cut,
    verify_lemma_d_lowerbound,
)
from .spectral import (
    DENSE_GUARD,
    SLACK,
    bound_higher,
    bound_lambda2,
    bound_one_sided,
    buser_constant_route,
    laplacian_spectrum,
)

PASS, FAIL, SKIP = "pass", "fail", "skipped"

# verdict names in pipeline order
VERDICTS = (
    "neighbor-minimization",
    "tensorization",
    "shell-growth",
    "shell-growth-bipartite",
    "max-rho",
    "tridiagonal-higher",
    "decay-lower-bound",
    "large-level-set",
    "hardy-sandwich",
    "hardy-gap",
    "higher-cheeger-monotone",
)

EXHAUSTIVE_PAIRS = 64
SAMPLED_PAIRS = 200
TENSOR_GUARD = 256
HIGHER_INDEX = 3


@dataclass
class RunConfig:
    command: str
    source: str
    laziness: Fraction = HALF
    envelope: str = "empirical"
    sigma: str = "auto"
    fmt: str = "human"
    seed: int = 0
    max_dense: int = DENSE_GUARD
    interior_only: bool = False
    kind: str = "outer"
    cells: int = 1

    def echo(self) -> dict:
        return {
            "command": self.command,
            "source": self.source,
            "laziness": self.laziness,
            "envelope": self.envelope,
            "sigma": self.sigma,
            "format": self.fmt,
            "seed": self.seed,
            "max_dense": self.max_dense,
            "interior_only": self.interior_only,
            "kind": self.kind,
            "n": self.cells,
        }


@dataclass
class ReportDocument:
    config: dict
    sections: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    def verdict(self, name: str, status: str, **detail) -> None:
        self.verdicts.append({"name": name, "status": status, "detail": detail})

    @property
    def exit_code(self) -> int:
        return 1 if any(v["status"] == FAIL for v in self.verdicts) else 0

    def as_dict(self) -> dict:
        return {
            "tool": "curvebound",
            "version": __version__,
            "config": self.config,
            "sections": self.sections,
            "verdicts": self.verdicts,
            "exit_code": self.exit_code,
        }


# ---------------------------------------------------------------------------
# serialization


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "item"):
        return to_jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(doc: ReportDocument | dict) -> str:
    data = doc.as_dict() if isinstance(doc, ReportDocument) else doc
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2) + "\n"


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([rational(x) if isinstance(x, Fraction) else x for x in row])
    return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return rational(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return f"{x:.6g}"
    if x is None:
        return "-"
    return str(x)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [[_fmt(x) for x in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# stages


def curvature_stage(g: Graph, config: RunConfig) -> dict:
    rep = global_lower_bound(g, config.laziness)
    edges = rep.interior_edges if config.interior_only else list(rep.kappa)
    return {
        "edges": [[u, v, rep.kappa[(u, v)]] for u, v in edges],
        "k": rep.k,
        "k_interior": rep.k_interior,
        "contaminated": len(rep.contaminated),
        "bound": rep.acceptance_bound(),
        "laziness": rep.laziness,
    }


def _pairs(g: Graph, seed: int) -> tuple[list[tuple[int, int]], str]:
    if g.n <= EXHAUSTIVE_PAIRS:
        return list(combinations(range(g.n), 2)), "exhaustive"
    rng = random.Random(seed)
    out = set()
    while len(out) < SAMPLED_PAIRS:
        x, y = rng.sample(range(g.n), 2)
        out.add((min(x, y), max(x, y)))
    return sorted(out), "sampled"


def isoperimetry_stage(g: Graph, kind: str = "outer", cells: int = 1) -> dict:
    """Brute force when it fits the guard, otherwise the family witness."""
    if cells > 1:
        res = higher_cheeger_brute(g, cells)
        return {"kind": res.kind, "value": res.value, "witness": res.witness, "method": res.method, "certified": True}
    if (1 << g.n) <= subset_guard() and g.n <= 62:
        res = cheeger_brute(g, kind)
        return {"kind": kind, "value": res.value, "witness": res.witness, "method": res.method, "certified": True}
    if kind != "outer" or g.family is None:
        raise GuardError(f"2^{g.n} subsets exceed the enumeration guard and no family witness applies")
    res = cheeger_family(g.family, cross_check=False)
    return {
        "kind": kind,
        "value": res.value,
        "witness": res.witness,
        "method": res.method,
        "certified": False,
    }


def read_vertex_file(path: str) -> list[int]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0]
            out.extend(int(tok) for tok in line.replace(",", " ").split())
    return out


def choose_sigma(g: Graph, spec: str, iso: dict | None = None) -> tuple[frozenset, frozenset | None, str]:
    """``(sigma, V+ or None, provenance)`` from a ``--sigma`` spec."""
    if spec == "auto":
        if iso is None:
            iso = isoperimetry_stage(g, "outer")
        (a,) = iso["witness"]
        if iso["certified"]:
            return outer_boundary(g, a), frozenset(a), "h_out-witness"
        if a[0] == "slice-above":
            sigma, plus = middle_slice(g)
            return sigma, plus, "middle-slice"
        if a[0] == "ball":
            sigma, ball = sphere_cut(g, a[1], a[2] + 1)
            return sigma, ball, f"sphere:{a[1]},{a[2] + 1}"
        raise ParameterOutOfRange(f"cannot turn witness {a!r} into a cut-set")
    if spec == "middle-slice":
        sigma, plus = middle_slice(g)
        return sigma, plus, spec
    if spec.startswith("sphere:"):
        try:
            x, r = (int(t) for t in spec[len("sphere:") :].split(","))
        except ValueError as exc:
            raise ParameterOutOfRange(f"bad sphere spec {spec!r}") from exc
        sigma, ball = sphere_cut(g, x, r)
        return sigma, ball, spec
    return frozenset(read_vertex_file(spec)), None, "file"


def read_envelope_file(path: str) -> GrowthEnvelope:
    """CSV with header ``k,nu,mu``; rationals as ``p/q``; empty mu allowed."""
    nu, mu = {}, {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            k = int(row["k"])
            nu[k] = Fraction(row["nu"])
            if row.get("mu"):
                mu[k] = Fraction(row["mu"])
    return GrowthEnvelope(nu=dict(sorted(nu.items())), mu=dict(sorted(mu.items())), provenance="file")


def build_envelope(mode: str, g: Graph, profile, h_out: Fraction | None, k: Fraction | None) -> GrowthEnvelope:
    """Envelope for a profile under ``--envelope MODE``.

    ``empirical`` uses the signed shell sizes for both ``nu`` and ``mu``.
    ``constant`` and ``curvature`` supply ``nu`` and derive ``mu`` from
    ``h_out``. ``file:PATH`` reads a CSV envelope.
    """
    reach = max(profile.t_plus, -profile.t_minus) + 1
    if mode == "empirical":
        return empirical_envelope(profile, signed=True)
    if mode.startswith("file:"):
        return read_envelope_file(mode[len("file:") :])
    if h_out is None:
        raise ParameterOutOfRange(f"envelope mode {mode!r} needs h_out")
    if mode == "constant":
        return mu_from_hout(constant_envelope(reach), h_out)
    if mode == "curvature":
        d = g.max_degree
        growth = nu_from_curvature(d, k, g.is_bipartite)
        s = len(profile.sigma)
        # a single vertex's ball growth scaled to the cut-set: nu(i) = ratio^i
        nu = {}
        for i in range(reach + 1):
            nu[i] = nu[-i] = growth.ratio**i if i else Fraction(1)
        env = GrowthEnvelope(nu=dict(sorted(nu.items())), mu={}, provenance="curvature", meta={"sigma_size": s})
        return mu_from_hout(env, h_out)
    raise ParameterOutOfRange(f"unknown envelope mode {mode!r}")


def shells_section(profile, env: GrowthEnvelope | None) -> dict:
    s = len(profile.sigma)
    rows = []
    for kk in sorted(set(profile.shell_size) | (set(env.nu) if env else set())):
        rows.append(
            [
                kk,
                profile.size(kk),
                Fraction(profile.size(kk), s),
                env.nu_at(kk) if env else None,
                env.mu.get(kk) if env else None,
            ]
        )
    out = {
        "sigma": sorted(profile.sigma),
        "sigma_size": s,
        "t_plus": profile.t_plus,
        "t_minus": profile.t_minus,
        "rows": rows,
    }
    if env is not None:
        out["envelope"] = {
            "provenance": env.provenance,
            "h_out": env.h_out,
            "T": env.T,
            "t_plus": env.t_plus,
            "t_minus": env.t_minus,
            "window": [env.t_minus, env.t_plus],
            "violations": envelope_violations(profile, env, (env.t_minus, env.t_plus)),
        }
    return out


def spectrum_section(spec) -> dict:
    return {
        "method": spec.method,
        "tolerance": spec.tolerance,
        "size": len(spec),
        "eigenvalues": list(spec.eigenvalues),
        "meta": spec.meta,
    }


def bounds_section(env: GrowthEnvelope, spec, graph_name: str) -> dict:
    """Every bound next to the eigenvalue it must dominate."""
    rep = bound_lambda2(env, spec, graph=graph_name)
    rows = [dict(r) for r in rep.checks]
    higher = []
    tp, tm = env.t_plus, -env.t_minus
    for k in range(1, min(HIGHER_INDEX, tp) + 1):
        for l in range(1, min(HIGHER_INDEX, tm) + 1):
            if k + l > len(spec):
                continue
            value = bound_higher(env, k, l)
            true = spec.lam(k + l)
            higher.append(
                {"k": k, "l": l, "bound": value, "true": true, "status": PASS if value + SLACK >= true else FAIL}
            )
    one_sided = []
    if (tp >= 1) != (tm >= 1):
        side = 1 if tp >= 1 else -1
        for k in range(1, min(HIGHER_INDEX, max(tp, tm)) + 1):
            value = bound_one_sided(env, k, side)
            true = spec.lam(k)
            one_sided.append({"k": k, "bound": value, "true": true, "status": PASS if value + SLACK >= true else FAIL})
    return {
        "B": rep.B,
        "lambda2_bound": rep.lambda2_bound,
        "checks": rows,
        "higher": higher,
        "one_sided": one_sided,
        "notes": rep.notes,
    }


# ---------------------------------------------------------------------------
# commands


def _doc(config: RunConfig) -> ReportDocument:
    return ReportDocument(config=config.echo())


def cmd_curvature(config: RunConfig) -> ReportDocument:
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)
    doc.sections["curvature"] = curvature_stage(g, config)
    return doc


def cmd_cheeger(config: RunConfig) -> ReportDocument:
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)
    doc.sections["isoperimetry"] = isoperimetry_stage(g, config.kind, config.cells)
    return doc


def _profile_and_envelope(g: Graph, config: RunConfig, doc: ReportDocument):
    iso = None
    if config.sigma == "auto" or config.envelope in ("constant", "curvature"):
        try:
            iso = isoperimetry_stage(g, "outer")
        except GuardError:
            iso = None
        if iso is not None:
            doc.sections["isoperimetry"] = iso
    sigma, plus, how = choose_sigma(g, config.sigma, iso)
    profile = shell_profile(g, sigma, plus)
    k = None
    if config.envelope == "curvature":
        k = global_lower_bound(g, config.laziness).acceptance_bound()
    env = build_envelope(config.envelope, g, profile, iso["value"] if iso else None, k)
    section = shells_section(profile, env)
    section["sigma_source"] = how
    doc.sections["shells"] = section
    return iso, profile, env


def cmd_shells(config: RunConfig) -> ReportDocument:
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)
    _profile_and_envelope(g, config, doc)
    return doc


def cmd_spectrum(config: RunConfig) -> ReportDocument:
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)
    doc.sections["spectrum"] = spectrum_section(laplacian_spectrum(g, config.max_dense))
    return doc


def cmd_bound(config: RunConfig) -> ReportDocument:
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)
    _, profile, env = _profile_and_envelope(g, config, doc)
    spec = laplacian_spectrum(g, config.max_dense)
    doc.sections["spectrum"] = spectrum_section(spec)
    if doc.sections["shells"]["envelope"]["violations"]:
        doc.verdict("envelope", FAIL, reason="envelope does not bound the shells")
        return doc
    bounds = bounds_section(env, spec, g.name)
    doc.sections["bounds"] = bounds
    _bound_verdicts(doc, bounds)
    return doc


def _graph_section(g: Graph) -> dict:
    return {
        "name": g.name,
        "vertices": g.n,
        "edges": g.edge_count,
        "regular_degree": g.regular_degree,
        "bipartite": g.is_bipartite,
    }


def _status_of(rows: list[dict]) -> str:
    states = [r["status"] for r in rows]
    if not states or all(s == SKIP for s in states):
        return SKIP
    return FAIL if FAIL in states else PASS


def _bound_verdicts(doc: ReportDocument, bounds: dict) -> None:
    by = {}
    for row in bounds["checks"]:
        by.setdefault(row["check"], []).append(row)
    doc.verdict("max-rho", _status_of(by.get("hardy-max-rho", [])))
    higher = bounds["higher"] + bounds["one_sided"]
    doc.verdict("tridiagonal-higher", _status_of(higher), cases=len(higher), one_sided=bool(bounds["one_sided"]))
    sandwich = by.get("hardy-sandwich-lower", []) + by.get("hardy-sandwich-upper", [])
    sandwich += by.get("hardy-minimizer-monotone", [])
    doc.verdict("hardy-sandwich", _status_of(sandwich))
    doc.verdict("hardy-gap", _status_of(by.get("hardy-gap", [])), B=bounds["B"])


def cmd_verify(config: RunConfig) -> ReportDocument:
    """Full chain with one verdict per checked statement.

    A stage that hits a guard or whose hypotheses fail is marked skipped
    with the reason; later stages that depend on it are skipped as well.
    """
    g = load_graph(config.source)
    doc = _doc(config)
    doc.sections["graph"] = _graph_section(g)

    # curvature
    curv = curvature_stage(g, config)
    doc.sections["curvature"] = {key: curv[key] for key in ("k", "k_interior", "contaminated", "bound", "laziness")}
    k = curv["bound"]
    pairs, how = _pairs(g, config.seed)
    bad = check_neighbor_minimization(g, pairs, config.laziness, curv["k"])
    doc.verdict("neighbor-minimization", FAIL if bad else PASS, pairs=len(pairs), mode=how, violations=len(bad))
    if g.n**2 <= TENSOR_GUARD:
        kb, kp, ok = check_tensorization(g, 2, config.laziness)
        doc.verdict("tensorization", PASS if ok else FAIL, r=2, k_base=kb, k_power=kp)
    else:
        doc.verdict("tensorization", SKIP, reason=f"|V|^2 > {TENSOR_GUARD}")

    # shell growth around single vertices
    d = g.max_degree
    bad, worst = shell_growth_violations(g, d, k, False)
    doc.verdict("shell-growth", FAIL if bad else PASS, d=d, k=k, worst_ratio=worst, violations=len(bad))
    if g.is_bipartite:
        bad, worst = shell_growth_violations(g, d, k, True)
        doc.verdict("shell-growth-bipartite", FAIL if bad else PASS, worst_ratio=worst, violations=len(bad))
    else:
        doc.verdict("shell-growth-bipartite", SKIP, reason="not bipartite")

    # isoperimetry, cut-set, envelope
    try:
        iso, profile, env = _profile_and_envelope(g, config, doc)
    except GuardError as exc:
        for name in VERDICTS[4:]:
            doc.verdict(name, SKIP, reason=str(exc))
        return doc
    except CurveboundError as exc:
        for name in VERDICTS[4:]:
            doc.verdict(name, SKIP, reason=f"{type(exc).__name__}: {exc}")
        return doc

    try:
        spec = laplacian_spectrum(g, config.max_dense)
    except GuardError as exc:
        for name in VERDICTS[4:]:
            doc.verdict(name, SKIP, reason=str(exc))
        return doc
    doc.sections["spectrum"] = spectrum_section(spec)

    violations = doc.sections["shells"]["envelope"]["violations"]
    if violations:
        for name in ("max-rho", "tridiagonal-higher", "hardy-sandwich", "hardy-gap"):
            doc.verdict(name, SKIP, reason="envelope does not bound the shells")
    elif len(spec) < 2:
        for name in ("max-rho", "tridiagonal-higher", "hardy-sandwich", "hardy-gap"):
            doc.verdict(name, SKIP, reason="fewer than two eigenvalues")
    else:
        bounds = bounds_section(env, spec, g.name)
        doc.sections["bounds"] = bounds
        _bound_verdicts(doc, bounds)

    # decay lower bound needs the certified optimizer as the cut-set
    if iso is not None and iso["certified"] and doc.sections["shells"]["sigma_source"] == "h_out-witness":
        growth = empirical_envelope(profile)
        (a,) = iso["witness"]
        bad = verify_lemma_d_lowerbound(g, profile.sigma, growth, iso["value"], a)
        doc.verdict("decay-lower-bound", FAIL if bad else PASS, h_out=iso["value"], violations=bad)
    else:
        doc.verdict("decay-lower-bound", SKIP, reason="cut-set is not a certified h_out optimizer")

    # explicit large-level-set bound
    try:
        value = buser_constant_route(g, profile.sigma, profile=profile)
        doc.verdict("large-level-set", PASS if float(value) + SLACK >= spec.lam(2) else FAIL, bound=value, true=spec.lam(2))
    except CurveboundError as exc:
        doc.verdict("large-level-set", SKIP, reason=type(exc).__name__)

    # higher Cheeger monotonicity
    if g.n >= 3 and stirling2(g.n, 3) <= partition_guard() and g.n <= 62:
        bad = verify_h_monotonicity(g, 3)
        doc.verdict("higher-cheeger-monotone", FAIL if bad else PASS, n_max=3, violations=bad)
    else:
        doc.verdict("higher-cheeger-monotone", SKIP, reason="too few vertices or partition guard")
    return doc


COMMANDS = {
    "curvature": cmd_curvature,
    "cheeger": cmd_cheeger,
    "shells": cmd_shells,
    "bound": cmd_bound,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# human and csv rendering


def render_csv(doc: ReportDocument) -> str:
    s = doc.sections
    cmd = doc.config["command"]
    if cmd == "curvature":
        return _csv(s["curvature"]["edges"], ["u", "v", "kappa"])
    if cmd == "cheeger":
        iso = s["isoperimetry"]
        return _csv([[iso["kind"], iso["value"], iso["method"]]], ["kind", "value", "method"])
    if cmd == "shells":
        return _csv(s["shells"]["rows"], ["k", "size", "normalized", "nu", "mu"])
    if cmd == "spectrum":
        return _csv([[i + 1, x] for i, x in enumerate(s["spectrum"]["eigenvalues"])], ["k", "lambda"])
    rows = []
    for row in s.get("bounds", {}).get("checks", []):
        rows.append([row["check"], row.get("side", ""), row["bound"], row["true"], row["status"]])
    for row in s.get("bounds", {}).get("higher", []):
        rows.append([f"higher({row['k']},{row['l']})", "", row["bound"], row["true"], row["status"]])
    for v in doc.verdicts:
        rows.append([v["name"], "", "", "", v["status"]])
    return _csv(rows, ["check", "side", "bound", "true", "status"])


def render_human(doc: ReportDocument) -> str:
    s = doc.sections
    out = [f"curvebound {__version__}  {doc.config['command']} {doc.config['source']}"]
    if "graph" in s:
        gs = s["graph"]
        out.append(f"graph {gs['name']}: |V| = {gs['vertices']}, |E| = {gs['edges']}")
    if "curvature" in s:
        c = s["curvature"]
        out.append(f"curvature: k = {_fmt(c['k'])}, interior k = {_fmt(c['k_interior'])}")
        if "edges" in c:
            out.append(_table(c["edges"], ["u", "v", "kappa"]))
    if "isoperimetry" in s:
        iso = s["isoperimetry"]
        out.append(f"h_{iso['kind']} = {_fmt(iso['value'])} ({iso['method']}) witness {iso['witness']}")
    if "shells" in s:
        sh = s["shells"]
        out.append(f"cut-set ({sh['sigma_source']}) size {sh['sigma_size']}")
        out.append(_table(sh["rows"], ["k", "|S_k|", "|S_k|/|S|", "nu", "mu"]))
    if "spectrum" in s:
        ev = s["spectrum"]["eigenvalues"]
        out.append(f"spectrum ({s['spectrum']['method']}): " + ", ".join(f"{x:.6g}" for x in ev[:12]))
    if "bounds" in s:
        b = s["bounds"]
        rows = [[r["check"], r.get("side", ""), r["bound"], r["true"], r["status"]] for r in b["checks"]]
        rows += [[f"higher({r['k']},{r['l']})", "", r["bound"], r["true"], r["status"]] for r in b["higher"]]
        rows += [[f"one-sided({r['k']})", "", r["bound"], r["true"], r["status"]] for r in b["one_sided"]]
        out.append(_table(rows, ["check", "side", "bound", "true", "status"]))
    if doc.verdicts:
        out.append(_table([[v["name"], v["status"]] for v in doc.verdicts], ["verdict", "status"]))
    return "\n".join(out).rstrip("\n") + "\n"


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return emit_json(doc)
    if fmt == "csv":
        return render_csv(doc)
    return render_human(doc)
