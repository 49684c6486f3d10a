"""Text formats: graphs, permutations, schedules, families and route reports."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import ParseError, PermutationError
from .graph import Graph, from_edge_list
from .paths import SwitchablePathFamily
from .perm import Permutation
from .scheduler import RouteReport
from .sim import Schedule


def _ints(tokens, what):
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"{what}: non-integer token") from exc


# graphs


def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.d}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    """Parse ``n d`` followed by sorted ``u v`` lines with ``u < v``.

    Anything else (unsorted or repeated edges, ``u >= v``, blank lines,
    a wrong edge count) is a :class:`ParseError`.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("line 1 must be 'n d'")
    n, d = _ints(head, "line 1")
    edges = []
    for no, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {no}: expected 'u v'")
        u, v = _ints(parts, f"line {no}")
        if not u < v:
            raise ParseError(f"line {no}: need u < v, got {u} {v}")
        if edges and (u, v) <= edges[-1]:
            raise ParseError(f"line {no}: edges not strictly sorted")
        edges.append((u, v))
    if 2 * len(edges) != n * d:
        raise ParseError(f"expected {n * d // 2} edges for n={n} d={d}, found {len(edges)}")
    g = from_edge_list(n, edges)
    if g.d != d:
        raise ParseError(f"header says d={d} but graph is {g.d}-regular")
    return g


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(graph_to_text(g).encode()).hexdigest()


def read_graph(path) -> Graph:
    return graph_from_text(Path(path).read_text())


def write_graph(g: Graph, path):
    Path(path).write_text(graph_to_text(g))


# permutations


def perm_to_text(p) -> str:
    return " ".join(str(int(x)) for x in p) + "\n"


def perm_from_text(text: str) -> Permutation:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if len(lines) != 1:
        raise ParseError("permutation file must hold exactly one line")
    try:
        return Permutation(_ints(lines[0].split(), "permutation"))
    except PermutationError as exc:
        raise ParseError(str(exc)) from exc


def read_perm(path) -> Permutation:
    return perm_from_text(Path(path).read_text())


def write_perm(p, path):
    Path(path).write_text(perm_to_text(p))


# schedules


def _edges_text(m) -> str:
    return " ".join(f"{u}-{v}" for u, v in m)


def schedule_to_text(s: Schedule) -> str:
    return "".join(f"round {i}: {_edges_text(m)}".rstrip() + "\n" for i, m in enumerate(s.rounds))


def _parse_edge(token: str, where: str) -> tuple[int, int]:
    parts = token.split("-")
    if len(parts) != 2:
        raise ParseError(f"{where}: bad edge {token!r}")
    u, v = _ints(parts, where)
    if not u < v:
        raise ParseError(f"{where}: need u < v in {token!r}")
    return u, v


def schedule_from_text(text: str) -> Schedule:
    rounds = []
    for no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        label, sep, body = line.partition(":")
        if not sep or label.split() != ["round", str(len(rounds))]:
            raise ParseError(f"line {no}: expected 'round {len(rounds)}: ...'")
        rounds.append([_parse_edge(tok, f"line {no}") for tok in body.split()])
    return Schedule(rounds)


def schedule_to_json(s: Schedule, g: Graph | None = None) -> str:
    doc = {
        "graph_hash": graph_hash(g) if g is not None else None,
        "rounds": [[list(e) for e in m] for m in s.rounds],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def schedule_from_json(text: str) -> tuple[Schedule, str | None]:
    try:
        doc = json.loads(text)
        rounds = [[(int(u), int(v)) for u, v in m] for m in doc["rounds"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad schedule JSON: {exc}") from exc
    return Schedule(rounds), doc.get("graph_hash")


def read_schedule(path) -> tuple[Schedule, str | None]:
    """Read either schedule format; the hash is ``None`` for the text form."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return schedule_from_json(text)
    return schedule_from_text(text), None


# families and reports


def family_to_text(fam: SwitchablePathFamily) -> str:
    out = [f"k {fam.k}"]
    out.extend("path " + " ".join(map(str, p)) for p in fam.paths)
    out.extend(f"slice {z}: {_edges_text(fam.slice(z))}".rstrip() for z in range(1, fam.k + 1))
    if fam.paths:
        out.append(f"middle: {_edges_text(fam.middle())}")
    return "\n".join(out) + "\n"


def report_to_text(r: RouteReport) -> str:
    bound = "infeasible" if r.theoretical_bound is None else str(r.theoretical_bound)
    lam = "none" if r.lambda_hat is None else f"{r.lambda_hat:.6f}"
    lines = [
        f"rounds {r.rounds}",
        f"batches sigma={r.batches['sigma']} tau={r.batches['tau']}",
        f"k {r.k}",
        f"ell {r.ell}",
        f"epsilon {r.epsilon:.9f}",
        f"growth {r.growth}",
        f"frontier_target {r.frontier_target}",
        f"lambda_hat {lam}",
        f"theoretical_bound {bound}",
        f"fallback_pairs {r.fallback_pairs}",
        f"verified {'true' if r.verified else 'false'}",
        "schedule",
    ]
    return "\n".join(lines) + "\n" + schedule_to_text(r.schedule)
