"""Transversality certificates: evaluate candidate translation tuples,
search over them, and sweep whole families of structure constants.

A certificate for (v_1..v_{m+1}, w) with translations (u_1..u_{m+1}) is
valid when the intersection of the divisor facet unions of the u_i X^{v_i}
and of X_w collapses to finitely many polytope vertices, all lying on the
flag variety; the constant then equals the vertex count, which the engine
always cross-checks against the polynomial oracle.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field

from . import __version__
from .coeffs import structure_constant
from .gc_polytope import FaceUnion, Polytope, UnsupportedShapeError, Vertex
from .pluecker import delta_schubert_bottom, delta_uv
from .weyl import ParabolicShape, Permutation, bruhat_leq, length

log = logging.getLogger("gcschub")


@dataclass(frozen=True)
class Certificate:
    shape: ParabolicShape
    vs: tuple[Permutation, ...]
    w: Permutation
    us: tuple[Permutation, ...]
    vertices: tuple[Vertex, ...]
    count: int
    oracle: int
    status: str  # "certified" | "mismatch"

    @property
    def ok(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "shape": str(self.shape),
            "vs": [list(v.window) for v in self.vs],
            "w": list(self.w.window),
            "us": [list(u.window) for u in self.us],
            "vertices": [list(v.values) for v in self.vertices],
            "count": self.count,
            "oracle": self.oracle,
            "status": self.status,
        }


@dataclass(frozen=True)
class EvaluationFailure:
    kind: str  # "positive_dimension" | "vertex_outside_flag" | "unsupported_shape"
    detail: str

    @property
    def ok(self) -> bool:
        return False


class _DeltaCache:
    """Per-polytope cache of divisor facet unions."""

    def __init__(self, poly: Polytope):
        self.poly = poly
        self._uv: dict[tuple, FaceUnion] = {}
        self._w: dict[tuple, FaceUnion] = {}

    def uv(self, u: Permutation, v: Permutation) -> FaceUnion:
        key = (u.window, v.window)
        if key not in self._uv:
            self._uv[key] = delta_uv(self.poly, u, v)
        return self._uv[key]

    def bottom(self, w: Permutation) -> FaceUnion:
        key = w.window
        if key not in self._w:
            self._w[key] = delta_schubert_bottom(self.poly, w)
        return self._w[key]


def evaluate(
    poly: Polytope,
    vs: list[Permutation],
    w: Permutation,
    us: list[Permutation],
    cache: _DeltaCache | None = None,
) -> Certificate | EvaluationFailure:
    """Compute S = cap_i Delta(u_i, v_i) cap Delta(w_0, pi(w_0 w)) and turn
    it into a certificate when it is a set of flag-variety vertices."""
    shape = poly.shape
    if len(us) != len(vs):
        raise ValueError(f"need one translation per factor: {len(us)} vs {len(vs)}")
    for x in list(vs) + [w]:
        if not shape.in_min_coset_reps(x):
            raise ValueError(f"{x} is not a minimal coset representative for {shape}")
    if sum(length(v) for v in vs) != length(w):
        raise ValueError("lengths of the factors must add up to the length of w")

    cache = cache or _DeltaCache(poly)
    pieces = [cache.bottom(w)] + [cache.uv(u, v) for u, v in zip(us, vs)]
    pieces.sort(key=lambda fu: len(fu.faces))
    inter = pieces[0]
    for piece in pieces[1:]:
        inter = inter.intersect(piece)
        if inter.is_empty:
            break

    oracle = structure_constant(list(vs), w)
    if inter.is_empty:
        status = "certified" if oracle == 0 else "mismatch"
        return Certificate(shape, tuple(vs), w, tuple(us), (), 0, oracle, status)
    if inter.max_dim() > 0:
        worst = max(inter.faces, key=lambda f: f.dim)
        return EvaluationFailure(
            "positive_dimension",
            f"maximal face of dimension {worst.dim} with key {worst.key}",
        )
    verts = inter.vertices()
    try:
        outside = [v for v in verts if not poly.in_VX(v)]
    except UnsupportedShapeError as exc:
        return EvaluationFailure("unsupported_shape", str(exc))
    if outside:
        log.info(
            "vertex in V but outside the flag variety for vs=%s w=%s us=%s: %s",
            vs, w, us, outside[0].values,
        )
        return EvaluationFailure(
            "vertex_outside_flag", f"vertex {outside[0].values} not on the flag variety"
        )
    count = len(verts)
    status = "certified" if count == oracle else "mismatch"
    return Certificate(shape, tuple(vs), w, tuple(us), tuple(verts), count, oracle, status)


@dataclass
class SearchStats:
    tried: int = 0
    failures: dict[str, int] = field(default_factory=dict)
    cursor: int = 0

    def record(self, failure: EvaluationFailure):
        self.failures[failure.kind] = self.failures.get(failure.kind, 0) + 1


@dataclass(frozen=True)
class SearchResult:
    certificate: Certificate | None
    stats: SearchStats

    @property
    def ok(self) -> bool:
        return self.certificate is not None and self.certificate.ok


def _all_perms(n: int) -> list[Permutation]:
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return sorted(perms, key=lambda p: (length(p), p.window))


def _tier1(poly: Polytope, vs):
    """Single moving translation in one slot, identity elsewhere."""
    n = poly.n
    m1 = len(vs)
    idt = Permutation.identity(n)
    yield tuple([idt] * m1)
    for slot in range(m1):
        for u in _all_perms(n):
            if u.is_identity():
                continue
            us = [idt] * m1
            us[slot] = u
            yield tuple(us)


def _tier2(poly: Polytope, vs):
    """Constructive candidates: Chevalley, special pairs, cyclic shifts."""
    from .weyl import partition_of_perm

    n = poly.n
    shape = poly.shape
    idt = Permutation.identity(n)
    out = []
    if shape.is_grassmannian() and len(vs) == 2:
        m = shape.cuts[0]
        try:
            parts = [partition_of_perm(v, m) for v in vs]
        except ValueError:
            parts = None
        if parts is not None:
            one_box = tuple([1] + [0] * (m - 1))
            single_rows = all(sum(1 for p in part if p) <= 1 for part in parts)
            for i, j in ((0, 1), (1, 0)):
                # Chevalley: translate the divisor class by the partner
                if parts[i] == one_box:
                    us = [idt, idt]
                    us[i] = vs[j]
                    out.append(tuple(us))
                # special pair (r, q): block shift on the r slot
                if single_rows:
                    r, q = parts[i][0], parts[j][0]
                    if r + q <= n - m:
                        window = list(range(1, n + 1))
                        for col in range(m, m + r):
                            window[col - 1] = col + q
                        used = set(window[:m + r - 1])
                        rest = [x for x in range(1, n + 1) if x not in used]
                        u = Permutation(tuple(window[:m + r - 1] + rest))
                        us = [idt, idt]
                        us[i] = u
                        out.append(tuple(us))
            # cyclic-shift candidates for two-row shapes
            if m == 2:
                from .weyl import cyclic_shift

                cyc = cyclic_shift(n)
                power = idt
                for _ in range(n):
                    for slot in (0, 1):
                        us = [idt, idt]
                        us[slot] = power
                        out.append(tuple(us))
                    power = cyc * power
    seen = set()
    uniq = []
    for cand in out:
        if cand not in seen:
            seen.add(cand)
            uniq.append(cand)
    return uniq


def _tier3(poly: Polytope, vs, start: int):
    """Full tuple enumeration in canonical order, resumable at a cursor."""
    perms = _all_perms(poly.n)
    m1 = len(vs)
    for idx, combo in enumerate(itertools.product(perms, repeat=m1)):
        if idx < start:
            continue
        yield idx, combo


def search(
    poly: Polytope,
    vs: list[Permutation],
    w: Permutation,
    budget: int = 3000,
    tiers: tuple[int, ...] = (1, 2, 3),
    cursor: int = 0,
    cache: _DeltaCache | None = None,
) -> SearchResult:
    """Try translation tuples in deterministic order until a certificate
    appears or the budget runs out.  Factors that fail the Bruhat test
    against w are settled by a single untranslated evaluation, whose shadow
    comes out empty."""
    stats = SearchStats()
    cache = cache or _DeltaCache(poly)
    idt = Permutation.identity(poly.n)

    def attempt(us) -> Certificate | None:
        stats.tried += 1
        res = evaluate(poly, vs, w, list(us), cache=cache)
        if isinstance(res, Certificate):
            if res.status == "mismatch":
                raise AssertionError(
                    f"certificate mismatch for vs={vs} w={w} us={us}: "
                    f"{res.count} vs oracle {res.oracle}"
                )
            return res
        stats.record(res)
        return None

    def candidates(tier: int):
        if tier == 1:
            yield from _tier1(poly, vs)
        elif tier == 2:
            yield from _tier2(poly, vs)
        elif tier == 3:
            for idx, us in _tier3(poly, vs, cursor):
                stats.cursor = idx
                yield us

    if any(not bruhat_leq(v, w) for v in vs):
        found = attempt(tuple(idt for _ in vs))
        if found:
            return SearchResult(found, stats)

    for tier in tiers:
        for us in candidates(tier):
            if stats.tried >= budget:
                return SearchResult(None, stats)
            found = attempt(us)
            if found:
                return SearchResult(found, stats)
    return SearchResult(None, stats)


# -- sweeps ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    kind: str                  # "zero" | "certified" | "unresolved"
    size: int
    representative: tuple
    witness: Certificate | None


@dataclass(frozen=True)
class SweepReport:
    shape: ParabolicShape
    classes: tuple[ClassReport, ...]

    @property
    def all_resolved(self) -> bool:
        return all(c.kind in ("zero", "certified") for c in self.classes)

    def summary(self) -> dict:
        kinds: dict[str, int] = {}
        for c in self.classes:
            kinds[c.kind] = kinds.get(c.kind, 0) + 1
        return {
            "shape": str(self.shape),
            "classes": len(self.classes),
            "by_status": kinds,
            "all_resolved": self.all_resolved,
        }


def sweep_complete_flag(
    n: int, budget: int = 2000, verify_oracle: bool = True, threads: int = 1
) -> SweepReport:
    """Partition the degree-compatible triples of S_n into constant classes
    and resolve each one: the merged zero class by the oracle, the rest by
    certificate search over the class members, split tuples included.

    With threads > 1 the per-class searches run on a pool; results are
    merged back in class order, so the report never depends on scheduling.
    """
    from concurrent.futures import ThreadPoolExecutor

    from .coeffs import build_modified_partition
    from .ladder import LadderDiagram

    shape = ParabolicShape.complete(n)
    poly = Polytope(LadderDiagram(shape))
    cache = _DeltaCache(poly)
    classes = build_modified_partition(n)

    def resolve(cls) -> ClassReport:
        if cls.kind == "zero":
            if verify_oracle:
                for (u, v, w) in cls.members:
                    got = structure_constant([u, v], w)
                    if got != 0:
                        raise AssertionError(
                            f"zero class contains nonzero triple {(u, v, w)}: {got}"
                        )
            return ClassReport("zero", len(cls.members), cls.members[0], None)
        constant = structure_constant(
            [cls.members[0][0], cls.members[0][1]], cls.members[0][2]
        )
        if verify_oracle:
            for (u, v, w) in cls.members:
                got = structure_constant([u, v], w)
                if got != constant:
                    raise AssertionError(
                        f"class constant differs at {(u, v, w)}: {got} vs {constant}"
                    )
        witness = None
        candidates: list[tuple] = sorted(
            cls.members, key=lambda t: (length(t[-1]), t)
        ) + sorted(cls.extended, key=lambda t: (length(t[-1]), len(t), t))
        for member in candidates:
            *us_part, w = member
            res = search(poly, list(us_part), w, budget=budget, cache=cache)
            if res.ok:
                witness = res.certificate
                break
        return ClassReport(
            "certified" if witness else "unresolved",
            len(cls.members),
            cls.members[0],
            witness,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(resolve, classes))
    else:
        reports = [resolve(cls) for cls in classes]
    return SweepReport(shape, tuple(reports))


@dataclass(frozen=True)
class Gr2Report:
    n: int
    entries: tuple[dict, ...]

    @property
    def all_resolved(self) -> bool:
        return all(e["status"] in ("zero", "certified") for e in self.entries)


def _box_partitions(m: int, width: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(row: int, prev: int, acc: list[int]):
        if row == m:
            out.append(tuple(acc))
            return
        for v in range(prev + 1):
            acc.append(v)
            rec(row + 1, v, acc)
            acc.pop()

    rec(0, width, [])
    return out


def reduce_gr2(lam: tuple[int, int], mu: tuple[int, int], eta: tuple[int, int], n: int):
    """Peel the common (1,1)-content off a Gr(2, n) triple: the constant
    equals the one of single-row classes (a), (b) meeting (c, d), which is
    zero unless d <= min(a,b), c <= n-2 and c >= max(a,b), and otherwise
    reduces to the special pair (a-d, b-d) -> c-d in Gr(d+2, n)."""
    a, b = lam[0] - lam[1], mu[0] - mu[1]
    c = eta[0] - lam[1] - mu[1]
    d = eta[1] - lam[1] - mu[1]
    if d < 0 or c < d or c > n - 2 or c + d != a + b or c < max(a, b):
        return None
    # Gr(d+2, n) hosts the special pair (a-d, b-d) -> (c-d); when the pair
    # is trivial the constant is N_{id,id}^{id} in any Grassmannian, so the
    # rank is capped to keep the shape valid
    m2 = min(d + 2, n - 1) if a == d else d + 2
    lam2 = tuple([a - d] + [0] * (m2 - 1))
    mu2 = tuple([b - d] + [0] * (m2 - 1))
    eta2 = tuple([c - d] + [0] * (m2 - 1))
    return m2, lam2, mu2, eta2


def sweep_gr2(n: int, budget: int = 2000, tiers: tuple[int, ...] = (2, 1, 3)) -> Gr2Report:
    """Resolve every Gr(2, n) triple: reduce to a special pair and certify
    it with the block-shift construction, or establish zero.

    The constructive tier alone suffices; the later tiers are a fallback.
    """
    from .ladder import LadderDiagram
    from .weyl import grassmannian_perm

    parts = _box_partitions(2, n - 2)
    polys: dict[int, Polytope] = {}
    caches: dict[int, _DeltaCache] = {}
    entries = []
    for lam, mu, eta in itertools.product(parts, repeat=3):
        if sum(eta) != sum(lam) + sum(mu):
            continue
        oracle = structure_constant(
            [grassmannian_perm(lam, 2, n), grassmannian_perm(mu, 2, n)],
            grassmannian_perm(eta, 2, n),
        )
        red = reduce_gr2(lam, mu, eta, n)
        if red is None:
            if oracle != 0:
                raise AssertionError(f"reduction says zero but oracle {oracle} at {(lam, mu, eta)}")
            entries.append({"triple": (lam, mu, eta), "status": "zero", "N": 0})
            continue
        m2, lam2, mu2, eta2 = red
        if m2 not in polys:
            polys[m2] = Polytope(LadderDiagram(ParabolicShape((m2,), n)))
            caches[m2] = _DeltaCache(polys[m2])
        vs = [grassmannian_perm(lam2, m2, n), grassmannian_perm(mu2, m2, n)]
        w = grassmannian_perm(eta2, m2, n)
        res = search(polys[m2], vs, w, budget=budget, tiers=tiers, cache=caches[m2])
        if not res.ok:
            entries.append({"triple": (lam, mu, eta), "status": "unresolved", "N": oracle})
            continue
        if res.certificate.count != oracle:
            raise AssertionError(
                f"reduced certificate count {res.certificate.count} != oracle {oracle}"
            )
        entries.append({"triple": (lam, mu, eta), "status": "certified", "N": oracle})
    return Gr2Report(n, tuple(entries))


def sweep_gr1(n: int, budget: int = 500) -> Gr2Report:
    """Projective space: every constant is Chevalley-type and certifies."""
    from .ladder import LadderDiagram
    from .weyl import grassmannian_perm

    shape = ParabolicShape((1,), n)
    poly = Polytope(LadderDiagram(shape))
    cache = _DeltaCache(poly)
    entries = []
    for a in range(n):
        for b in range(n):
            c = a + b
            if c > n - 1:
                continue
            vs = [grassmannian_perm((a,), 1, n), grassmannian_perm((b,), 1, n)]
            w = grassmannian_perm((c,), 1, n)
            res = search(poly, vs, w, budget=budget, tiers=(2, 1), cache=cache)
            status = "unresolved"
            if res.ok:
                status = "certified" if res.certificate.count else "zero"
            entries.append({"triple": ((a,), (b,), (c,)), "status": status,
                            "N": res.certificate.count if res.ok else None})
    return Gr2Report(n, tuple(entries))


def sweep_conjecture(shape: ParabolicShape, budget: int = 2000, threads: int = 1):
    """Resolve every constant class of the shape, certified or zero.

    Complete flags go through the modified-partition classes; Gr(1, n) and
    Gr(2, n) through their reduction calculi.  Other shapes are not covered.
    """
    if shape.is_complete():
        return sweep_complete_flag(shape.n, budget=budget, threads=threads)
    if shape.is_grassmannian() and shape.cuts[0] == 1:
        return sweep_gr1(shape.n, budget=budget)
    if shape.is_grassmannian() and shape.cuts[0] == 2:
        return sweep_gr2(shape.n, budget=budget)
    raise UnsupportedShapeError(
        f"sweeps cover complete flags, Gr(1,n) and Gr(2,n); got {shape}"
    )


# -- certificate store -------------------------------------------------------------


def store_append(path: str, cert: Certificate, lam_blocks: int | None = None):
    """Append a certificate to a JSONL store, writing the schema header on
    first use."""
    import os

    header_needed = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8") as fh:
        if header_needed:
            fh.write(json.dumps({
                "schema": 1,
                "shape": str(cert.shape),
                "lambda_blocks": lam_blocks or cert.shape.k + 1,
                "version": __version__,
            }) + "\n")
        fh.write(json.dumps(cert.to_json()) + "\n")


def store_read(path: str) -> tuple[dict, list[dict]]:
    with open(path, encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    return lines[0], lines[1:]
