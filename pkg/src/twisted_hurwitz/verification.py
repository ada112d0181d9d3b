"""Cross-module identity suites behind ``twisted-hurwitz verify``."""
from __future__ import annotations

from dataclasses import dataclass, field

from .constellation import (
    MalformedConstellationError,
    build_constellation,
    delta_orbit_count,
    extract_matchings,
    orientable_by_flips,
    surface_report,
)
from .factorization import count_by_cycle_type, enumerate_factorizations
from .matching_seq import (
    InvalidMatchingSeq,
    MatchingSeq,
    enumerate_matching_seqs,
    p_map,
    p_preimages,
    validate_matching_seq,
)
from .perm_core import (
    Partition,
    compose,
    conjugate,
    hyperoctahedral_elements,
    hyperoctahedral_order,
    partitions,
    tau,
    twisted_class,
)

CLASS_PROPERTY_MAX_N = 3


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: int = 0
    first_failure: str = ""

    def record(self, ok: bool, what) -> None:
        self.instances += 1
        if not ok:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = str(what)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerifyReport:
    n_max: int
    m_max: int
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_text(self) -> str:
        lines = [f"verify n_max={self.n_max} m_max={self.m_max}"]
        for s in self.suites:
            status = "PASS" if s.passed else "FAIL"
            line = f"{status} {s.name}: instances={s.instances} failures={s.failures}"
            if s.first_failure:
                line += f" first={s.first_failure}"
            lines.append(line)
        failed = [s.name for s in self.suites if not s.passed]
        lines.append(f"{len(self.suites)} suites, " + ("all passed" if not failed else "failed: " + ", ".join(failed)))
        return "\n".join(lines) + "\n"

    def to_record(self) -> dict:
        return {
            "n_max": self.n_max,
            "m_max": self.m_max,
            "passed": self.passed,
            "suites": [
                {"name": s.name, "instances": s.instances, "failures": s.failures,
                 "passed": s.passed, "first_failure": s.first_failure}
                for s in self.suites
            ],
        }


def _flip_first_delta(ms: MatchingSeq) -> MatchingSeq:
    """Test hook: replace delta_0 by tau, which breaks the first shape condition."""
    if ms.m == 0:
        return ms
    deltas = list(ms.deltas)
    deltas[1] = tau(ms.n)
    return MatchingSeq(ms.n, tuple(deltas))


def run_verification(n_max: int, m_max: int, *, workers: int = 1, fault: str | None = None) -> VerifyReport:
    """Run every identity suite over 1 <= n <= n_max, 0 <= m <= m_max."""
    if fault not in (None, "flip-delta"):
        raise ValueError(f"unknown fault {fault!r}")
    names = [
        "total_count",
        "two_to_m",
        "image_validity",
        "round_trip_a",
        "round_trip_b",
        "monodromy_identity",
        "class_property",
        "constellation_bijection",
        "euler_characteristic",
        "orientability_oracle",
        "components_vs_orbits",
    ]
    suites = {name: SuiteResult(name) for name in names}
    faulted = False

    def pmap(ts):
        nonlocal faulted
        ms = p_map(ts)
        if fault == "flip-delta" and not faulted and ms.m > 0:
            faulted = True
            return _flip_first_delta(ms)
        return ms

    for n in range(1, n_max + 1):
        t = tau(n)
        for m in range(0, m_max + 1):
            counts = count_by_cycle_type(m, n, workers=workers)
            total = sum(counts.values())
            suites["total_count"].record(total == (2 * n * (n - 1)) ** m, f"n={n} m={m} total={total}")
            for lam in partitions(n):
                where = f"n={n} m={m} lambda={lam}"
                matchings = list(enumerate_matching_seqs(m, lam))
                suites["two_to_m"].record(counts[lam] == 2**m * len(matchings), where)

                preimage_cache: dict[MatchingSeq, list] = {}
                for ts in enumerate_factorizations(m, lam, workers=workers):
                    ms = pmap(ts)
                    suites["image_validity"].record(validate_matching_seq(ms, lam).ok, f"{where} seq={ts}")
                    try:
                        if ms not in preimage_cache:
                            preimage_cache[ms] = p_preimages(ms)
                        ok = ts in preimage_cache[ms]
                    except InvalidMatchingSeq:
                        ok = False
                    suites["round_trip_a"].record(ok, f"{where} seq={ts}")
                    suites["monodromy_identity"].record(_monodromy_ok(ts), f"{where} seq={ts}")

                for ms in matchings:
                    try:
                        pre = p_preimages(ms)
                        ok = (
                            len(pre) == 2**m
                            and len(set(pre)) == len(pre)
                            and all(all(x.admissible for x in p.seq) and p_map(p) == ms for p in pre)
                        )
                    except InvalidMatchingSeq:
                        ok = False
                    suites["round_trip_b"].record(ok, f"{where} ms={ms}")
                    if m >= 2:
                        _check_constellation(ms, lam, suites)

        if n <= CLASS_PROPERTY_MAX_N:
            group = list(hyperoctahedral_elements(n))
            ok_order = len(group) == hyperoctahedral_order(n)
            for lam in partitions(n):
                suites["class_property"].record(ok_order and _single_orbit(lam, group, t), f"n={n} lambda={lam}")

    return VerifyReport(n_max, m_max, [suites[name] for name in names])


def _monodromy_ok(ts) -> bool:
    """delta_k = P delta_{k-1} with P = (c d)(a b) built from the k-th transposition."""
    ms = p_map(ts)
    t = tau(ts.n)
    xs = ts.prefix_products()
    for k, tr in enumerate(ts.seq):
        g = compose(t, xs[k])
        a, b = g(tr.a), g(tr.b)
        h = compose(g, t)
        c, d = h(tr.a), h(tr.b)
        if len({a, b, c, d}) != 4:
            return False
        left = compose(ms.deltas[k + 1], ms.deltas[k].inverse())
        if sorted(left.cycles()) != sorted(
            tuple(sorted(pair, key=lambda x: (abs(x), x < 0))) for pair in ((a, b), (c, d))
        ):
            return False
    return True


def _single_orbit(lam: Partition, group, t) -> bool:
    members = set(twisted_class(lam))
    if not members:
        return False
    for sigma in members:
        if compose(t, sigma) != compose(sigma.inverse(), t):
            return False
    start = min(members)
    orbit = {conjugate(start, g) for g in group}
    closed = all(conjugate(s, g) in members for s in members for g in group)
    return closed and orbit == members


def _check_constellation(ms: MatchingSeq, lam: Partition, suites: dict) -> None:
    n, m = ms.n, ms.m
    where = f"n={n} m={m} lambda={lam} ms={ms}"
    try:
        c = build_constellation(ms)
        back = extract_matchings(c)
    except (ValueError, MalformedConstellationError) as exc:
        for name in ("constellation_bijection", "euler_characteristic", "orientability_oracle", "components_vs_orbits"):
            suites[name].record(False, f"{where} error={exc}")
        return
    r = surface_report(c)
    suites["constellation_bijection"].record(
        back == ms
        and r.vertex_count == m * (n - 1)
        and all(v == n - 1 for v in r.vertex_counts)
        and r.edge_count == (m - 1) * n
        and r.face_count == len(lam)
        and r.face_degrees == lam,
        where,
    )
    suites["euler_characteristic"].record(r.euler_characteristic == n + len(lam) - m, where)
    suites["orientability_oracle"].record(list(r.orientable) == orientable_by_flips(c.map), where)
    suites["components_vs_orbits"].record(r.component_count == delta_orbit_count(ms), where)
