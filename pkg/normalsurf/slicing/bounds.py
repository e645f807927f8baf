import logging
from dataclasses import dataclass
from dataclasses import replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator
from typing import Optional
from typing import Union

from normalsurf.slicing.complexes import Orientability
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import betti_numbers
from normalsurf.slicing.complexes import euler_characteristic
from normalsurf.slicing.complexes import f_vector
from normalsurf.slicing.complexes import is_combinatorial_3_manifold
from normalsurf.slicing.complexes import is_connected
from normalsurf.slicing.complexes import is_k_neighborly
from normalsurf.slicing.complexes import orientability
from normalsurf.slicing.complexes import span
from normalsurf.slicing.slicing import Slicing
from normalsurf.slicing.slicing import SlicingStats
from normalsurf.slicing.slicing import VertexPartition
from normalsurf.slicing.slicing import is_weakly_neighborly
from normalsurf.slicing.slicing import slice_complex

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class Verdict(Enum):
    HOLDS = "holds"
    EQUALITY = "equality"
    VIOLATED = "violated"
    PRECONDITION_UNMET = "precondition-unmet"

    @property
    def code(self) -> str:
        return {"holds": "H", "equality": "E", "violated": "V"}.get(self.value, "-")


class CheckKind(Enum):
    THEOREM = "theorem"
    IDENTITY = "identity"
    CONJECTURE = "conjecture"


@dataclass(frozen=True)
class BoundRecord:
    key: str
    statement: str
    kind: CheckKind
    applicable: bool
    reason: str
    relation: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    verdict: Verdict

    @property
    def is_alarm(self) -> bool:
        """A proved statement came out false."""
        return self.verdict is Verdict.VIOLATED and self.kind is not CheckKind.CONJECTURE

    @property
    def is_finding(self) -> bool:
        return self.verdict is Verdict.VIOLATED and self.kind is CheckKind.CONJECTURE

    def __str__(self) -> str:
        if not self.applicable:
            return f"{self.key}: {self.verdict.value} ({self.reason})"
        return (
            f"{self.key}: {_show(self.lhs)} {self.relation} {_show(self.rhs)} "
            f"-> {self.verdict.value}"
        )


def _show(value: Optional[Fraction]) -> str:
    if value is None:
        return "-"
    return str(value.numerator) if value.denominator == 1 else str(value)


def _compare(
    key: str,
    statement: str,
    lhs: Number,
    relation: str,
    rhs: Number,
    kind: CheckKind = CheckKind.THEOREM,
    reason: str = "",
) -> BoundRecord:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if lhs == rhs:
        verdict = Verdict.EQUALITY
    elif relation == "=":
        verdict = Verdict.VIOLATED
    elif (lhs < rhs) == (relation == "<="):
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.VIOLATED
    return BoundRecord(key, statement, kind, True, reason, relation, lhs, rhs, verdict)


def _unmet(
    key: str,
    statement: str,
    reason: str,
    relation: str = "<=",
    kind: CheckKind = CheckKind.THEOREM,
) -> BoundRecord:
    return BoundRecord(
        key, statement, kind, False, reason, relation, None, None, Verdict.PRECONDITION_UNMET
    )


@dataclass(frozen=True)
class AmbientFacts:
    f_vector: tuple[int, int, int, int]
    closed_manifold: bool
    certificate: str
    connected: bool
    orientable: Optional[bool]
    two_neighborly: bool

    @property
    def f0(self) -> int:
        return self.f_vector[0]

    @property
    def orientable_manifold(self) -> bool:
        return self.closed_manifold and self.connected and bool(self.orientable)


@lru_cache(maxsize=32)
def ambient_facts(complex_: SimplicialComplex) -> AmbientFacts:
    check = is_combinatorial_3_manifold(complex_)
    connected = is_connected(complex_)
    orientable = None
    if check.is_closed_manifold and connected:
        orientable = orientability(complex_) is Orientability.ORIENTABLE
    return AmbientFacts(
        f_vector=f_vector(complex_).padded(4)[:4],
        closed_manifold=check.is_closed_manifold,
        certificate=check.certificate,
        connected=connected,
        orientable=orientable,
        two_neighborly=is_k_neighborly(complex_, 2),
    )


def check_genus_upper(
    complex_: SimplicialComplex, partition: VertexPartition, slicing: Slicing
) -> BoundRecord:
    key, statement = "genus-upper-bound", "g <= C(floor(f0/2) - 1, 2)"
    facts = ambient_facts(complex_)
    stats = slicing.statistics
    if not facts.orientable_manifold:
        return _unmet(key, statement, "ambient is not a connected orientable closed 3-manifold")
    if not stats.is_connected:
        return _unmet(key, statement, "slicing is disconnected")
    n = facts.f0 // 2
    return _compare(key, statement, stats.genus, "<=", comb(max(n - 1, 0), 2))


def check_kalelkar(slicing: Slicing) -> BoundRecord:
    key, statement = "kalelkar-bound", "g <= 7q/2"
    stats = slicing.statistics
    if not stats.orientable:
        return _unmet(key, statement, "slicing is non-orientable")
    if not stats.is_connected:
        return _unmet(key, statement, "slicing is disconnected")
    return _compare(key, statement, stats.genus, "<=", Fraction(7 * stats.q, 2))


def check_main_bound(
    complex_: SimplicialComplex, partition: VertexPartition, slicing: Slicing
) -> BoundRecord:
    """q >= 4g + 3n/2 - (4 + 2c^2) with n the vertex count of the ambient complex."""
    key, statement = "main-bound", "q >= 4g + 3 f0/2 - (4 + 2c^2)"
    facts = ambient_facts(complex_)
    if not facts.closed_manifold:
        return _unmet(key, statement, "ambient is not a closed combinatorial 3-manifold", ">=")
    if not facts.two_neighborly:
        return _unmet(key, statement, "ambient is not 2-neighborly", ">=")
    stats = slicing.statistics
    c = partition.c
    rhs = 4 * stats.genus + Fraction(3 * facts.f0, 2) - (4 + 2 * c * c)
    return _compare(key, statement, stats.q, ">=", rhs)


def check_quadrangulated_bound(
    complex_: SimplicialComplex, partition: VertexPartition, slicing: Slicing
) -> BoundRecord:
    key, statement = "quadrangulated-bound", "q >= 3(|V_i| + g - 1) for a span of dimension <= 1"
    stats = slicing.statistics
    if not stats.is_connected:
        return _unmet(key, statement, "slicing is disconnected", ">=")

    side = quadrangulated_side(complex_, partition, stats.genus)
    if side is None:
        return _unmet(key, statement, "both spans contain a triangle", ">=")
    part = partition.v1 if side == 1 else partition.v2
    rhs = 3 * (len(part) + stats.genus - 1)
    return _compare(key, statement, stats.q, ">=", rhs, reason=f"n = |V{side}|")


def quadrangulated_side(
    complex_: SimplicialComplex, partition: VertexPartition, genus: Fraction
) -> Optional[int]:
    """Side whose span has dimension <= 1 and gives the larger bound, or None."""
    candidates = [
        (3 * (len(part) + genus - 1), -side, side)
        for side, part in ((1, partition.v1), (2, partition.v2))
        if span(complex_, part).dimension <= 1
    ]
    return max(candidates)[2] if candidates else None


def check_conjecture(slicing: Slicing) -> BoundRecord:
    stats = slicing.statistics
    return _compare(
        "quadrilateral-conjecture",
        "q >= 3 - 3 chi/2",
        stats.q,
        ">=",
        3 - Fraction(3 * stats.chi, 2),
        kind=CheckKind.CONJECTURE,
    )


def _equivalent_condition(
    key: str, statement: str, weakly_neighborly: bool, satisfied: bool, lhs, rhs
) -> BoundRecord:
    """Each condition must hold exactly when the map is weakly neighborly.

    On a map that is not weakly neighborly the record compares with `!=`, so
    a condition that fails there comes out as holding.
    """
    if weakly_neighborly:
        relation, reason = "=", "weakly neighborly"
        verdict = Verdict.EQUALITY if satisfied else Verdict.VIOLATED
    else:
        relation, reason = "!=", "not weakly neighborly"
        verdict = Verdict.VIOLATED if satisfied else Verdict.HOLDS
    return BoundRecord(
        key,
        statement,
        CheckKind.IDENTITY,
        True,
        reason,
        relation,
        Fraction(lhs),
        Fraction(rhs),
        verdict,
    )


def _mgon_vertex_bound(stats: SlicingStats, weakly_neighborly: bool) -> BoundRecord:
    key = "mgon-vertex-bound"
    if stats.q == 0:
        m = 3
    elif stats.t == 0:
        m = 4
    else:
        return _unmet(
            key,
            "2n >= 2m+1 + sqrt((2m+1)^2 - 8m chi)",
            "mixes triangles and quadrilaterals",
            ">=",
        )

    statement = f"2n - {2 * m + 1} >= sqrt({(2 * m + 1) ** 2} - {8 * m} chi)"
    left = 2 * stats.n - 2 * m - 1
    discriminant = (2 * m + 1) ** 2 - 8 * m * stats.chi
    if discriminant < 0:
        record = BoundRecord(
            key,
            statement,
            CheckKind.THEOREM,
            True,
            "no real root",
            ">=",
            Fraction(left),
            None,
            Verdict.HOLDS,
        )
    elif left < 0:
        record = _compare(key, statement, left, ">=", 0)
    else:
        record = _compare(key, statement, left * left, ">=", discriminant)

    if (record.verdict is Verdict.EQUALITY) != weakly_neighborly:
        return replace(
            record,
            verdict=Verdict.VIOLATED,
            reason="equality does not coincide with weak neighborliness",
        )
    return record


def check_wn_conditions(
    complex_: SimplicialComplex,
    partition: VertexPartition,
    slicing: Slicing,
    weakly_neighborly: Optional[bool] = None,
) -> list[BoundRecord]:
    stats = slicing.statistics
    if weakly_neighborly is None:
        weakly_neighborly = is_weakly_neighborly(slicing)
    n, e, q, chi = stats.n, stats.e, stats.q, stats.chi

    records = [
        _equivalent_condition(
            "weakly-neighborly-edges",
            "e = C(n,2) - 2q",
            weakly_neighborly,
            e == comb(n, 2) - 2 * q,
            e,
            comb(n, 2) - 2 * q,
        ),
        _equivalent_condition(
            "weakly-neighborly-vertices",
            "2n - 7 = sqrt(49 + 8q - 24 chi)",
            weakly_neighborly,
            2 * n - 7 >= 0 and (2 * n - 7) ** 2 == 49 + 8 * q - 24 * chi,
            (2 * n - 7) ** 2,
            49 + 8 * q - 24 * chi,
        ),
        _equivalent_condition(
            "weakly-neighborly-quadrilaterals",
            "q = C(n-3,2) + 3 chi - 6",
            weakly_neighborly,
            q == (n - 3) * (n - 4) // 2 + 3 * chi - 6,
            q,
            (n - 3) * (n - 4) // 2 + 3 * chi - 6,
        ),
    ]

    boundary_key = "boundary-vertex-equation"
    boundary_statement = "n1 n2 (15 - n1 n2 - n1 - n2) = 12 chi"
    if weakly_neighborly:
        n1 = len({v.upper for v in slicing.vertices})
        n2 = len({v.lower for v in slicing.vertices})
        records.append(
            _compare(
                boundary_key,
                boundary_statement,
                n1 * n2 * (15 - n1 * n2 - n1 - n2),
                "=",
                12 * chi,
                reason=f"n1 = {n1}, n2 = {n2}",
            )
        )
    else:
        records.append(
            _unmet(boundary_key, boundary_statement, "slicing is not weakly neighborly", "=")
        )

    records.append(_mgon_vertex_bound(stats, weakly_neighborly))
    return records


def _ambient_records(facts: AmbientFacts) -> list[BoundRecord]:
    f0, f1, f2, f3 = facts.f_vector
    specs = [
        ("ambient-lower-bound", "f1 >= 4 f0 - 10", f1, ">=", 4 * f0 - 10, CheckKind.THEOREM),
        ("ambient-edge-count", "f1 <= C(f0,2)", f1, "<=", comb(f0, 2), CheckKind.IDENTITY),
        ("ambient-euler", "f0 - f1 + f2 - f3 = 0", f0 - f1 + f2 - f3, "=", 0, CheckKind.IDENTITY),
        ("ambient-ridges", "2 f2 = 4 f3", 2 * f2, "=", 4 * f3, CheckKind.IDENTITY),
    ]
    if not facts.closed_manifold:
        return [
            _unmet(key, statement, facts.certificate, relation, kind)
            for key, statement, _, relation, _, kind in specs
        ]
    return [
        _compare(key, statement, lhs, relation, rhs, kind)
        for key, statement, lhs, relation, rhs, kind in specs
    ]


def _span_records(
    complex_: SimplicialComplex,
    partition: VertexPartition,
    stats: SlicingStats,
    facts: AmbientFacts,
    homology: bool,
) -> list[BoundRecord]:
    precondition = None
    if not facts.orientable_manifold:
        precondition = "ambient is not a connected orientable closed 3-manifold"
    elif not stats.is_connected:
        precondition = "slicing is disconnected"

    records = []
    for side, part in ((1, partition.v1), (2, partition.v2)):
        genus_key = f"span-genus-{side}"
        genus_statement = f"1 - chi(span(V{side})) = g"
        betti_key = f"span-betti-{side}"
        betti_statement = f"beta1 - beta2 of span(V{side}) = g"
        if precondition:
            records.append(_unmet(genus_key, genus_statement, precondition, "="))
            if homology:
                records.append(_unmet(betti_key, betti_statement, precondition, "="))
            continue

        induced = span(complex_, part)
        chi = euler_characteristic(induced)
        records.append(_compare(genus_key, genus_statement, 1 - chi, "=", stats.genus))
        if homology:
            betti = betti_numbers(induced)
            beta = betti[1] - betti[2]
            records.append(_compare(betti_key, betti_statement, beta, "=", stats.genus))
    return records


@dataclass(frozen=True)
class BoundReport:
    partition: VertexPartition
    stats: SlicingStats
    weakly_neighborly: bool
    records: tuple[BoundRecord, ...]

    def __iter__(self) -> Iterator[BoundRecord]:
        return iter(self.records)

    def __getitem__(self, key: str) -> BoundRecord:
        for record in self.records:
            if record.key == key:
                return record
        raise KeyError(key)

    @property
    def alarms(self) -> tuple[BoundRecord, ...]:
        return tuple(record for record in self.records if record.is_alarm)

    @property
    def findings(self) -> tuple[BoundRecord, ...]:
        return tuple(record for record in self.records if record.is_finding)

    def digest(self) -> str:
        return " ".join(f"{record.key}:{record.verdict.code}" for record in self.records)


def bound_report(
    complex_: SimplicialComplex,
    partition: VertexPartition,
    slicing: Optional[Slicing] = None,
    homology: bool = True,
) -> BoundReport:
    if slicing is None:
        slicing = slice_complex(complex_, partition)
    stats = slicing.statistics
    facts = ambient_facts(complex_)
    weakly_neighborly = is_weakly_neighborly(slicing)

    records = _ambient_records(facts)
    records += [
        _compare(
            "slicing-euler",
            "n - e + t + q = 2 - 2g",
            stats.n - stats.e + stats.t + stats.q,
            "=",
            2 - 2 * stats.genus,
            CheckKind.IDENTITY,
        ),
        _compare(
            "slicing-ridges",
            "2e = 3t + 4q",
            2 * stats.e,
            "=",
            3 * stats.t + 4 * stats.q,
            CheckKind.IDENTITY,
        ),
        _compare(
            "cut-edge-count",
            "n <= |V1| |V2|",
            stats.n,
            "<=",
            len(partition.v1) * len(partition.v2),
        ),
    ]

    surplus = facts.f_vector[3] - stats.t - stats.q
    inside = sum(
        1
        for tetrahedron in complex_.tetrahedra
        if partition.v1.issuperset(tetrahedron) or partition.v2.issuperset(tetrahedron)
    )
    records += [
        _compare("tetrahedra-surplus", "f3 - t - q >= 0", surplus, ">=", 0),
        _compare(
            "tetrahedra-in-spans",
            "f3 - t - q = tetrahedra inside span(V1) and span(V2)",
            surplus,
            "=",
            inside,
            CheckKind.IDENTITY,
        ),
    ]
    records += _span_records(complex_, partition, stats, facts, homology)
    records += [
        check_genus_upper(complex_, partition, slicing),
        check_kalelkar(slicing),
        check_main_bound(complex_, partition, slicing),
        check_quadrangulated_bound(complex_, partition, slicing),
        check_conjecture(slicing),
    ]
    records += check_wn_conditions(complex_, partition, slicing, weakly_neighborly)

    report = BoundReport(partition, stats, weakly_neighborly, tuple(records))
    for record in report.alarms:
        logger.warning("%s on %s: %s", record.kind.value, partition, record)
    for record in report.findings:
        logger.warning("conjecture fails on %s: %s", partition, record)
    return report
