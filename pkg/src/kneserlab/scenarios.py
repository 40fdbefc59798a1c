"""Turn-key finite-scale reproductions of the half-line constructions.

Each scenario builds sets from a Sturmian base C = {n : n*alpha in I}
and the positive half line, measures the relevant densities along the
symmetric windows [-n, n], and checks the advertised inequalities with
explicit numeric margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .density import (banach_density, density_along, is_syndetic_at_scale,
                      is_thick_at_scale, symmetric_family)
from .errors import PreconditionError
from .quadirr import QuadIrr
from .setexpr import (Complement, HalfLine, Intersect, ProductSet, SetExpr,
                      Singleton, SturmianSet, Union, materialize)
from .structure import find_periodic_run, spread_out_witness_z
from .sturmian import SturmianSpec
from .torus import TorusInterval, find_shift_n
from .windows import IntWindow

__all__ = ["ScenarioReport", "default_tol", "verify_base_identities",
           "run_e1", "run_e2", "run_e3", "run_scenario"]


def default_tol(n: int) -> float:
    """Scale-aware tolerance for density comparisons."""
    return max(0.01, 20.0 * math.log(n) / n)


@dataclass
class ScenarioReport:
    scenario: str
    n: int
    tol: float
    measured: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    series: dict = field(default_factory=dict)

    def check(self, name: str, lhs: float, relation: str, rhs: float):
        ok = {"<=": lhs <= rhs, "<": lhs < rhs, ">=": lhs >= rhs,
              ">": lhs > rhs}[relation]
        self.assertions.append({
            "name": name, "lhs": float(lhs), "relation": relation,
            "rhs": float(rhs), "margin": float(rhs - lhs) if "<" in relation else float(lhs - rhs),
            "pass": bool(ok)})
        return ok

    def check_close(self, name: str, value: float, target: float, tol: float):
        err = abs(value - target)
        self.assertions.append({
            "name": name, "lhs": float(value), "relation": "close",
            "rhs": float(target), "margin": float(tol - err), "pass": bool(err <= tol)})
        return err <= tol

    @property
    def passed(self) -> bool:
        return all(a["pass"] for a in self.assertions)

    def to_json(self):
        return {"scenario": self.scenario, "n": self.n, "tol": self.tol,
                "measured": self.measured, "assertions": self.assertions,
                "series": {k: [[int(n), float(v)] for n, v in s]
                           for k, s in self.series.items()},
                "pass": self.passed}


def _measure(interval: TorusInterval) -> Fraction:
    m = interval.length()
    if not isinstance(m, Fraction):
        raise PreconditionError("scenario arcs need rational measure")
    return m


def _gap_bound(m: Fraction) -> int:
    # Rotation-orbit return times to an arc of measure m have gaps
    # bounded by a small multiple of 1/m.
    return int(math.ceil(3.0 / float(m))) + 2


def _lower(expr: SetExpr, n: int, rep: "ScenarioReport | None" = None,
           name: str | None = None) -> float:
    _, lower = density_along(expr, symmetric_family(), n)
    if rep is not None and name:
        rep.series[name] = lower.series
    return lower.value


def _upper_banach(expr: SetExpr, n: int) -> float:
    L = min(10_000, max(100, n // 100))
    return banach_density(expr, "upper", L, (-n, n)).value


def verify_base_identities(alpha: QuadIrr, interval: TorusInterval, n: int,
                           tol: float | None = None) -> ScenarioReport:
    """The four base density identities of the Sturmian half-line sets:

    lower(C n N) = lower(C n -N) = m/2, lower(C) = m, and (for m < 1/2)
    lower((C+C) n N) = m, all along [-n, n].
    """
    m = _measure(interval)
    tol = tol if tol is not None else default_tol(n)
    rep = ScenarioReport("base", n, tol)
    C = SturmianSet(SturmianSpec(alpha, interval))
    pos, neg = HalfLine(1), HalfLine(-1)
    vals = {
        "lower(C n N)": (_lower(Intersect(C, pos), n), float(m) / 2),
        "lower(C n -N)": (_lower(Intersect(C, neg), n), float(m) / 2),
        "lower(C)": (_lower(C, n), float(m)),
    }
    if m < Fraction(1, 2):
        sumset = ProductSet(C, C)
        vals["lower((C+C) n N)"] = (_lower(Intersect(sumset, pos), n, rep, "lower((C+C) n N)"), float(m))
    for name, (value, target) in vals.items():
        rep.measured[name] = value
        rep.check_close(name, value, target, tol)
    return rep


def run_e1(alpha: QuadIrr, interval: TorusInterval, n: int,
           tol: float | None = None) -> ScenarioReport:
    """A = C n N (no periodic control), B = C u N (syndetic): the sumset
    turns thick and the density inequality reverses strictly."""
    m = _measure(interval)
    if m >= Fraction(1, 3):
        raise PreconditionError("needs arc measure < 1/3")
    tol = tol if tol is not None else default_tol(n)
    rep = ScenarioReport("e1", n, tol)
    C = SturmianSet(SturmianSpec(alpha, interval))
    A = Intersect(C, HalfLine(1))
    B = Union(C, HalfLine(1))
    AB = ProductSet(A, B)

    verdict = spread_out_witness_z(A, IntWindow(-n, n), m_max=20)
    rep.measured["A_spread_out_at_scale"] = verdict["spread_out_at_scale"]
    rep.check("A has no margin periodic superset",
              1.0 if verdict["spread_out_at_scale"] else 0.0, ">=", 1.0)

    syndetic, max_gap = is_syndetic_at_scale(B, _gap_bound(m), (-n, n))
    rep.measured["B_max_gap"] = max_gap
    rep.check("B syndetic at scale", max_gap, "<=", _gap_bound(m))

    thick, witness = is_thick_at_scale(AB, 1000, (-n, n))
    rep.measured["AB_thick_witness"] = witness
    rep.check("A+B thick at scale", 1.0 if thick else 0.0, ">=", 1.0)

    dA = _upper_banach(A, n)
    dB = _lower(B, n, rep, "lower(B)")
    dAB = _lower(AB, n, rep, "lower(A+B)")
    rep.measured.update({"upper(A)": dA, "lower(B)": dB, "lower(A+B)": dAB})
    rep.check_close("upper(A) = m", dA, float(m), tol)
    rep.check_close("lower(B) = (1+m)/2", dB, (1 + float(m)) / 2, tol)
    rep.check("lower(A+B) <= m + 1/2 + tol", dAB, "<=", float(m) + 0.5 + tol)
    rep.check("lower(A+B) < upper(A) + lower(B) - tol", dAB, "<", dA + dB - tol)
    rep.check("upper(A) + lower(B) < 1", dA + dB, "<", 1.0)
    return rep


def run_e2(alpha: QuadIrr, interval: TorusInterval, n: int,
           tol: float | None = None) -> ScenarioReport:
    """A = B = C n N: B is large but not syndetic, the sumset stays thin,
    and the density inequality again reverses."""
    m = _measure(interval)
    if m >= Fraction(1, 2):
        raise PreconditionError("needs arc measure < 1/2")
    tol = tol if tol is not None else default_tol(n)
    rep = ScenarioReport("e2", n, tol)
    C = SturmianSet(SturmianSpec(alpha, interval))
    A = Intersect(C, HalfLine(1))
    AB = ProductSet(A, A)

    _, max_gap = is_syndetic_at_scale(A, _gap_bound(m), (-n, n))
    rep.measured["B_max_gap"] = max_gap
    rep.check("B not syndetic at scale", max_gap, ">", _gap_bound(m))

    dB = _lower(A, n)
    rep.measured["lower(B)"] = dB
    rep.check_close("lower(B) = m/2", dB, float(m) / 2, tol)
    rep.check("lower(B) > 0", dB, ">", 0.0)

    thick, _ = is_thick_at_scale(AB, 1000, (-n, n))
    rep.measured["AB_thick"] = thick
    rep.check("A+B not thick at scale", 0.0 if not thick else 1.0, "<=", 0.0)

    dA = _upper_banach(A, n)
    dAB = _lower(AB, n, rep, "lower(A+B)")
    rep.measured.update({"upper(A)": dA, "lower(A+B)": dAB})
    rep.check("lower(A+B) <= m + tol", dAB, "<=", float(m) + tol)
    rep.check("lower(A+B) < upper(A) + lower(B) - tol", dAB, "<", dA + dB - tol)
    rep.check("upper(A) + lower(B) < 1", dA + dB, "<", 1.0)
    return rep


def run_e3(alpha: QuadIrr, interval: TorusInterval, n: int,
           tol: float | None = None, shift_bound: int = 100) -> ScenarioReport:
    """A = (C n N) u {n0} with (I+I) disjoint from I + n0*alpha: A is
    spread-out, the sumset avoids periodic runs, and the density bound
    is attained exactly at 1.5 * m."""
    m = _measure(interval)
    n0 = find_shift_n(alpha, interval, shift_bound)
    tol = tol if tol is not None else default_tol(n)
    rep = ScenarioReport("e3", n, tol)
    rep.measured["n0"] = n0
    C = SturmianSet(SturmianSpec(alpha, interval))
    B = Intersect(C, HalfLine(1))
    A = Union(B, Singleton(n0))
    AB = ProductSet(A, B)

    verdict = spread_out_witness_z(A, IntWindow(-n, n), m_max=20)
    rep.measured["A_spread_out_at_scale"] = verdict["spread_out_at_scale"]
    rep.check("A spread-out at scale",
              1.0 if verdict["spread_out_at_scale"] else 0.0, ">=", 1.0)

    ws = materialize(AB, IntWindow(-n, n))
    run_found = None
    for mod in range(1, 7):
        hit = find_periodic_run(ws, mod, 10_000)
        if hit is not None:
            run_found = {"modulus": mod, "x": hit[0], "residue": hit[1]}
            break
    rep.measured["periodic_run"] = run_found
    rep.check("A+B has no periodic run (m <= 6, L = 10^4)",
              0.0 if run_found is None else 1.0, "<=", 0.0)

    dA = _upper_banach(A, n)
    dB = _lower(B, n, rep, "lower(B)")
    dAB = _lower(AB, n, rep, "lower(A+B)")
    rep.measured.update({"upper(A)": dA, "lower(B)": dB, "lower(A+B)": dAB})
    rep.check_close("lower(A+B) = 1.5 m", dAB, 1.5 * float(m), tol)
    rep.check_close("lower(A+B) = upper(A) + lower(B)", dAB, dA + dB, 2 * tol)
    rep.check("upper(A) + lower(B) < 1", dA + dB, "<", 1.0)
    return rep


def run_scenario(name: str, alpha: QuadIrr, interval: TorusInterval, n: int,
                 tol: float | None = None) -> ScenarioReport:
    fns = {"base": verify_base_identities, "e1": run_e1, "e2": run_e2, "e3": run_e3}
    if name not in fns:
        raise PreconditionError(f"unknown scenario {name!r}")
    return fns[name](alpha, interval, n, tol)
