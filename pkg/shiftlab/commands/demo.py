"""
Demo verb: pinned reproductions of the counterexamples and realization results.

Commands:
  demo remark1           ω-prefixes {0^n, 1^n} of the alternating-block point; {0^ω, 1^ω} not ICT
  demo remark2           ω-prefixes of the 0^k 1^k point; no return chain through 0 1^ω
  demo monotone          bounded-not-finite basis, shadowing, absent chains, orbit confinement
  demo dichotomy-finite  finite-alphabet SFT whose two fixed points are not chain connected
  demo sbt-ict           ICT sets realized as attracting ω-limit sets
  demo sft-realize       closed invariant sets realized in SFTs over the infinite alphabet
  demo shadowing         randomized shadowing and expansivity; exhaustive gluing and
                         local-to-global checks on the leading bases of the sample

Every horizon, ladder and seed used here is fixed in this module (case counts,
the seed and the exhaustive ranges come from the settings defaults) and recorded in the report.
"""

from __future__ import annotations

import argparse
import logging
import random
from typing import Any, Callable, Dict, List, Tuple

from shiftlab import catalog
from shiftlab.commands import CommandRouter, flag, make_report, outcome
from shiftlab.config import get_settings
from shiftlab.core import dyadic
from shiftlab.errors import ShiftLabError
from shiftlab.models import AssertionOutcome, Report, RuleSpec, SftSpec
from shiftlab.omega import (
    attracting_check,
    omega_equals,
    omega_prefixes,
    sequence_omega_prefixes,
    sorted_words,
    z_prefixes,
)
from shiftlab.points import OrbitStream, Remark1, Remark2, SubsequenceStream, constant, ep_point
from shiftlab.sampling import random_basis, random_ep, random_point, random_pseudo_orbit
from shiftlab.shadowing import (
    expansivity_witness,
    shadowing_modulus,
    synthesize_shadow,
    verify_shadow,
)
from shiftlab.subshift import (
    Subshift,
    gluing_instances,
    local_global_agreement,
    point_in_subshift,
)
from shiftlab.transitivity import (
    FiniteEP,
    Remark2Family,
    attracting_to_chain,
    check_closed_invariant,
    confinement_certificate,
    find_delta_chain,
    forward_confinement,
    ict_realization,
    is_ict,
    is_ict_on_ladder,
    realize_invariant_sft,
    sft_connecting_chain,
)

logger = logging.getLogger(__name__)

router = CommandRouter(tags=["demo"])

T0 = 64
LEVELS = 4
MAX_LEN = 20
ATTRACTING_HORIZON = 4096
ATTRACTING_EXPONENT = 6
CONFINEMENT_HORIZON = 1024
MEMBERSHIP_HORIZON = 256
PSEUDO_ORBIT_LENGTH = 50

DemoResult = Tuple[Dict[str, Any], List[AssertionOutcome]]

ZERO, ONE = constant(0), constant(1)


def _fixed_points() -> FiniteEP:
    return FiniteEP((ZERO, ONE))


def _two_cycle() -> FiniteEP:
    return FiniteEP((ep_point((), (0, 1)), ep_point((), (1, 0))))


def _three_cycle() -> FiniteEP:
    return FiniteEP((ep_point((), (0, 0, 1)), ep_point((), (0, 1, 0)), ep_point((), (1, 0, 0))))


def _ict_sets() -> Dict[str, FiniteEP]:
    return {"0": FiniteEP((ZERO,)), "01-cycle": _two_cycle(), "001-cycle": _three_cycle()}


def _sft_21() -> Subshift:
    return catalog.subshift_from_spec(SftSpec(kind="sft", forbidden=[[2, 1]]))


def _monotone() -> Subshift:
    return catalog.subshift_from_spec(RuleSpec(kind="rule", name="monotone"))


def _omega_checks(label: str, x: Any, Z: Any, depths: range) -> Tuple[Dict[str, List[str]], List[AssertionOutcome]]:
    found: Dict[str, List[str]] = {}
    checks = []
    for n in depths:
        approx = omega_prefixes(x, n, T0, LEVELS)
        found[str(n)] = sorted_words(approx.prefixes)
        checks.append(outcome(
            f"{label}: ω-prefixes at depth {n}",
            approx.prefixes == z_prefixes(Z, n),
            f"expected {sorted_words(z_prefixes(Z, n))}",
        ))
    return found, checks


# ── Counterexamples ────────────────────────────────────────────────────────────

def _remark1() -> DemoResult:
    x, Z = Remark1(), _fixed_points()
    omega, assertions = _omega_checks("remark1", x, Z, range(1, 4))
    stream = sequence_omega_prefixes(OrbitStream(x), 2, T0, LEVELS)
    assertions.append(outcome("orbit stream ω-prefixes at depth 2", stream.prefixes == z_prefixes(Z, 2)))
    assertions.append(outcome("{0^ω, 1^ω} is not ICT at 2^-1", not is_ict(Z, dyadic(1), MAX_LEN)))
    attract = attracting_check(x, Z, dyadic(1), 0, 10_000)
    assertions.append(outcome(
        "not attracting at 2^-1", not attract, f"separator at index {attract.violation}",
    ))
    return {"omega": omega}, assertions


def _remark2() -> DemoResult:
    x, Z = Remark2(), Remark2Family()
    omega, assertions = _omega_checks("remark2", x, Z, range(1, 4))
    expected = {(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)}
    assertions.append(outcome(
        "depth-3 prefixes are 000 001 011 111",
        omega_prefixes(x, 3, T0, LEVELS).prefixes == expected,
    ))
    truncated = Z.truncated(8)
    start = ep_point((0,), (1,))
    back = find_delta_chain(truncated, start, start, dyadic(2), MAX_LEN, nontrivial=True)
    assertions.append(outcome(
        "no return chain through 0 1^ω at 2^-2", back is None, "truncated family k ≤ 8",
    ))
    return {"omega": omega, "truncated_size": len(truncated)}, assertions


def _dichotomy_finite() -> DemoResult:
    gamma = catalog.dichotomy_sft((0, 1, 2))
    Z = _fixed_points()
    assertions = [
        outcome("validated as SFT", gamma.is_sft),
        outcome("fixed points in subshift", all(point_in_subshift(gamma, p, MEMBERSHIP_HORIZON) for p in Z.points)),
        outcome("{0^ω, 1^ω} is not ICT at 2^-1", not is_ict(Z, dyadic(1), MAX_LEN)),
    ]
    return {"subshift": gamma.describe()}, assertions


# ── Bounded-type rule ──────────────────────────────────────────────────────────

def _shadowing_trial(gamma: Subshift, rng: random.Random, max_length: int) -> bool:
    """One pseudo-orbit at the modulus of ε = 2^-M, M drawn from 2..6."""
    M = rng.randint(2, 6)
    eps = dyadic(M)
    modulus, _ = shadowing_modulus(gamma, eps)
    po = random_pseudo_orbit(gamma, rng, modulus, rng.randint(1, max_length))
    try:
        z = synthesize_shadow(gamma, po, MEMBERSHIP_HORIZON)
    except ShiftLabError as exc:
        logger.warning("shadow synthesis failed: %s", exc.detail)
        return False
    horizon = max(MEMBERSHIP_HORIZON, len(po.points) + modulus + gamma.L)
    return (
        bool(point_in_subshift(gamma, z, horizon))
        and bool(verify_shadow(z, po, eps, horizon))
        and bool(verify_shadow(z, po, dyadic(M - 1), horizon))
    )


def _shadowing_cases(pick: Callable[[random.Random], Subshift], rng: random.Random, cases: int) -> int:
    """How many of `cases` trials (pseudo-orbits of length ≤ 50) were shadowed."""
    return sum(_shadowing_trial(pick(rng), rng, PSEUDO_ORBIT_LENGTH) for _ in range(cases))


def _monotone_demo() -> DemoResult:
    settings = get_settings()
    gamma = _monotone()
    rng = random.Random(settings.seed)
    assertions = [outcome("bounded but not finite basis", gamma.is_sbt and not gamma.is_sft)]

    cases = settings.random_cases
    shadowed = _shadowing_cases(lambda _: gamma, rng, cases)
    assertions.append(outcome("every pseudo-orbit shadowed", shadowed == cases, f"{shadowed}/{cases}"))

    for a in range(5):
        Z = FiniteEP((constant(a), constant(a + 1)))
        absent = find_delta_chain(Z, constant(a), constant(a + 1), dyadic(1), MAX_LEN) is None
        certificate = confinement_certificate(gamma, constant(a), constant(a + 1))
        assertions.append(outcome(
            f"no chain {a}^ω → {a + 1}^ω at 2^-1", absent and certificate is not None, certificate or "",
        ))

    confined = [forward_confinement(random_point(gamma, rng), CONFINEMENT_HORIZON) for _ in range(50)]
    assertions.append(outcome("forward orbits confined below the initial symbol", all(confined)))

    Z0 = FiniteEP((ZERO,))
    x = ict_realization(gamma, Z0).point
    assertions.append(outcome("realization of {0^ω} in subshift", point_in_subshift(gamma, x, MEMBERSHIP_HORIZON)))
    assertions.append(outcome("realization of {0^ω} has tail 0^ω", omega_equals(x, Z0, 3, T0, LEVELS)))
    return {"subshift": gamma.describe(), "seed": settings.seed, "cases": cases}, assertions


# ── Realizations ───────────────────────────────────────────────────────────────

def _sbt_ict() -> DemoResult:
    assertions: List[AssertionOutcome] = []
    outputs: Dict[str, Any] = {}
    eps = dyadic(ATTRACTING_EXPONENT)
    for gname, gamma in (("full", catalog.full_shift()), ("forbid 2 1", _sft_21())):
        for zname, Z in _ict_sets().items():
            label = f"{gname} / {zname}"
            realization = ict_realization(gamma, Z)
            x = realization.point
            N = realization.settle(ATTRACTING_EXPONENT)
            assertions.append(outcome(f"{label}: ICT on the ladder", is_ict_on_ladder(Z)))
            found, checks = _omega_checks(label, x, Z, range(1, 4))
            assertions.extend(checks)
            assertions.append(outcome(
                f"{label}: attracting at 2^-{ATTRACTING_EXPONENT}",
                attracting_check(x, Z, eps, N, ATTRACTING_HORIZON),
            ))
            stream = realization.apo.points
            same = all(
                sequence_omega_prefixes(stream, n, T0, LEVELS).prefixes
                == omega_prefixes(x, n, T0, LEVELS).prefixes
                for n in range(1, 4)
            )
            assertions.append(outcome(f"{label}: shadow keeps the stream's ω-prefixes", same))
            sub = SubsequenceStream(stream, 2, 1)
            monotone = all(
                sequence_omega_prefixes(sub, n, T0, LEVELS).prefixes
                <= sequence_omega_prefixes(stream, n, T0, LEVELS).prefixes
                for n in range(1, 4)
            )
            assertions.append(outcome(f"{label}: subsequence ω-prefixes are contained", monotone))
            a, b = Z.points[0], Z.points[-1]
            chain = attracting_to_chain(x, Z, dyadic(2), a, b, N, ATTRACTING_HORIZON)
            assertions.append(outcome(f"{label}: chain read off the orbit", chain is not None))
            outputs[label] = {"omega": found, "settle": N}
    return outputs, assertions


def _sft_realize() -> DemoResult:
    assertions: List[AssertionOutcome] = []
    outputs: Dict[str, Any] = {}
    sets = {**_ict_sets(), "fixed points": _fixed_points()}
    for gname, gamma in (("full", catalog.full_shift()), ("forbid 2 1", _sft_21())):
        for zname, Z in sets.items():
            label = f"{gname} / {zname}"
            assertions.append(outcome(f"{label}: closed invariant", check_closed_invariant(Z)))
            x = realize_invariant_sft(gamma, Z)
            found, checks = _omega_checks(label, x, Z, range(1, 5))
            assertions.extend(checks)
            outputs[label] = {"omega": found, "separator_start": x.separator_start}

    full = catalog.full_shift()
    chain = sft_connecting_chain(full, ZERO, ONE, dyadic(2))
    assertions.append(outcome("connecting chain 0^ω → 1^ω at 2^-2 has 6 entries", len(chain.entries) == 6))
    assertions.append(outcome("connecting chain links below 2^-2", chain.verify(MEMBERSHIP_HORIZON)))
    loop = sft_connecting_chain(full, ZERO, ZERO, dyadic(0))
    assertions.append(outcome("chain at δ = 1 needs N = 1", loop.steps == 3 and bool(loop.verify(MEMBERSHIP_HORIZON))))
    via = sft_connecting_chain(_sft_21(), ZERO, ONE, dyadic(1))
    assertions.append(outcome("chain in forbid 2 1 passes through 3", via.entries[1].symbol_at(2) == 3))
    return outputs, assertions


# ── Randomized suite ───────────────────────────────────────────────────────────

def _shadowing_suite() -> DemoResult:
    settings = get_settings()
    rng = random.Random(settings.seed)
    cases = settings.random_cases
    bases = [random_basis(rng) for _ in range(cases)]
    picks = iter(bases)
    shadowed = _shadowing_cases(lambda _: next(picks), rng, cases)

    exhaustive = bases[:settings.exhaustive_cases]
    words = [local_global_agreement(g, settings.exhaustive_word_length) for g in exhaustive]
    triples = [gluing_instances(g, settings.gluing_side, settings.gluing_slack) for g in exhaustive]
    words_checked = sum(t.checked for t in words)
    mismatches = sum(t.failures for t in words)
    triples_checked = sum(t.checked for t in triples)
    gluing_violations = sum(t.failures for t in triples)

    pairs, separated = 1000, 0
    while pairs:
        x, y = random_ep(rng), random_ep(rng)
        if x == y:
            continue
        separated += expansivity_witness(x, y, MEMBERSHIP_HORIZON) is not None
        pairs -= 1

    assertions = [
        outcome("every pseudo-orbit shadowed", shadowed == cases, f"{shadowed}/{cases}"),
        outcome(
            "no gluing violations", gluing_violations == 0,
            f"{gluing_violations} violations in {triples_checked} triples",
        ),
        outcome(
            "locally allowed equals globally allowed", mismatches == 0,
            f"{mismatches} mismatches in {words_checked} words",
        ),
        outcome("distinct pairs separate", separated == 1000, f"{separated}/1000"),
    ]
    outputs = {
        "seed": settings.seed,
        "cases": cases,
        "exhaustive": {
            "bases": len(exhaustive),
            "word_length": settings.exhaustive_word_length,
            "words_checked": words_checked,
            "gluing_side": settings.gluing_side,
            "gluing_slack": settings.gluing_slack,
            "triples_checked": triples_checked,
        },
    }
    return outputs, assertions


DEMOS: Dict[str, Callable[[], DemoResult]] = {
    "remark1": _remark1,
    "remark2": _remark2,
    "monotone": _monotone_demo,
    "dichotomy-finite": _dichotomy_finite,
    "sbt-ict": _sbt_ict,
    "sft-realize": _sft_realize,
    "shadowing": _shadowing_suite,
}


@router.command("demo", "run a pinned reproduction bundle", [
    flag("name", choices=sorted(DEMOS), metavar="NAME", help=", ".join(sorted(DEMOS))),
])
def demo(args: argparse.Namespace) -> Report:
    outputs, assertions = DEMOS[args.name]()
    provenance = {
        "t0": T0,
        "levels": LEVELS,
        "max_len": MAX_LEN,
        "attracting_horizon": ATTRACTING_HORIZON,
        "attracting_exponent": ATTRACTING_EXPONENT,
    }
    return make_report("demo", {"name": args.name}, outputs, assertions, provenance)
