"""Randomized verification driver: runs the identity catalog under a
fully seeded configuration and emits a machine-readable report.

Verdict semantics per identity: ``verified`` when every sampled cell
evaluated successfully with no mismatch; ``counterexample`` on the first
exact mismatch (the drawn inputs and both sides are stored and replay
bit-exactly); ``domain_exhausted`` when some sample slot ran out of
resampling attempts.  Control entries expect a counterexample, so the
aggregate outcome of a run compares each verdict against its
expectation.

Exit codes: 0 when every identity meets its expectation, 1 when any
identity yields an unexpected counterexample (or a control fails to
find one), 2 when the only departures are exhausted domains, 3 for
usage errors.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import CATALOG, CheckContext, IdentityDescriptor, MismatchFound, get_identity
from .identity import (
    COUNTEREXAMPLE,
    DOMAIN_EXHAUSTED,
    VERIFIED,
    IdentityVerdict,
    ring_for_dimension,
)
from .rings import DomainError
from .sampling import Draw, ReplayDraw, substream

SCHEMA_VERSION = 1
DEFAULT_SEED = 0xC0FFEE


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    samples: int = 20
    resample_limit: int = 50
    only: Optional[Sequence[str]] = None
    modules: Optional[Sequence[str]] = None
    dims: Optional[Sequence[int]] = None
    sizes: Optional[Sequence[int]] = None

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "resample_limit": self.resample_limit,
            "only": list(self.only) if self.only else None,
            "modules": list(self.modules) if self.modules else None,
            "dims": list(self.dims) if self.dims else None,
            "sizes": list(self.sizes) if self.sizes else None,
        }


def _selected(config: RunConfig) -> list[IdentityDescriptor]:
    chosen = []
    for desc in CATALOG:
        if config.only and desc.ident not in config.only:
            continue
        if config.modules and desc.module not in config.modules:
            continue
        chosen.append(desc)
    if config.only:
        known = {d.ident for d in CATALOG}
        missing = [i for i in config.only if i not in known]
        if missing:
            raise KeyError(f"unknown identities: {', '.join(missing)}")
    return chosen


def run_identity(
    desc: IdentityDescriptor, config: RunConfig
) -> IdentityVerdict:
    verdict = IdentityVerdict(status=VERIFIED, seed=config.seed)
    cells = desc.cells
    if config.dims:
        cells = tuple((n, d) for (n, d) in cells if d in config.dims or d == 0)
    if config.sizes:
        cells = tuple((n, d) for (n, d) in cells if n in config.sizes or n == 0)
    samples = desc.samples if desc.samples is not None else config.samples
    for (n, d) in cells:
        cell = {
            "n": n,
            "d": d,
            "attempted": 0,
            "succeeded": 0,
            "status": VERIFIED,
        }
        verdict.cells.append(cell)
        for k in range(samples):
            rng = substream(config.seed, desc.ident, n, d, k)
            slot_done = False
            for attempt in range(config.resample_limit):
                draw = Draw(rng, profile=desc.profile)
                ctx = CheckContext(
                    draw=draw, ring=ring_for_dimension(max(d, 1)), n=n, d=d
                )
                verdict.attempted += 1
                cell["attempted"] += 1
                try:
                    desc.check(ctx)
                except DomainError:
                    continue
                except MismatchFound as found:
                    verdict.succeeded += 1
                    cell["succeeded"] += 1
                    cell["status"] = COUNTEREXAMPLE
                    verdict.status = COUNTEREXAMPLE
                    verdict.counterexample = {
                        "identity": desc.ident,
                        "n": n,
                        "d": d,
                        "sample": k,
                        "attempt": attempt,
                        "draws": draw.log,
                        **found.record,
                    }
                    return verdict
                verdict.succeeded += 1
                cell["succeeded"] += 1
                slot_done = True
                break
            if not slot_done:
                cell["status"] = DOMAIN_EXHAUSTED
                if verdict.status == VERIFIED:
                    verdict.status = DOMAIN_EXHAUSTED
                break
    return verdict


def run_suite(config: Optional[RunConfig] = None) -> dict:
    """Execute the selected identities and assemble the report."""
    config = config or RunConfig()
    start = time.time()
    entries = []
    counts = {VERIFIED: 0, COUNTEREXAMPLE: 0, DOMAIN_EXHAUSTED: 0}
    unexpected = []
    for desc in _selected(config):
        verdict = run_identity(desc, config)
        counts[verdict.status] += 1
        met = verdict.status == desc.expect
        if not met:
            unexpected.append(desc.ident)
        entries.append(
            {
                "id": desc.ident,
                "module": desc.module,
                "statement": desc.statement,
                "operations": list(desc.operations),
                "expect": desc.expect,
                "status": verdict.status,
                "met_expectation": met,
                "attempted": verdict.attempted,
                "succeeded": verdict.succeeded,
                "cells": verdict.cells,
                "counterexample": verdict.counterexample,
            }
        )
    exit_code = 0
    for entry in entries:
        if entry["met_expectation"]:
            continue
        if entry["status"] == DOMAIN_EXHAUSTED:
            exit_code = max(exit_code, 2)
        else:
            # an unexpected counterexample, or a control/witness entry
            # that verified instead of failing
            exit_code = 1
            break
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "identities": entries,
        "summary": {
            "total": len(entries),
            "verified": counts[VERIFIED],
            "counterexamples": counts[COUNTEREXAMPLE],
            "domain_exhausted": counts[DOMAIN_EXHAUSTED],
            "unexpected": unexpected,
        },
        "elapsed_s": round(time.time() - start, 3),
        "exit_code": exit_code,
    }
    return report


def write_report(report: dict, path: str) -> None:
    with open(path, "w") as handle:
        json.dump(report, handle, indent=1, sort_keys=True)
        handle.write("\n")


def load_report(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def replay_counterexample(counterexample: dict) -> dict:
    """Re-run a stored counterexample from its draw log.

    Returns {"reproduced": bool, "label", "lhs", "rhs"}; reproduced is
    true when the same comparison fails with bit-identical sides.
    """
    desc = get_identity(counterexample["identity"])
    draw = ReplayDraw(counterexample["draws"])
    ctx = CheckContext(
        draw=draw,
        ring=ring_for_dimension(max(counterexample["d"], 1)),
        n=counterexample["n"],
        d=counterexample["d"],
    )
    try:
        desc.check(ctx)
    except MismatchFound as found:
        rec = found.record
        reproduced = (
            rec["label"] == counterexample["label"]
            and rec["lhs"] == counterexample["lhs"]
            and rec["rhs"] == counterexample["rhs"]
        )
        return {"reproduced": reproduced, **rec}
    except DomainError as err:
        return {
            "reproduced": False,
            "label": "domain-error-on-replay",
            "lhs": None,
            "rhs": None,
            "error": str(err),
        }
    return {"reproduced": False, "label": "no-mismatch-on-replay", "lhs": None, "rhs": None}


def replay_from_report(report: dict, ident: str, index: int = 0) -> dict:
    matches = [
        e
        for e in report["identities"]
        if e["id"] == ident and e.get("counterexample")
    ]
    if not matches or index >= len(matches):
        raise KeyError(f"no stored counterexample for {ident!r} at index {index}")
    return replay_counterexample(matches[index]["counterexample"])


def identity_lines() -> list[str]:
    lines = []
    for desc in CATALOG:
        expect = "" if desc.expect == "verified" else "  [expects counterexample]"
        cells = ",".join(f"({n},{d})" for n, d in desc.cells)
        lines.append(f"{desc.ident}  [{desc.module}]{expect}")
        lines.append(f"    {desc.statement}")
        lines.append(f"    cells: {cells}")
        if desc.operations:
            lines.append(f"    exercises: {', '.join(desc.operations)}")
    return lines
