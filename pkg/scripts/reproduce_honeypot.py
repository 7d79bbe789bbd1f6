#!/usr/bin/env python3
"""End-to-end reproduction of the Gift_1_ETH honeypot analysis.

Translates the bundled contract, discharges the abstract machine's proof
obligations by bounded enumeration, loads the hand-written refinement that
states "a caller's balance is unchanged once the password flag is set", and
shows the single refinement obligation that fails — the honeypot.

    python3 scripts/reproduce_honeypot.py [--addr N] [--int-lo N] [--int-hi N]
"""

import argparse
import importlib.resources
import json
import sys
import time

from sol2eb.checker import check_all
from sol2eb.ebeval import Bounds, atoms_for, value_to_json
from sol2eb.ebtext import parse_project, print_project
from sol2eb.ebtype import typecheck
from sol2eb.sim import SimSession
from sol2eb.solcheck import validate_contract
from sol2eb.solidity import parse_contract
from sol2eb.translate import translate

CORPUS = importlib.resources.files("sol2eb") / "corpus"


def show_report(report):
    for v in report.verdicts:
        mark = "ok " if v.status == "discharged" else "XX "
        print(f"  {mark}{v.po.machine:16} {v.po.name:26} {v.status:10} "
              f"cases={v.cases}")
        if v.counterexample is not None:
            ce = {n: value_to_json(x) for n, x in v.counterexample.items()}
            print(f"      counterexample: {json.dumps(ce)}")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--addr", type=int, default=3)
    parser.add_argument("--int-lo", type=int, default=0)
    parser.add_argument("--int-hi", type=int, default=4)
    args = parser.parse_args()
    bounds = Bounds(args.addr, args.int_lo, args.int_hi)

    print("== translate Gift_1_ETH.sol")
    source = (CORPUS / "Gift_1_ETH.sol").read_text()
    checked = validate_contract(parse_contract(source, "Gift_1_ETH.sol"))
    project, report = translate(checked)
    for name, _ in print_project(project):
        print(f"  {name}")
    for span, reason in report.skipped:
        print(f"  skipped {span}: {reason}")

    print(f"\n== check abstract machine at addr={bounds.addr_count} "
          f"ints=[{bounds.int_lo},{bounds.int_hi}]")
    typed = typecheck(project)
    started = time.perf_counter()
    abstract_report = check_all(typed, bounds)
    print(f"  ({time.perf_counter() - started:.1f}s)")
    show_report(abstract_report)
    if not abstract_report.ok():
        print("unexpected: abstract machine should discharge completely")
        return 1

    print("\n== add the hand-written refinement (balance must not move once "
          "the flag is set)")
    m2 = (CORPUS / "Gift_1_ETH_m2.eb").read_text()
    refined = typecheck(parse_project(
        print_project(project) + [("Gift_1_ETH_m2.eb", m2)]))
    started = time.perf_counter()
    refined_report = check_all(refined, bounds)
    print(f"  ({time.perf_counter() - started:.1f}s)")
    show_report(refined_report)
    names = [v.po.name for v in refined_report.violated]
    print(f"\n  violated: {names}")
    if names != ["SetPass/act2/SIM"]:
        print("unexpected violation set")
        return 1
    print("  -> calling SetPass after the flag is set still moves the "
          "caller's deposit: the contract is a honeypot.")

    print("\n== animate the abstract machine")
    session = SimSession(typed, constants={"TRANSFER_VALUE": 1}, bounds=bounds)
    a1 = atoms_for("ADDRESS", bounds.addr_count)[1]
    for event, params in (
        ("NewAccount", {"a": a1, "b": 3}),
        ("SetPass", {"hash": 2, "msg_sender": a1, "msg_value": 1}),
    ):
        result = session.fire(event, params)
        shown = {n: value_to_json(v) for n, v in result.state.items()}
        banner = ("invariants ok" if all(h for _, h in result.invariants)
                  else "INVARIANT VIOLATION")
        print(f"  fired {event}: {json.dumps(shown)}  [{banner}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
