import pytest

from sol2eb import ebast as eb
from sol2eb.domains import solve
from sol2eb.ebeval import Atom, Bounds, GuardFailed, Pair, apply_event, atoms_for
from sol2eb.ebtext import parse_project
from sol2eb.ebtype import typecheck
from sol2eb.sim import (
    InitInvariantViolation, NoConstantModel, NothingToUndo, SimSession,
    decode_value, enumerate_offers,
)

B = Bounds(3, 0, 4)
THIS, A1, A2 = atoms_for("ADDRESS", 3)


@pytest.fixture
def session(gift_typed):
    return SimSession(gift_typed, bounds=B)


class TestInit:
    def test_least_constant_binding(self, session):
        assert session.constants == {
            "this": THIS, "password": 0, "initial_balance": 1, "TRANSFER_VALUE": 1}

    def test_initial_state(self, session):
        assert session.state == {
            "passHasBeenSet": False, "hashPass": 0,
            "address_tem": frozenset({THIS}),
            "balanceof": frozenset({Pair(THIS, 1)}),
        }
        assert all(h for _, h in session.invariant_status())

    def test_constant_override(self, gift_typed):
        s = SimSession(gift_typed, constants={"initial_balance": 3}, bounds=B)
        assert s.constants["initial_balance"] == 3
        assert s.state["balanceof"] == frozenset({Pair(THIS, 3)})

    def test_axiom_violating_override_rejected(self, gift_typed):
        # TRANSFER_VALUE = 0 contradicts TRANSFER_VALUE ∈ ℕ1
        with pytest.raises(NoConstantModel):
            SimSession(gift_typed, constants={"TRANSFER_VALUE": 0}, bounds=B)

    def test_init_invariant_violation_is_hard_error(self):
        files = [
            ("c.eb", "context C end"),
            ("m.eb", "machine M sees C variables x invariants @inv1 x ∈ ℕ1 "
                     "events event INITIALISATION then @act1 x ≔ 0 end end"),
        ]
        typed = typecheck(parse_project(files))
        with pytest.raises(InitInvariantViolation, match="inv1"):
            SimSession(typed, bounds=B)


class TestOffers:
    def test_initial_offers(self, session):
        offers = {o.event: o for o in session.enabled_events()}
        # no foreign address is known yet, so SetPass and GetGift are disabled
        assert "NewAccount" in offers
        assert "SetPass" not in offers
        assert "GetGift" not in offers
        assert len(offers["NewAccount"].valuations) == 10  # 2 atoms × [0,4]

    def test_offers_after_new_account(self, session):
        session.fire("NewAccount", {"a": A1, "b": 3})
        offers = {o.event: o for o in session.enabled_events()}
        assert "SetPass" in offers
        valuations = offers["SetPass"].valuations
        assert all(v["msg_sender"] == A1 for v in valuations)
        assert sorted({v["msg_value"] for v in valuations}) == [1, 2, 3]
        assert sorted({v["hash"] for v in valuations}) == [0, 1, 2, 3, 4]

    def test_offer_cap_and_overflow_flag(self, session):
        (offer,) = [o for o in session.enabled_events(cap=4)
                    if o.event == "NewAccount"]
        assert len(offer.valuations) == 4
        assert offer.overflow

    def test_unsatisfiable_guard_never_offered(self, gift_typed):
        files = [
            ("c.eb", "context C end"),
            ("m.eb", "machine M sees C variables x invariants @inv1 x ∈ ℤ "
                     "events event INITIALISATION then @act1 x ≔ 0 end "
                     "event Stuck where @grd1 1 = 0 then @act1 x ≔ 1 end "
                     "event Free then @act1 x ≔ 1 end end"),
        ]
        typed = typecheck(parse_project(files))
        s = SimSession(typed, bounds=B)
        assert [o.event for o in s.enabled_events()] == ["Free"]

    def test_offers_are_sound(self, session):
        # every offered valuation fires without a guard failure
        session.fire("NewAccount", {"a": A1, "b": 3})
        for offer in session.enabled_events(cap=None):
            for valuation in offer.valuations:
                probe = SimSession(session.typed, bounds=B)
                probe._states = [dict(session.state)]
                probe.fire(offer.event, valuation)


class TestFire:
    def test_scenario_step_values(self, session):
        session.fire("NewAccount", {"a": A1, "b": 3})
        result = session.fire("SetPass", {"hash": 2, "msg_sender": A1, "msg_value": 1})
        assert result.state["hashPass"] == 2
        assert result.state["balanceof"] == frozenset({Pair(THIS, 2), Pair(A1, 2)})
        assert result.previous["balanceof"] == frozenset({Pair(THIS, 1), Pair(A1, 3)})
        assert all(h for _, h in result.invariants)
        assert result.step == 2

    def test_guard_failure_reports_label(self, session):
        session.fire("NewAccount", {"a": A1, "b": 3})
        with pytest.raises(GuardFailed) as exc:
            session.fire("SetPass", {"hash": 2, "msg_sender": A1, "msg_value": 5})
        assert exc.value.label == "grd4"
        assert session.step == 1  # state unchanged

    def test_passhasbeenset_flips_flag(self, session):
        session.fire("PassHasBeenSet", {"hash": session.state["hashPass"]})
        assert session.state["passHasBeenSet"] is True

    def test_fire_undo_fire_is_deterministic(self, session):
        first = session.fire("NewAccount", {"a": A1, "b": 3}).state
        session.undo()
        second = session.fire("NewAccount", {"a": A1, "b": 3}).state
        assert first == second


class TestHistory:
    def test_undo_restores_exact_state(self, session):
        before = dict(session.state)
        session.fire("NewAccount", {"a": A1, "b": 3})
        session.undo()
        assert session.state == before
        assert session.step == 0

    def test_undo_on_fresh_session(self, session):
        with pytest.raises(NothingToUndo):
            session.undo()

    def test_reset_after_three_steps(self, session):
        init = dict(session.state)
        session.fire("NewAccount", {"a": A1, "b": 3})
        session.fire("SetPass", {"hash": 2, "msg_sender": A1, "msg_value": 1})
        session.fire("PassHasBeenSet", {"hash": 2})
        session.reset()
        assert session.state == init
        assert session.trace == []

    def test_export_trace_document(self, session):
        session.fire("NewAccount", {"a": A1, "b": 3})
        session.fire("SetPass", {"hash": 2, "msg_sender": A1, "msg_value": 1})
        doc = session.export_trace()
        assert doc["machine"] == "Gift_1_ETH_m1"
        assert doc["constants"]["TRANSFER_VALUE"] == 1
        assert [s["event"] for s in doc["steps"]] == ["NewAccount", "SetPass"]
        assert doc["steps"][0]["params"] == {"a": "ADDRESS1", "b": 3}
        assert doc["steps"][1]["state"]["balanceof"] == [["this", 2], ["ADDRESS1", 2]]


class TestDecodeValue:
    def test_scalars(self, gift_typed):
        from sol2eb.ebtype import TBool, TCarrier, TInt

        assert decode_value("3", TInt(), B) == 3
        assert decode_value(3, TInt(), B) == 3
        assert decode_value("TRUE", TBool(), B) is True
        assert decode_value(False, TBool(), B) is False
        assert decode_value("ADDRESS1", TCarrier("ADDRESS"), B) == A1
        assert decode_value("this", TCarrier("ADDRESS"), B) == THIS

    def test_collections(self):
        from sol2eb.ebtype import TCarrier, TInt, TPair, TSet

        assert decode_value(["this", "ADDRESS1"], TSet(TCarrier("ADDRESS")), B) == \
            frozenset({THIS, A1})
        assert decode_value([["this", 1]], TSet(TPair(TCarrier("ADDRESS"), TInt())),
                            B) == frozenset({Pair(THIS, 1)})

    def test_out_of_bounds_atom(self):
        from sol2eb.ebtype import TCarrier
        from sol2eb.sim import SimError

        with pytest.raises(SimError):
            decode_value("ADDRESS9", TCarrier("ADDRESS"), B)


class TestExhaustiveOfferSoundness:
    def test_every_offer_fires_exhaustively(self, gift_typed):
        # over all invariant-satisfying states at small bounds
        bounds = Bounds(2, 0, 3)
        machine = gift_typed.project.machines[0]
        ctx = gift_typed.project.context
        names = [(c, gift_typed.const_types[c]) for c in ctx.constants]
        names += [(v, gift_typed.var_types[machine.name][v])
                  for v in machine.variables]
        hyps = [a.pred for a in ctx.axioms]
        hyps += [inv.pred for inv in gift_typed.chain_invariants(machine)]
        base = {c: frozenset(atoms_for(c, bounds.addr_count))
                for c in gift_typed.carriers}
        states = 0
        fired = 0
        for env in solve(names, hyps, base, bounds):
            states += 1
            state = {v: env[v] for v in machine.variables}
            constants = {n: env[n] for n in env if n not in state}
            for offer in enumerate_offers(gift_typed, machine, dict(env),
                                          bounds, cap=None):
                ev = machine.event(offer.event)
                for valuation in offer.valuations:
                    apply_event(ev, state, valuation, bounds, constants=constants)
                    fired += 1
        assert states > 0 and fired > 0
