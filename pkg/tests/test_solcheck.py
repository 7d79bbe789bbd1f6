import pytest

from sol2eb.solcheck import (
    TypeMismatch, UnresolvedName, UnsupportedConstruct, validate_contract,
)
from sol2eb.solidity import parse_contract


def check(source: str):
    return validate_contract(parse_contract(source))


class TestGift:
    def test_payable_flags(self, gift_checked):
        assert gift_checked.meta("SetPass").payable
        assert not gift_checked.meta("GetGift").payable
        assert gift_checked.meta(None).payable  # fallback

    def test_constant_flag(self, gift_checked):
        assert gift_checked.meta("GetHash").constant
        assert not gift_checked.meta("SetPass").constant

    def test_msg_sender_usage(self, gift_checked):
        # GetGift needs msg_sender for the transfer, PassHasBeenSet does not
        assert gift_checked.meta("GetGift").uses_msg_sender
        assert gift_checked.meta("GetGift").has_transfer
        assert not gift_checked.meta("PassHasBeenSet").uses_msg_sender

    def test_returns_recorded(self, gift_checked):
        assert len(gift_checked.meta("GetGift").return_spans) == 1
        assert len(gift_checked.meta("GetHash").return_spans) == 1


class TestRejections:
    def test_bool_to_int_assignment(self):
        with pytest.raises(TypeMismatch):
            check("contract C { uint x; function f() { x = true; } }")

    def test_int_initializer_on_bool(self):
        with pytest.raises(TypeMismatch):
            check("contract C { bool x = 3; }")

    def test_non_literal_initializer(self):
        with pytest.raises(UnsupportedConstruct, match="literal"):
            check("contract C { uint x = 1 + 2; }")

    def test_unresolved_name(self):
        with pytest.raises(UnresolvedName, match="nobody"):
            check("contract C { uint x; function f() { x = nobody; } }")

    def test_double_assignment_rejected(self):
        # same target assigned twice within one statement sequence
        with pytest.raises(UnsupportedConstruct, match="assigned twice"):
            check("contract C { uint x; function f() { x = 1; x = 2; } }")

    def test_read_after_write_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="assigns"):
            check("contract C { uint x; uint y; function f() { x = 1; y = x; } }")

    def test_require_after_write_of_read_var(self):
        with pytest.raises(UnsupportedConstruct, match="assigns"):
            check("contract C { uint x; function f() { x = 5; require(x >= 1); } }")

    def test_independent_assignments_allowed(self):
        checked = check(
            "contract C { uint x; uint y; function f(uint a) { x = a; y = a + 1; } }")
        assert checked.meta("f") is not None

    def test_branches_must_agree(self):
        with pytest.raises(UnsupportedConstruct, match="same variable"):
            check("contract C { uint x; uint y; function f(bool b) "
                  "{ if (b) { x = 1; } else { y = 2; } } }")

    def test_branch_multiple_statements(self):
        with pytest.raises(UnsupportedConstruct, match="single"):
            check("contract C { uint x; uint y; function f(bool b) "
                  "{ if (b) { x = 1; y = 2; } } }")

    def test_nested_if_rejected(self):
        with pytest.raises(UnsupportedConstruct, match="single"):
            check("contract C { uint x; function f(bool b) "
                  "{ if (b) { if (b) { x = 1; } } } }")

    def test_assignment_to_parameter(self):
        with pytest.raises(UnsupportedConstruct, match="parameter"):
            check("contract C { function f(uint a) { a = 1; } }")

    def test_mapping_in_expression(self):
        with pytest.raises(UnsupportedConstruct, match="mapping"):
            check("contract C { mapping(address => uint) m; uint x; "
                  "function f() { x = m; } }")

    def test_transfer_to_non_address(self):
        with pytest.raises(TypeMismatch, match="address"):
            check("contract C { uint x; function f() { x.transfer(1); } }")

    def test_if_condition_not_bool(self):
        with pytest.raises(TypeMismatch):
            check("contract C { uint x; function f() { if (x + 1) { x = 1; } } }")

    def test_both_transfer_branches_allowed(self):
        checked = check(
            "contract C { function f(bool b) { if (b) { msg.sender.transfer(1); }"
            " else { msg.sender.transfer(2); } } }")
        assert checked.meta("f").has_transfer
