import importlib.resources

import pytest

from sol2eb.checker import check_all
from sol2eb.ebeval import Bounds
from sol2eb.ebtext import parse_project, print_project
from sol2eb.ebtype import typecheck
from sol2eb.solcheck import validate_contract
from sol2eb.solidity import parse_contract
from sol2eb.translate import translate

_CORPUS = importlib.resources.files("sol2eb") / "corpus"


@pytest.fixture(scope="session")
def gift_source() -> str:
    return (_CORPUS / "Gift_1_ETH.sol").read_text()


@pytest.fixture(scope="session")
def gift_m2_text() -> str:
    return (_CORPUS / "Gift_1_ETH_m2.eb").read_text()


@pytest.fixture(scope="session")
def gift_ast(gift_source):
    return parse_contract(gift_source, "Gift_1_ETH.sol")


@pytest.fixture(scope="session")
def gift_checked(gift_ast):
    return validate_contract(gift_ast)


@pytest.fixture(scope="session")
def gift_translation(gift_checked):
    return translate(gift_checked)


@pytest.fixture(scope="session")
def gift_project(gift_translation):
    return gift_translation[0]


@pytest.fixture(scope="session")
def gift_report(gift_translation):
    return gift_translation[1]


@pytest.fixture(scope="session")
def gift_typed(gift_project):
    return typecheck(gift_project)


@pytest.fixture(scope="session")
def gift_machine(gift_project):
    return gift_project.machines[0]


@pytest.fixture(scope="session")
def refined_project(gift_project, gift_m2_text):
    files = print_project(gift_project) + [("Gift_1_ETH_m2.eb", gift_m2_text)]
    return parse_project(files)


@pytest.fixture(scope="session")
def refined_typed(refined_project):
    return typecheck(refined_project)


@pytest.fixture(scope="session")
def refined_check_report(refined_typed):
    return check_all(refined_typed, Bounds(3, 0, 4))
