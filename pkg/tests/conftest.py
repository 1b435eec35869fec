import pytest
from hypothesis import assume, strategies as st

from difflab.rudin import SignSequence
from difflab.subst import SubstitutionRule, is_primitive


@pytest.fixture(scope="session")
def sigma():
    return SubstitutionRule.from_mapping({"A": "ABDB", "B": "ABAC", "C": "DCDB", "D": "DCAC"})


@pytest.fixture(scope="session")
def rho():
    return SubstitutionRule.from_mapping({"A": "AB", "B": "AC", "C": "DB", "D": "DC"})


@st.composite
def rules(draw, min_size=2, max_size=4, min_length=2, max_length=4):
    """Constant-length rules whose first letter is prolongable."""
    d = draw(st.integers(min_size, max_size))
    L = draw(st.integers(min_length, max_length))
    alphabet = "abcd"[:d]
    word = st.text(alphabet=alphabet, min_size=L, max_size=L)
    images = [draw(word) for _ in range(d)]
    images[0] = alphabet[0] + images[0][1:]
    return SubstitutionRule(tuple(alphabet), tuple(images))


@st.composite
def primitive_rules(draw, **kw):
    rule = draw(rules(**kw))
    assume(is_primitive(rule)[0])
    return rule


sign_sequences = st.lists(st.sampled_from([1, -1]), min_size=1, max_size=4).map(
    lambda xs: SignSequence(tuple(xs)))


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
