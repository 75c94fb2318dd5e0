import random

import pytest

from zkcompare import snark, stark


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def circuit():
    return snark.build_cubic_circuit()


@pytest.fixture(scope="session")
def qap(circuit):
    return snark.r1cs_to_qap(circuit)


@pytest.fixture(scope="session")
def snark_keys(qap):
    waste = snark.ToxicWaste.from_seed(7, qap)
    return snark.trusted_setup(qap, waste)


@pytest.fixture(scope="session")
def snark_proof(snark_keys, circuit, qap):
    pk, _ = snark_keys
    return snark.prove(pk, snark.generate_witness(circuit, 3), qap)


@pytest.fixture(scope="session")
def stark_run():
    """One honest proof with its intermediate values; proving takes a few seconds."""
    artifacts = stark.ProverArtifacts()
    timings: dict[str, int] = {}
    proof = stark.stark_prove(artifacts=artifacts, timings=timings)
    return proof, artifacts, timings


@pytest.fixture(scope="session")
def domains():
    return stark.build_domains()


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        if report.when == "call" or name not in _ACCEPTANCE:
            _ACCEPTANCE[name] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        verdict = "PASS" if _ACCEPTANCE[name] == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
