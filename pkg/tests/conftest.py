import pytest

from calogero_exact import ModelSpec, assemble_rdm, expansion_coefficients


@pytest.fixture(scope="session")
def rdm_cache():
    """Memoized exact RDMs shared by the whole session."""
    memo = {}

    def get(N, nu, p=1):
        key = (N, nu, p)
        if key not in memo:
            memo[key] = assemble_rdm(expansion_coefficients(ModelSpec(N, nu)), p)
        return memo[key]

    return get


def pytest_terminal_summary(terminalreporter):
    from .helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[2:].split()[0].rstrip("abcdefg"))):
            terminalreporter.write_line(line)
