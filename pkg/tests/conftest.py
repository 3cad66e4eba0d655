import mpmath as mp
import pytest

ACCEPTANCE_LINES = []


def hypergeometric_density(r, rho, n, dps=30):
    """Independent oracle: the hypergeometric form of the density of r."""
    with mp.workdps(dps):
        r, rho, n = mp.mpf(r), mp.mpf(rho), mp.mpf(n)
        return float(
            (n - 2) * mp.gamma(n - 1) * (1 - rho ** 2) ** ((n - 1) / 2) * (1 - r ** 2) ** ((n - 4) / 2)
            / (mp.sqrt(2 * mp.pi) * mp.gamma(n - mp.mpf(1) / 2) * (1 - rho * r) ** (n - mp.mpf(3) / 2))
            * mp.hyp2f1(0.5, 0.5, n - 0.5, (rho * r + 1) / 2)
        )


@pytest.fixture
def acceptance_report():
    def record(number, title, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
