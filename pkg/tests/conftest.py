from fractions import Fraction as F

import pytest

from twistconj.folding import canonical_outer, fold
from twistconj.rootsys import build_root_system

_LINES: list[str] = []


def folded(group: str, order: int = 1):
    rs = build_root_system(group)
    return fold(rs, canonical_outer(rs, order) if order > 1 else None)


def displayed_domain(n, twisted):
    """The displayed SU(n) domains as (coeffs, bound) with coeffs . x >= bound."""
    one = F(1)
    if not twisted:
        walls = [tuple(one if k == i else -one if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
        out = [(w, F(0)) for w in walls]
        out.append((tuple(-one if k == 0 else one if k == n - 1 else 0 for k in range(n)), F(-1)))
        return out
    m = n // 2
    out = [(tuple(one if k == i else -one if k == i + 1 else 0 for k in range(m)), F(0)) for i in range(m - 1)]
    out.append((tuple(one if k == m - 1 else 0 for k in range(m)), F(0)))
    if m == 1 and n == 3:
        out.append(((-one,), F(-1, 4)))
    elif n % 2 == 0:
        out.append((tuple(-one if k in (0, m - 1) else 0 for k in range(m)), F(-1, 2)))
    else:
        out.append((tuple(-one if k == 0 else 0 for k in range(m)), F(-1, 4)))
    return out


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" -- {detail}" if detail else "")
        _LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
