import functools

import pytest

from realknot.construct.kdw import kdw

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def cached_kdw(d: int, w: int):
    """kdw outputs are deterministic; build each pair once per session."""
    return kdw(d, w)


@pytest.fixture
def record():
    """Record a pass/fail line for one acceptance criterion."""

    def _record(number: int, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def form(text: str):
    """A binary form from text such as ``"t^2 + s^2"``."""
    from realknot.algebra.poly import HomPoly
    from realknot.cli.parser import parse_expression

    terms = parse_expression(text)
    degree = max(a + b for a, b in terms) if terms else 0
    if any(a + b != degree for a, b in terms):
        raise ValueError(f"{text!r} is not homogeneous")
    return HomPoly.from_terms(degree, terms)
