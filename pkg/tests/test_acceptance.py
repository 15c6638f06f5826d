"""Acceptance suite: one PASS/FAIL line per criterion, also collected in the terminal summary."""

from __future__ import annotations

import pytest

from nakajima_hall import acceptance

LINES: dict[int, str] = {}


def _report(result):
    print(result.line())
    LINES[result.number] = result.line()
    return result




def test_criterion1_exa2_presentation():
    ok, detail = acceptance.presentation_exa2()
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="the computed relations of the cyclic example have length 3, not 2")
def test_criterion1_exa1_length_two_cycle():
    ok, detail = acceptance.presentation_exa1()
    assert detail["matches_length3_cycle"]
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="the cyclic-example part of criterion 1 does not hold as stated")
def test_criterion1_line():
    assert _report(acceptance.criterion1()).passed


@pytest.mark.parametrize("number", [2, 3, 4, 5, 6, 7])
def test_criterion(number):
    result = _report(acceptance.CHECKS[number]())
    assert result.passed, result.detail
