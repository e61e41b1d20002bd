"""The full acceptance battery, one test per criterion.

Every check is exact; each prints its PASS/FAIL line so a plain
`pytest -s tests/test_acceptance.py` reads as the acceptance report.
The same battery backs the `weylcas accept` CLI subcommand.
"""

import pytest

from weylcas.acceptance import ALL_CRITERIA


@pytest.mark.parametrize("name,criterion", ALL_CRITERIA,
                         ids=[name for name, _ in ALL_CRITERIA])
def test_criterion(name, criterion):
    passed, detail = criterion(seed=0)
    print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    assert passed, f"{name}: {detail}"


def test_cli_accept_subcommand(capsys):
    from weylcas.cli import main

    code = main(["accept"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("PASS") == len(ALL_CRITERIA)
    assert "all criteria passed" in out
