"""One test per acceptance criterion; each prints an ``ACCEPTANCE`` line.

The data-gated criteria D1-D3 need ``--coverforge-config FILE`` naming the
equation files; without it they must report "skipped".
"""

from __future__ import annotations

import pytest

from coverforge.cli.claims import DATA_CLAIMS, FIXTURE_CLAIMS, GROUP_CLAIMS, REP_CLAIMS, run_claim

UNCONDITIONAL = GROUP_CLAIMS + REP_CLAIMS + FIXTURE_CLAIMS


@pytest.mark.parametrize("cid", UNCONDITIONAL)
def test_unconditional_criterion(cid, acceptance_config, record_acceptance):
    res = run_claim(cid, acceptance_config)
    record_acceptance(res)
    assert res.status == "pass", res.line()


@pytest.mark.parametrize("cid", DATA_CLAIMS)
def test_data_gated_criterion(cid, acceptance_config, record_acceptance):
    res = run_claim(cid, acceptance_config)
    record_acceptance(res)
    if res.status == "skipped":
        cfg = acceptance_config
        assert not (cfg.y_equations or cfg.x_equations or cfg.z_model), res.line()
        return
    assert res.status == "pass", res.line()
