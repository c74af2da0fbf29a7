# SPDX-License-Identifier: Apache-2.0
#
# cfhst - link-level simulator for cell-free massive MIMO on high-speed rail
# Copyright (C) 2026 cfhst developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import math

import pytest

import cfhst


def small_scenario():
    sc = cfhst.Scenario()
    sc.num_aps = 3
    sc.antennas_per_ap = 2
    sc.num_tas = 2
    sc.subcarriers = 4
    return sc


def test_scenario_defaults():
    sc = cfhst.Scenario()
    assert sc.num_aps == 10
    assert sc.antennas_per_ap == 4
    assert sc.num_tas == 8
    assert sc.subcarriers == 8
    assert sc.rician_split == "sqrt"
    assert sc.dfo_scale() == pytest.approx(0.0335, abs=1e-4)
    assert sc.validate() == []


def test_scenario_validation_names_the_field():
    sc = cfhst.Scenario()
    sc.num_aps = 0
    with pytest.raises(ValueError, match="num_aps"):
        sc.validate()


def test_leakage_values():
    assert cfhst.ici_nlos(1, 0.0335) == pytest.approx(-0.023688077, abs=1e-8)
    assert cfhst.ici_nlos(0, 0.0335) == 1.0
    coeffs = cfhst.dft_oracle_los(0.0335, 8)
    assert len(coeffs) == 8
    assert sum(abs(c) ** 2 for c in coeffs) == pytest.approx(1.0, abs=1e-12)
    for d in range(8):
        assert cfhst.ici_los(d, 0.0335, 8) == pytest.approx(coeffs[d], abs=1e-10)


def test_nlos_oracle_shape():
    moments = cfhst.dft_oracle_nlos(0.0335, 16, 8, 2000, seed=3)
    assert len(moments) == 16
    assert moments[0] == pytest.approx(1.0, rel=0.1)


def test_run_sweep_deterministic():
    sc = small_scenario()
    kwargs = dict(
        architectures=["lsfd-mr", "centralized-mmse"],
        start_m=0.0,
        end_m=40.0,
        step_m=20.0,
        trials=3,
        seed=11,
    )
    rows = cfhst.run(sc, **kwargs)
    assert len(rows) == 6  # 3 positions x 2 architectures
    assert {row["architecture"] for row in rows} == {"lsfd-mr", "centralized-mmse"}
    for row in rows:
        assert row["block_se"] > 0.0
        assert len(row["per_ta_se"]) == sc.num_tas
        assert row["block_se"] == pytest.approx(
            sum(row["per_ta_se"]) / sc.num_tas, abs=1e-12
        )

    again = cfhst.run(sc, **kwargs)
    threaded = cfhst.run(sc, threads=2, **kwargs)

    def numbers(result):
        # wall_s is a timing, not part of the deterministic contract
        return [{k: v for k, v in row.items() if k != "wall_s"} for row in result]

    assert numbers(rows) == numbers(again) == numbers(threaded)


def test_run_speed_sweep():
    sc = small_scenario()
    rows = cfhst.run(
        sc,
        architectures=["lsfd-mr"],
        speeds_kmh=[0.0, 300.0],
        end_m=40.0,
        trials=1,
        seed=2,
    )
    assert [row["sweep_value"] for row in rows] == [0.0, 300.0]
    assert rows[0]["block_se"] >= rows[1]["block_se"]  # Doppler only hurts


def test_run_rejects_bad_architecture():
    with pytest.raises(ValueError, match="architecture"):
        cfhst.run(small_scenario(), architectures=["warp-drive"])


def test_position_se():
    sc = small_scenario()
    per_ta = cfhst.position_se(
        sc, architectures=["lsfd-mr", "mf-mr"], train_offset_m=20.0, trials=2, seed=5
    )
    assert set(per_ta) == {"lsfd-mr", "mf-mr"}
    for values in per_ta.values():
        assert len(values) == sc.num_tas
        assert all(v > 0.0 for v in values)
    # the optimally weighted second layer dominates plain averaging
    assert all(
        opt >= eq - 1e-12 for opt, eq in zip(per_ta["lsfd-mr"], per_ta["mf-mr"])
    )


def test_cluster_matrix():
    sc = small_scenario()
    serve, master = cfhst.cluster_matrix(sc, train_offset_m=10.0, threshold_db=math.inf)
    assert len(serve) == sc.num_tas and len(master) == sc.num_tas
    assert all(aps == list(range(sc.num_aps)) for aps in serve)
    serve_tight, master_tight = cfhst.cluster_matrix(sc, 10.0, threshold_db=0.0)
    assert master_tight == master
    assert all(aps == [m] for aps, m in zip(serve_tight, master_tight))
