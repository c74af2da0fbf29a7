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

"""Uplink spectral efficiency of cell-free massive MIMO-OFDM on high-speed rail.

The heavy lifting happens in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    Scenario,
    __version__,
    cluster_matrix,
    dft_oracle_los,
    dft_oracle_nlos,
    ici_los,
    ici_nlos,
    position_se,
    run,
)

__all__ = [
    "Scenario",
    "__version__",
    "cluster_matrix",
    "dft_oracle_los",
    "dft_oracle_nlos",
    "ici_los",
    "ici_nlos",
    "position_se",
    "run",
]
