// SPDX-License-Identifier: Apache-2.0
//
// cfhst - link-level simulator for cell-free massive MIMO on high-speed rail
// Copyright (C) 2026 cfhst developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CFHST_FIGURES_HPP
#define CFHST_FIGURES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfhst
{

/*!
 * Paper scale runs the full evaluation (2 m position grid, 500 trials);
 * desk scale thins both by 10x for quick reproduction runs, widening the
 * expected tolerances accordingly.
 */
enum class FigureScale
{
    Desk,
    Paper
};

FigureScale parse_figure_scale(const std::string &name); // "desk" | "paper"

struct FigureTable
{
    std::string name; // "fig3" .. "fig11"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/*! Data-file numbers available to make_figure (3..11). */
std::vector<int> figure_numbers();

/*!
 * Evaluates the data series behind one reference figure:
 *   fig3  - SE vs position: centralized MMSE, local MMSE + LSFD, small cell MMSE
 *   fig4  - SE vs position: LSFD-MR, small cell MR, co-located MMSE
 *   fig5  - average SE vs number of APs (10..40) for the fig4 trio
 *   fig6  - average SE across (APs x antennas) splits of 40 total antennas
 *   fig7  - SE vs subcarriers per block at the initial position, per speed
 *   fig8  - average SE vs speed for Rician factor {-10, 30} dB, corr/uncorr
 *   fig9  - average SE vs speed for (TAs, antennas) in {(8,4), (6,4), (8,6)}
 *   fig10 - worst-TA average SE vs speed for cluster thresholds {0, 5, 10} dB
 *   fig11 - per-position SE of the power-control schemes on the clustered setup
 */
FigureTable make_figure(int number, FigureScale scale, std::uint64_t seed, int threads);

void write_figure_csv(std::ostream &os, const FigureTable &table);

} // namespace cfhst

#endif
