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

#include "cfhst/clustering.hpp"

#include "json.hpp"

#include <cmath>

namespace cfhst
{

ClusterAssignment form_clusters(const GeometrySnapshot &snap, double threshold_db)
{
    const arma::uword K = snap.large_scale.n_rows, L = snap.large_scale.n_cols;
    ClusterAssignment assign;
    assign.threshold_db = threshold_db;
    assign.serve.zeros(K, L);
    assign.master.set_size(K);

    for (arma::uword k = 0; k < K; k++)
    {
        arma::uword best = 0;
        for (arma::uword l = 1; l < L; l++)
            if (snap.large_scale(k, l) > snap.large_scale(k, best))
                best = l; // strict > keeps the lowest index on ties
        assign.master(k) = best;
        double best_db = 10.0 * std::log10(snap.large_scale(k, best));
        for (arma::uword l = 0; l < L; l++)
        {
            double shortfall_db = best_db - 10.0 * std::log10(snap.large_scale(k, l));
            assign.serve(k, l) = shortfall_db < threshold_db ? 1 : 0;
        }
        assign.serve(k, best) = 1;
    }
    return assign;
}

std::string cluster_json(const ClusterAssignment &assign)
{
    nlohmann::json root = nlohmann::json::array();
    for (arma::uword k = 0; k < assign.serve.n_rows; k++)
    {
        nlohmann::json entry;
        entry["ta"] = k;
        entry["master"] = assign.master(k);
        std::vector<arma::uword> aps;
        for (arma::uword l = 0; l < assign.serve.n_cols; l++)
            if (assign.serve(k, l))
                aps.push_back(l);
        entry["aps"] = aps;
        if (std::isinf(assign.threshold_db))
            entry["theta_db"] = "inf";
        else
            entry["theta_db"] = assign.threshold_db;
        root.push_back(entry);
    }
    return root.dump(2);
}

GenericSinrCoeffs extract_generic_coeffs(const LsfdClosedForm &cf, int ta, int s,
                                         const arma::cx_vec &weights)
{
    const TaClosedForm &t = cf.ta[ta];
    const int K = cf.num_tas, M = cf.subcarriers;
    const arma::vec wsq = arma::square(arma::abs(weights));

    GenericSinrCoeffs coeffs;
    coeffs.gain = std::norm(arma::cdot(weights, t.serving_mean));
    coeffs.cross.zeros(K);
    coeffs.noise = cf.noise_power * arma::dot(wsq, t.noise_gain);
    for (int i = 0; i < K; i++)
        for (int m = 0; m < M; m++)
        {
            arma::uword col = static_cast<arma::uword>(m - s + M - 1);
            coeffs.cross(i) += arma::dot(wsq, t.leak_power[i].col(col));
            if (i == ta)
            {
                if (m != s)
                    coeffs.cross(i) += std::norm(arma::cdot(weights, t.self_mean.col(col)));
            }
            else
                coeffs.cross(i) += std::norm(arma::cdot(weights, t.cross_mean[i].col(col)));
        }
    return coeffs;
}

double generic_sinr(const GenericSinrCoeffs &coeffs, const arma::vec &powers, int ta)
{
    return coeffs.gain * powers(ta) / (arma::dot(coeffs.cross, powers) + coeffs.noise);
}

} // namespace cfhst
