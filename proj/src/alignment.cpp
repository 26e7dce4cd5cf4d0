// SPDX-License-Identifier: Apache-2.0
//
// lia: layered interference alignment simulator for MIMO X channels
// Copyright (C) 2026 The lia authors
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

#include "lia/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>

namespace lia
{
    DirectionSetKx2 DirectionSetKx2::identity(int M)
    {
        return {CMatrix::Identity(M, M), CMatrix::Identity(M, M)};
    }

    namespace
    {
        int numerical_rank(const CMatrix &m, double rel_tol = 1e-9)
        {
            if (m.size() == 0)
                return 0;
            Eigen::JacobiSVD<CMatrix> svd(m);
            const auto &s = svd.singularValues();
            int r = 0;
            for (Eigen::Index k = 0; k < s.size(); ++k)
                if (s(k) > rel_tol * s(0))
                    ++r;
            return r;
        }

        CMatrix checked_inverse(const XTopology &topo, int tx, int rx)
        {
            const CMatrix &h = topo.H(tx, rx);
            const double c = condition_number(h);
            if (!(c <= topo.cond_ceiling))
                throw InfeasibleError("channel matrix H(" + std::to_string(tx + 1) + "," + std::to_string(rx + 1) +
                                      ") is singular to working precision");
            return h.partialPivLu().inverse();
        }

        void require_kind(const XTopology &topo, TopologyKind kind, const char *what)
        {
            if (topo.kind != kind)
                throw std::invalid_argument(std::string(what) + ": wrong topology kind");
        }

        std::string label(bool is_rho, int idx)
        {
            return std::string(is_rho ? "rho^" : "zeta^") + std::to_string(idx + 1);
        }
    } // namespace

    PrecodersKx2 make_precoders_kx2(const XTopology &topo, const DirectionSetKx2 &dirs)
    {
        require_kind(topo, TopologyKind::KbyTwo, "make_precoders_kx2");
        PrecodersKx2 pre;
        for (int i = 0; i < topo.K; ++i)
        {
            pre.pu.push_back(checked_inverse(topo, i, 1) * dirs.I2);
            pre.pv.push_back(checked_inverse(topo, i, 0) * dirs.I1);
        }
        return pre;
    }

    std::vector<CVector> precode_kx2(const PrecodersKx2 &pre, const std::vector<CVector> &u,
                                     const std::vector<CVector> &v, double A)
    {
        if (u.size() != pre.pu.size() || v.size() != pre.pv.size())
            throw std::invalid_argument("precode_kx2: message count mismatch");
        std::vector<CVector> x;
        x.reserve(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            x.push_back(A * (pre.pu[i] * u[i] + pre.pv[i] * v[i]));
        return x;
    }

    std::vector<CVector> precode_kx2(const XTopology &topo, const DirectionSetKx2 &dirs,
                                     const std::vector<CVector> &u, const std::vector<CVector> &v, double A)
    {
        return precode_kx2(make_precoders_kx2(topo, dirs), u, v, A);
    }

    nlohmann::json to_json(const AlignmentReport &r)
    {
        nlohmann::json j = {{"max_residual", r.max_residual},
                            {"residuals", r.residuals},
                            {"per_receiver_interference_rank", r.per_receiver_interference_rank}};
        if (!r.pairing.empty())
        {
            // stored one-based for readability
            auto p = r.pairing;
            for (auto &row : p)
                for (auto &s : row)
                    s = s < 0 ? 0 : s + 1;
            j["pairing"] = p;
        }
        return j;
    }

    AlignmentReport verify_alignment_kx2(const XTopology &topo, const DirectionSetKx2 &dirs,
                                         const PrecodersKx2 &pre)
    {
        require_kind(topo, TopologyKind::KbyTwo, "verify_alignment_kx2");
        AlignmentReport rep;
        const double n1 = dirs.I1.norm(), n2 = dirs.I2.norm();
        CMatrix span1(topo.M, topo.M * topo.K), span2(topo.M, topo.M * topo.K);
        for (int i = 0; i < topo.K; ++i)
        {
            const CMatrix at1 = topo.H(i, 0) * pre.pv[static_cast<std::size_t>(i)];
            const CMatrix at2 = topo.H(i, 1) * pre.pu[static_cast<std::size_t>(i)];
            rep.residuals.push_back((at1 - dirs.I1).norm() / n1);
            rep.residuals.push_back((at2 - dirs.I2).norm() / n2);
            span1.middleCols(i * topo.M, topo.M) = at1;
            span2.middleCols(i * topo.M, topo.M) = at2;
        }
        rep.max_residual = *std::max_element(rep.residuals.begin(), rep.residuals.end());
        rep.per_receiver_interference_rank = {numerical_rank(span1), numerical_rank(span2)};
        return rep;
    }

    AlignmentReport verify_alignment_kx2(const XTopology &topo, const DirectionSetKx2 &dirs)
    {
        return verify_alignment_kx2(topo, dirs, make_precoders_kx2(topo, dirs));
    }

    int pairing_2xk(int K, int i, int j)
    {
        if (K < 2 || i < 0 || j < 0 || i >= K || j >= K || i == j)
            throw std::invalid_argument("pairing_2xk: indices out of range");
        // case table in one-based indices
        const int I = i + 1, J = j + 1;
        int s;
        if (J == K)
            s = I == 1 ? 2 : 1;
        else if (J == I - 1)
            s = J + 2 > K ? J + 2 - K : J + 2;
        else
            s = J + 1;
        return s - 1;
    }

    std::vector<std::vector<int>> pairing_table_2xk(int K)
    {
        std::vector<std::vector<int>> t(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(K), -1));
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                if (i != j)
                    t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pairing_2xk(K, i, j);
        return t;
    }

    AlignmentReport verify_alignment_2xk(const XTopology &topo, const DirectionSet2xK &dirs)
    {
        require_kind(topo, TopologyKind::TwoByK, "verify_alignment_2xk");
        AlignmentReport rep;
        rep.pairing = dirs.pairing;
        for (int i = 0; i < topo.K; ++i)
        {
            CMatrix span(topo.M, 0);
            for (int j = 0; j < topo.K; ++j)
            {
                if (j == i)
                    continue;
                const int s = dirs.pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const CMatrix lhs = topo.H(0, i) * dirs.rho[static_cast<std::size_t>(j)];
                const CMatrix rhs = topo.H(1, i) * dirs.zeta[static_cast<std::size_t>(s)];
                const double nl = lhs.norm();
                rep.residuals.push_back(nl > 0 ? (lhs - rhs).norm() / nl : std::numeric_limits<double>::infinity());
                CMatrix grown(topo.M, span.cols() + 2 * topo.M);
                grown << span, lhs, rhs;
                span = std::move(grown);
            }
            rep.per_receiver_interference_rank.push_back(numerical_rank(span));
        }
        rep.max_residual = rep.residuals.empty() ? 0.0 : *std::max_element(rep.residuals.begin(), rep.residuals.end());
        return rep;
    }

    ChainSolution solve_direction_chain(const XTopology &topo)
    {
        require_kind(topo, TopologyKind::TwoByK, "solve_direction_chain");
        const int K = topo.K, M = topo.M;

        struct Edge
        {
            int rx, j, s;
        };
        std::vector<Edge> edges;
        std::vector<CMatrix> T;
        for (int i = 0; i < K; ++i)
        {
            T.push_back(checked_inverse(topo, 1, i) * topo.H(0, i));
            for (int j = 0; j < K; ++j)
                if (j != i)
                    edges.push_back({i, j, pairing_2xk(K, i, j)});
        }

        // node ids: rho^j -> j, zeta^s -> K + s
        const int n_nodes = 2 * K;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_nodes));
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        {
            adj[static_cast<std::size_t>(edges[e].j)].push_back(e);
            adj[static_cast<std::size_t>(K + edges[e].s)].push_back(e);
        }

        std::vector<CMatrix> P(static_cast<std::size_t>(n_nodes));
        std::vector<int> comp(static_cast<std::size_t>(n_nodes), -1), parent(static_cast<std::size_t>(n_nodes), -1);
        std::vector<char> tree_edge(edges.size(), 0);
        int n_comp = 0;
        for (int root = 0; root < n_nodes; ++root)
        {
            if (comp[static_cast<std::size_t>(root)] >= 0)
                continue;
            comp[static_cast<std::size_t>(root)] = n_comp;
            P[static_cast<std::size_t>(root)] = CMatrix::Identity(M, M);
            std::queue<int> q;
            q.push(root);
            while (!q.empty())
            {
                const int a = q.front();
                q.pop();
                for (int e : adj[static_cast<std::size_t>(a)])
                {
                    const Edge &ed = edges[static_cast<std::size_t>(e)];
                    const int rn = ed.j, zn = K + ed.s;
                    const int b = a == rn ? zn : rn;
                    if (comp[static_cast<std::size_t>(b)] >= 0)
                        continue;
                    comp[static_cast<std::size_t>(b)] = n_comp;
                    parent[static_cast<std::size_t>(b)] = a;
                    tree_edge[static_cast<std::size_t>(e)] = 1;
                    const CMatrix &Ti = T[static_cast<std::size_t>(ed.rx)];
                    if (b == zn)
                        P[static_cast<std::size_t>(b)] = Ti * P[static_cast<std::size_t>(a)];
                    else
                        P[static_cast<std::size_t>(b)] = Ti.partialPivLu().solve(P[static_cast<std::size_t>(a)]);
                    q.push(b);
                }
            }
            ++n_comp;
        }

        auto node_label = [K](int n) { return n < K ? label(true, n) : label(false, n - K); };
        auto ancestors = [&parent](int n) {
            std::vector<int> a{n};
            while (parent[static_cast<std::size_t>(a.back())] >= 0)
                a.push_back(parent[static_cast<std::size_t>(a.back())]);
            return a;
        };

        ChainSolution sol;
        std::vector<int> generator_cycle(static_cast<std::size_t>(n_comp), -1);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        {
            if (tree_edge[static_cast<std::size_t>(e)])
                continue;
            const Edge &ed = edges[static_cast<std::size_t>(e)];
            ConstraintCycle cyc;
            cyc.receiver = ed.rx;
            cyc.rho_index = ed.j;
            cyc.zeta_index = ed.s;
            const CMatrix &Pj = P[static_cast<std::size_t>(ed.j)];
            const CMatrix &Ps = P[static_cast<std::size_t>(K + ed.s)];
            cyc.product = Ps.partialPivLu().solve(T[static_cast<std::size_t>(ed.rx)] * Pj);

            auto aj = ancestors(ed.j), as = ancestors(K + ed.s);
            while (aj.size() > 1 && as.size() > 1 && aj[aj.size() - 2] == as[as.size() - 2])
            {
                aj.pop_back();
                as.pop_back();
            }
            for (int n : aj)
                cyc.path.push_back(node_label(n));
            for (auto it = as.rbegin() + 1; it != as.rend(); ++it)
                cyc.path.push_back(node_label(*it));

            const int c = comp[static_cast<std::size_t>(ed.j)];
            if (generator_cycle[static_cast<std::size_t>(c)] < 0)
                generator_cycle[static_cast<std::size_t>(c)] = static_cast<int>(sol.cycles.size());
            sol.cycles.push_back(std::move(cyc));
        }

        // Each component keeps a free right factor. A generic draw (seeded by the topology) keeps
        // distinct components from sharing receive coefficients.
        std::vector<CMatrix> G, F;
        for (int c = 0; c < n_comp; ++c)
        {
            Rng rng(derive_seed(topo.seed, 0x6E11u, static_cast<std::uint64_t>(c)));
            std::uniform_real_distribution<double> mag(0.5, 2.0), ph(-std::numbers::pi, std::numbers::pi);
            std::normal_distribution<double> n01;
            CMatrix free_m(M, M), diag = CMatrix::Zero(M, M);
            for (int a = 0; a < M; ++a)
            {
                for (int b = 0; b < M; ++b)
                    free_m(a, b) = topo.field == Field::Complex ? cplx(n01(rng), n01(rng)) : cplx(n01(rng), 0.0);
                const double r = mag(rng);
                diag(a, a) = topo.field == Field::Complex ? std::polar(r, ph(rng)) : cplx(r, 0.0);
            }
            G.push_back(free_m);
            F.push_back(diag);
        }
        for (auto &cyc : sol.cycles)
        {
            Eigen::ComplexEigenSolver<CMatrix> es(cyc.product);
            for (Eigen::Index k = 0; k < M; ++k)
                cyc.eigenvalues.push_back(es.eigenvalues()(k));
        }
        for (int c = 0; c < n_comp; ++c)
        {
            const int ci = generator_cycle[static_cast<std::size_t>(c)];
            if (ci < 0)
                continue;
            const ConstraintCycle &cyc = sol.cycles[static_cast<std::size_t>(ci)];
            Eigen::ComplexEigenSolver<CMatrix> es(cyc.product);
            std::vector<int> order(static_cast<std::size_t>(M));
            for (int k = 0; k < M; ++k)
                order[static_cast<std::size_t>(k)] = k;
            const auto &ev = es.eigenvalues();
            std::stable_sort(order.begin(), order.end(), [&ev](int a, int b) {
                const double ma = std::abs(ev(a)), mb = std::abs(ev(b));
                if (ma != mb)
                    return ma > mb;
                if (ev(a).real() != ev(b).real())
                    return ev(a).real() < ev(b).real();
                return ev(a).imag() < ev(b).imag();
            });

            bool complex_spectrum = false;
            for (int k = 0; k < M; ++k)
                if (std::abs(ev(k).imag()) > 1e-9 * std::max(1.0, std::abs(ev(k))))
                    complex_spectrum = true;
            if (topo.field == Field::Real && complex_spectrum)
            {
                sol.real_spectrum = false;
                continue;
            }

            CMatrix g(M, M);
            for (int k = 0; k < M; ++k)
            {
                CVector vec = es.eigenvectors().col(order[static_cast<std::size_t>(k)]);
                vec.normalize();
                for (Eigen::Index t = 0; t < vec.size(); ++t)
                    if (std::abs(vec(t)) > 1e-12)
                    {
                        vec *= std::conj(vec(t)) / std::abs(vec(t));
                        break;
                    }
                if (topo.field == Field::Real)
                    vec = vec.real().cast<cplx>();
                g.col(k) = vec;
            }
            G[static_cast<std::size_t>(c)] = g * F[static_cast<std::size_t>(c)];
        }

        sol.dirs.pairing = pairing_table_2xk(K);
        for (int j = 0; j < K; ++j)
            sol.dirs.rho.push_back(P[static_cast<std::size_t>(j)] * G[static_cast<std::size_t>(comp[static_cast<std::size_t>(j)])]);
        for (int s = 0; s < K; ++s)
            sol.dirs.zeta.push_back(P[static_cast<std::size_t>(K + s)] *
                                    G[static_cast<std::size_t>(comp[static_cast<std::size_t>(K + s)])]);
        sol.report = verify_alignment_2xk(topo, sol.dirs);
        return sol;
    }

    DirectionSet2xK design_directions_2xk(const XTopology &topo, double tol)
    {
        if (!(tol > 0))
            throw std::invalid_argument("design_directions_2xk: tol must be positive");
        ChainSolution sol = solve_direction_chain(topo);
        if (sol.real_spectrum && sol.report.max_residual <= tol)
            return std::move(sol.dirs);

        std::string msg = "2xK direction chain infeasible";
        for (const auto &cyc : sol.cycles)
        {
            msg += "; cycle";
            for (const auto &n : cyc.path)
                msg += " " + n;
            msg += " (closing at rx " + std::to_string(cyc.receiver + 1) + ") eigenvalues";
            for (const auto &l : cyc.eigenvalues)
            {
                char buf[64];
                std::snprintf(buf, sizeof buf, " %.6g%+.6gi", l.real(), l.imag());
                msg += buf;
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "; max residual %.3g", sol.report.max_residual);
        msg += buf;
        if (!sol.real_spectrum)
            msg += "; no real eigen-direction";
        throw InfeasibleError(msg);
    }

    int ReceiverModel2xK::interference_coordinates() const
    {
        int n = 0;
        for (const auto &b : bundles)
            n += static_cast<int>(b.gain.cols());
        return n;
    }

    std::vector<CVector> ReceiverModel2xK::bundle_values(const std::vector<CVector> &u,
                                                         const std::vector<CVector> &v) const
    {
        std::vector<CVector> out;
        for (const auto &b : bundles)
            out.push_back(u.at(static_cast<std::size_t>(b.u_index)) + v.at(static_cast<std::size_t>(b.v_index)));
        return out;
    }

    CVector ReceiverModel2xK::signal(const std::vector<CVector> &u, const std::vector<CVector> &v, double A) const
    {
        CVector y = desired_u * u.at(static_cast<std::size_t>(receiver)) +
                    desired_v * v.at(static_cast<std::size_t>(receiver));
        const auto bv = bundle_values(u, v);
        for (std::size_t b = 0; b < bundles.size(); ++b)
            y += bundles[b].gain * bv[b];
        return A * y;
    }

    std::vector<ReceiverModel2xK> received_model_2xk(const XTopology &topo, const DirectionSet2xK &dirs)
    {
        require_kind(topo, TopologyKind::TwoByK, "received_model_2xk");
        std::vector<ReceiverModel2xK> out;
        for (int i = 0; i < topo.K; ++i)
        {
            ReceiverModel2xK rm;
            rm.receiver = i;
            rm.desired_u = topo.H(0, i) * dirs.rho[static_cast<std::size_t>(i)];
            rm.desired_v = topo.H(1, i) * dirs.zeta[static_cast<std::size_t>(i)];
            for (int j = 0; j < topo.K; ++j)
                if (j != i)
                    rm.bundles.push_back({j, dirs.pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                          topo.H(0, i) * dirs.rho[static_cast<std::size_t>(j)]});
            out.push_back(std::move(rm));
        }
        return out;
    }

    std::vector<CVector> precode_2xk(const DirectionSet2xK &dirs, const std::vector<CVector> &u,
                                     const std::vector<CVector> &v, double A)
    {
        if (u.size() != dirs.rho.size() || v.size() != dirs.zeta.size())
            throw std::invalid_argument("precode_2xk: message count mismatch");
        const Eigen::Index M = dirs.rho.front().rows();
        CVector x1 = CVector::Zero(M), x2 = CVector::Zero(M);
        for (std::size_t j = 0; j < u.size(); ++j)
        {
            x1 += dirs.rho[j] * u[j];
            x2 += dirs.zeta[j] * v[j];
        }
        return {A * x1, A * x2};
    }

    std::vector<CVector> build_mac_streams(const XTopology &topo, std::span<const cplx> symbols, int Q, double A)
    {
        require_kind(topo, TopologyKind::SimoMac, "build_mac_streams");
        if (symbols.size() != 3)
            throw std::invalid_argument("build_mac_streams: expected 3 symbols");
        std::vector<CVector> x;
        for (const cplx s : symbols)
        {
            if (std::abs(s.real()) > Q || std::abs(s.imag()) > Q ||
                (topo.field == Field::Real && s.imag() != 0.0))
                throw std::out_of_range("build_mac_streams: symbol outside constellation");
            CVector xi(1);
            xi(0) = A * s;
            x.push_back(std::move(xi));
        }
        return x;
    }
} // namespace lia
