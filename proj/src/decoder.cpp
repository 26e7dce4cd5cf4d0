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

#include "lia/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lia
{
    GainTable normalize_for_target(const CMatrix &raw, int target, double noise_variance,
                                   const std::vector<int> &half_range, Field field)
    {
        if (target < 0 || target >= raw.cols())
            throw std::invalid_argument("normalize_for_target: target index out of range");
        if (static_cast<Eigen::Index>(half_range.size()) != raw.cols())
            throw std::invalid_argument("normalize_for_target: one range per variable required");
        if (noise_variance < 0)
            throw std::invalid_argument("normalize_for_target: negative noise variance");

        GainTable g;
        g.field = field;
        g.raw_noise_variance = noise_variance;
        g.coeffs.resize(raw.rows(), raw.cols());
        g.noise_variance.resize(raw.rows());
        g.scale.resize(raw.rows());

        std::vector<Eigen::Index> order{target};
        for (Eigen::Index c = 0; c < raw.cols(); ++c)
            if (c != target)
                order.push_back(c);
        for (auto c : order)
            g.half_range.push_back(half_range[static_cast<std::size_t>(c)]);

        for (Eigen::Index l = 0; l < raw.rows(); ++l)
        {
            const cplx t = raw(l, target);
            if (t == cplx(0.0, 0.0))
                throw InfeasibleError("normalize_for_target: zero target coefficient at antenna " +
                                      std::to_string(l + 1));
            g.scale(l) = t;
            g.noise_variance(l) = noise_variance / std::norm(t);
            for (std::size_t k = 0; k < order.size(); ++k)
                g.coeffs(l, static_cast<Eigen::Index>(k)) = raw(l, order[k]) / t;
        }
        return g;
    }

    namespace
    {
        LatticeModel embed(const CMatrix &c, const std::vector<int> &half_range, Field field, double noise_variance)
        {
            LatticeModel lat;
            const int rd = real_dims(field);
            const auto rows = c.rows(), vars = c.cols();
            lat.basis.resize(rows * rd, vars * rd);
            for (Eigen::Index l = 0; l < rows; ++l)
                for (Eigen::Index v = 0; v < vars; ++v)
                {
                    const cplx g = c(l, v);
                    if (field == Field::Real)
                        lat.basis(l, v) = g.real();
                    else
                    {
                        lat.basis(2 * l, 2 * v) = g.real();
                        lat.basis(2 * l + 1, 2 * v) = g.imag();
                        lat.basis(2 * l, 2 * v + 1) = -g.imag();
                        lat.basis(2 * l + 1, 2 * v + 1) = g.real();
                    }
                }
            for (Eigen::Index v = 0; v < vars; ++v)
                for (int d = 0; d < rd; ++d)
                    lat.half_range.push_back(half_range[static_cast<std::size_t>(v)]);
            lat.target_coords = rd;
            lat.tail_coords = vars > 1 ? rd : 0;
            lat.sigma = std::sqrt(noise_variance);
            return lat;
        }
    } // namespace

    LatticeModel make_lattice(const GainTable &g)
    {
        // undoing the per-antenna scale whitens the noise back to the raw variance
        const CMatrix w = g.scale.asDiagonal() * g.coeffs;
        return embed(w, g.half_range, g.field, g.raw_noise_variance);
    }

    LatticeModel make_lattice(const CMatrix &raw, int target, double noise_variance,
                              const std::vector<int> &half_range, Field field)
    {
        if (target < 0 || target >= raw.cols() || static_cast<Eigen::Index>(half_range.size()) != raw.cols())
            throw std::invalid_argument("make_lattice: bad target or ranges");
        if (noise_variance < 0)
            throw std::invalid_argument("make_lattice: negative noise variance");
        CMatrix c(raw.rows(), raw.cols());
        std::vector<int> r{half_range[static_cast<std::size_t>(target)]};
        c.col(0) = raw.col(target);
        Eigen::Index k = 1;
        for (Eigen::Index v = 0; v < raw.cols(); ++v)
            if (v != target)
            {
                c.col(k++) = raw.col(v);
                r.push_back(half_range[static_cast<std::size_t>(v)]);
            }
        return embed(c, r, field, noise_variance);
    }

    RVector real_embedding(const CVector &y, Field field)
    {
        if (field == Field::Real)
            return y.real();
        RVector r(2 * y.size());
        for (Eigen::Index l = 0; l < y.size(); ++l)
        {
            r(2 * l) = y(l).real();
            r(2 * l + 1) = y(l).imag();
        }
        return r;
    }

    // ---------------------------------------------------------------------------------------
    // Kernels

    namespace
    {
        void check_lattice(const LatticeModel &lat)
        {
            const int C = lat.coords();
            if (C < 1 || static_cast<int>(lat.half_range.size()) != C)
                throw std::invalid_argument("lattice model: inconsistent coordinates");
            if (lat.target_coords < 1 || lat.tail_coords < 0 || lat.target_coords + lat.tail_coords > C)
                throw std::invalid_argument("lattice model: bad target/tail split");
            for (int r : lat.half_range)
                if (r < 0)
                    throw std::invalid_argument("lattice model: negative range");
        }

        // Working copy with columns stored contiguously.
        struct Kernel
        {
            int D, C, t, tail, mid;
            std::vector<double> cols; // C columns of length D
            std::vector<double> col_norm2;
            std::vector<int> r;

            explicit Kernel(const LatticeModel &lat)
                : D(lat.dims()), C(lat.coords()), t(lat.target_coords), tail(lat.tail_coords),
                  mid(lat.coords() - lat.tail_coords), cols(static_cast<std::size_t>(D * C)),
                  col_norm2(static_cast<std::size_t>(C)), r(lat.half_range)
            {
                for (int c = 0; c < C; ++c)
                {
                    double n2 = 0;
                    for (int d = 0; d < D; ++d)
                    {
                        cols[static_cast<std::size_t>(c * D + d)] = lat.basis(d, c);
                        n2 += lat.basis(d, c) * lat.basis(d, c);
                    }
                    col_norm2[static_cast<std::size_t>(c)] = n2;
                }
            }

            const double *col(int c) const { return cols.data() + static_cast<std::ptrdiff_t>(c) * D; }

            // Minimizes |res + sum_tail k_c b_c| over k_c in [-lim_c, lim_c]; tail columns are orthogonal.
            // Exact halves round down so the lexicographically smaller tuple wins.
            double solve_tail(const double *res, double *work, int *k, int scale) const
            {
                std::copy(res, res + D, work);
                for (int c = mid; c < C; ++c)
                {
                    const double *b = col(c);
                    const double n2 = col_norm2[static_cast<std::size_t>(c)];
                    int kc = 0;
                    if (n2 > 0)
                    {
                        double dot = 0;
                        for (int d = 0; d < D; ++d)
                            dot += work[d] * b[d];
                        const double lim = static_cast<double>(scale * r[static_cast<std::size_t>(c)]);
                        const double kk = std::clamp(std::ceil(-dot / n2 - 0.5), -lim, lim);
                        kc = static_cast<int>(kk);
                        for (int d = 0; d < D; ++d)
                            work[d] += kk * b[d];
                    }
                    k[c - mid] = kc;
                }
                double s = 0;
                for (int d = 0; d < D; ++d)
                    s += work[d] * work[d];
                return s;
            }
        };

        std::vector<std::vector<int>> target_half_space(const Kernel &k)
        {
            std::vector<std::vector<int>> out;
            const int r0 = 2 * k.r[0];
            if (k.t == 1)
            {
                for (int a = 1; a <= r0; ++a)
                    out.push_back({a});
            }
            else
            {
                const int r1 = 2 * k.r[1];
                for (int a = 0; a <= r0; ++a)
                    for (int b = -r1; b <= r1; ++b)
                        if (a > 0 || b > 0)
                            out.push_back({a, b});
            }
            return out;
        }

        // Smallest squared distance for one fixed target difference.
        double scan_difference(const Kernel &k, const std::vector<int> &td)
        {
            const int D = k.D;
            std::vector<double> base(static_cast<std::size_t>(D), 0.0), res(static_cast<std::size_t>(D)),
                work(static_cast<std::size_t>(D));
            std::vector<int> tk(static_cast<std::size_t>(std::max(k.tail, 1)));
            for (int c = 0; c < k.t; ++c)
                for (int d = 0; d < D; ++d)
                    base[static_cast<std::size_t>(d)] += td[static_cast<std::size_t>(c)] * k.col(c)[d];

            const int n_mid = k.mid - k.t;
            std::vector<int> val(static_cast<std::size_t>(n_mid));
            for (int c = 0; c < n_mid; ++c)
                val[static_cast<std::size_t>(c)] = -2 * k.r[static_cast<std::size_t>(k.t + c)];

            double best = std::numeric_limits<double>::infinity();
            for (;;)
            {
                // fresh residual for every tuple keeps rounding identical to a direct evaluation
                res = base;
                for (int c = 0; c < n_mid; ++c)
                {
                    const double v = val[static_cast<std::size_t>(c)];
                    if (v != 0)
                        for (int d = 0; d < D; ++d)
                            res[static_cast<std::size_t>(d)] += v * k.col(k.t + c)[d];
                }
                best = std::min(best, k.solve_tail(res.data(), work.data(), tk.data(), 2));

                int c = n_mid - 1;
                for (; c >= 0; --c)
                {
                    auto &v = val[static_cast<std::size_t>(c)];
                    const int lim = 2 * k.r[static_cast<std::size_t>(k.t + c)];
                    if (v < lim)
                    {
                        ++v;
                        break;
                    }
                    v = -lim;
                }
                if (c < 0)
                    break;
            }
            return best;
        }

        double min_distance_impl(const LatticeModel &lat, bool parallel)
        {
            check_lattice(lat);
            const Kernel k(lat);
            const auto diffs = target_half_space(k);
            double best = std::numeric_limits<double>::infinity();
            const auto n = static_cast<std::ptrdiff_t>(diffs.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best) if (parallel)
            for (std::ptrdiff_t i = 0; i < n; ++i)
                best = std::min(best, scan_difference(k, diffs[static_cast<std::size_t>(i)]));
            return std::sqrt(best);
        }

        // Odometer over [lo_c, hi_c] with the last coordinate fastest.
        bool advance(std::vector<int> &v, const std::vector<int> &lo, const std::vector<int> &hi)
        {
            for (auto c = static_cast<std::ptrdiff_t>(v.size()) - 1; c >= 0; --c)
            {
                const auto i = static_cast<std::size_t>(c);
                if (v[i] < hi[i])
                {
                    ++v[i];
                    return true;
                }
                v[i] = lo[i];
            }
            return false;
        }

        bool strictly_better(double d2, double best2)
        {
            if (std::isinf(best2))
                return d2 < best2;
            return d2 < best2 - 1e-12 * std::max(1.0, best2);
        }
    } // namespace

    double min_distance(const LatticeModel &lat) { return min_distance_impl(lat, true); }
    double min_distance_serial(const LatticeModel &lat) { return min_distance_impl(lat, false); }

    double min_distance_bruteforce(const LatticeModel &lat)
    {
        check_lattice(lat);
        const int C = lat.coords();
        std::vector<int> lo(static_cast<std::size_t>(C)), hi(static_cast<std::size_t>(C));
        for (int c = 0; c < C; ++c)
        {
            hi[static_cast<std::size_t>(c)] = 2 * lat.half_range[static_cast<std::size_t>(c)];
            lo[static_cast<std::size_t>(c)] = -hi[static_cast<std::size_t>(c)];
        }
        std::vector<int> v = lo;
        double best = std::numeric_limits<double>::infinity();
        RVector x(C);
        do
        {
            bool target_moves = false;
            for (int c = 0; c < lat.target_coords; ++c)
                target_moves = target_moves || v[static_cast<std::size_t>(c)] != 0;
            if (!target_moves)
                continue;
            for (int c = 0; c < C; ++c)
                x(c) = v[static_cast<std::size_t>(c)];
            best = std::min(best, (lat.basis * x).squaredNorm());
        } while (advance(v, lo, hi));
        return std::sqrt(best);
    }

    double min_distance_cost(const LatticeModel &lat)
    {
        check_lattice(lat);
        double c = lat.target_coords == 1 ? 2.0 * lat.half_range[0]
                                          : (4.0 * lat.half_range[0] + 1) * (4.0 * lat.half_range[1] + 1) / 2;
        for (int k = lat.target_coords; k < lat.coords() - lat.tail_coords; ++k)
            c *= 4.0 * lat.half_range[static_cast<std::size_t>(k)] + 1;
        return c;
    }

    double nearest_point_cost(const LatticeModel &lat)
    {
        check_lattice(lat);
        double c = 1;
        for (int k = 0; k < lat.coords() - lat.tail_coords; ++k)
            c *= 2.0 * lat.half_range[static_cast<std::size_t>(k)] + 1;
        return c;
    }

    NearestPoint nearest_point(const LatticeModel &lat, const RVector &y)
    {
        check_lattice(lat);
        if (y.size() != lat.dims())
            throw std::invalid_argument("nearest_point: receive vector has wrong dimension");
        const Kernel k(lat);
        const int D = k.D;
        std::vector<int> lo(static_cast<std::size_t>(k.mid)), hi(static_cast<std::size_t>(k.mid));
        for (int c = 0; c < k.mid; ++c)
        {
            hi[static_cast<std::size_t>(c)] = k.r[static_cast<std::size_t>(c)];
            lo[static_cast<std::size_t>(c)] = -hi[static_cast<std::size_t>(c)];
        }
        std::vector<double> res(static_cast<std::size_t>(D)), work(static_cast<std::size_t>(D));
        std::vector<int> tk(static_cast<std::size_t>(std::max(k.tail, 1)));
        // outer odometer over all prefix coordinates but the last; the last one runs inline
        const int inner = k.mid - 1;
        const double *b_inner = k.col(inner);
        const int r_inner = k.r[static_cast<std::size_t>(inner)];
        std::vector<int> olo(lo.begin(), lo.end() - 1), ohi(hi.begin(), hi.end() - 1);
        std::vector<int> v = olo;
        std::vector<double> partial(static_cast<std::size_t>(D));

        NearestPoint best;
        double best2 = std::numeric_limits<double>::infinity();
        do
        {
            for (int d = 0; d < D; ++d)
            {
                double s = -y(d);
                for (int c = 0; c < inner; ++c)
                    s += v[static_cast<std::size_t>(c)] * k.col(c)[d];
                partial[static_cast<std::size_t>(d)] = s;
            }
            for (int x = -r_inner; x <= r_inner; ++x)
            {
                for (int d = 0; d < D; ++d)
                    res[static_cast<std::size_t>(d)] = partial[static_cast<std::size_t>(d)] + x * b_inner[d];
                const double d2 = k.solve_tail(res.data(), work.data(), tk.data(), 1);
                if (strictly_better(d2, best2))
                {
                    best2 = d2;
                    best.coords = v;
                    best.coords.push_back(x);
                    best.coords.insert(best.coords.end(), tk.begin(), tk.begin() + k.tail);
                }
            }
        } while (advance(v, olo, ohi));
        best.distance = std::sqrt(best2);
        return best;
    }

    NearestPoint nearest_point_bruteforce(const LatticeModel &lat, const RVector &y)
    {
        check_lattice(lat);
        if (y.size() != lat.dims())
            throw std::invalid_argument("nearest_point: receive vector has wrong dimension");
        const int C = lat.coords();
        std::vector<int> lo(static_cast<std::size_t>(C)), hi(static_cast<std::size_t>(C));
        for (int c = 0; c < C; ++c)
        {
            hi[static_cast<std::size_t>(c)] = lat.half_range[static_cast<std::size_t>(c)];
            lo[static_cast<std::size_t>(c)] = -hi[static_cast<std::size_t>(c)];
        }
        std::vector<int> v = lo;
        NearestPoint best;
        double best2 = std::numeric_limits<double>::infinity();
        RVector x(C);
        do
        {
            for (int c = 0; c < C; ++c)
                x(c) = v[static_cast<std::size_t>(c)];
            const double d2 = (lat.basis * x - y).squaredNorm();
            if (strictly_better(d2, best2))
            {
                best2 = d2;
                best.coords = v;
            }
        } while (advance(v, lo, hi));
        best.distance = std::sqrt(best2);
        return best;
    }

    // ---------------------------------------------------------------------------------------
    // Explicit constellation

    ReceivedConstellation enumerate_received(const LatticeModel &lat, std::uint64_t max_points)
    {
        check_lattice(lat);
        const int C = lat.coords();
        double total = 1;
        for (int r : lat.half_range)
            total *= 2.0 * r + 1.0;
        if (total > static_cast<double>(max_points))
            throw BudgetExceeded("enumerate_received: " + std::to_string(static_cast<long long>(total)) +
                                 " points exceed the cap of " + std::to_string(max_points));

        const double quantum = 1e-9 * std::max(1.0, lat.basis.cwiseAbs().maxCoeff());
        std::map<std::vector<long long>, std::size_t> index;
        ReceivedConstellation rc;
        rc.target_coords = lat.target_coords;

        std::vector<int> lo(static_cast<std::size_t>(C)), hi(static_cast<std::size_t>(C));
        for (int c = 0; c < C; ++c)
        {
            hi[static_cast<std::size_t>(c)] = lat.half_range[static_cast<std::size_t>(c)];
            lo[static_cast<std::size_t>(c)] = -hi[static_cast<std::size_t>(c)];
        }
        std::vector<int> v = lo;
        RVector x(C);
        std::vector<long long> key(static_cast<std::size_t>(lat.dims()));
        do
        {
            for (int c = 0; c < C; ++c)
                x(c) = v[static_cast<std::size_t>(c)];
            RVector p = lat.basis * x;
            for (int d = 0; d < lat.dims(); ++d)
                key[static_cast<std::size_t>(d)] = std::llround(p(d) / quantum);
            auto [it, fresh] = index.try_emplace(key, rc.points.size());
            if (fresh)
            {
                rc.points.push_back(std::move(p));
                rc.provenance.emplace_back();
                rc.targets.emplace_back();
            }
            const std::vector<int> tgt(v.begin(), v.begin() + lat.target_coords);
            rc.provenance[it->second].push_back(v);
            auto &ts = rc.targets[it->second];
            if (std::find(ts.begin(), ts.end(), tgt) == ts.end())
                ts.push_back(tgt);
        } while (advance(v, lo, hi));

        for (auto &ts : rc.targets)
            std::sort(ts.begin(), ts.end());

        if (!check_property_gamma(rc))
        {
            rc.d_min = 0.0;
            return rc;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < rc.points.size(); ++a)
            for (std::size_t b = a + 1; b < rc.points.size(); ++b)
                if (rc.targets[a][0] != rc.targets[b][0])
                    best = std::min(best, (rc.points[a] - rc.points[b]).squaredNorm());
        rc.d_min = std::sqrt(best);
        return rc;
    }

    bool check_property_gamma(const ReceivedConstellation &rc)
    {
        return std::all_of(rc.targets.begin(), rc.targets.end(), [](const auto &t) { return t.size() == 1; });
    }

    DecodeOutcome hard_decode(const RVector &y, const ReceivedConstellation &rc,
                              const std::optional<std::vector<int>> &truth)
    {
        if (rc.points.empty())
            throw std::invalid_argument("hard_decode: empty constellation");
        std::size_t best = 0;
        double best2 = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < rc.points.size(); ++p)
        {
            if (rc.points[p].size() != y.size())
                throw std::invalid_argument("hard_decode: receive vector has wrong dimension");
            const double d2 = (rc.points[p] - y).squaredNorm();
            if (strictly_better(d2, best2))
            {
                best = p;
                best2 = d2;
            }
            else if (!strictly_better(best2, d2) && rc.provenance[p][0] < rc.provenance[best][0])
            {
                best = p;
                best2 = std::min(best2, d2);
            }
        }
        DecodeOutcome out;
        out.decoded = rc.targets[best][0];
        out.distance = std::sqrt(best2);
        out.correct = truth && *truth == out.decoded;
        return out;
    }

    DecodeOutcome joint_decode_message(const RVector &y, const LatticeModel &lat,
                                       const std::optional<std::vector<int>> &truth)
    {
        const NearestPoint np = nearest_point(lat, y);
        DecodeOutcome out;
        out.decoded.assign(np.coords.begin(), np.coords.begin() + lat.target_coords);
        out.distance = np.distance;
        out.correct = truth && *truth == out.decoded;
        return out;
    }

    // ---------------------------------------------------------------------------------------
    // Bounds

    ErrorBound error_probability_bound(double d_min, double sigma)
    {
        if (!(d_min >= 0) || !(sigma > 0))
            throw std::invalid_argument("error_probability_bound: need d_min >= 0 and sigma > 0");
        return {std::exp(-d_min * d_min / (8.0 * sigma * sigma)),
                0.5 * std::erfc(d_min / (2.0 * sigma * std::sqrt(2.0)))};
    }

    double rate_lower_bound(double cardinality, double p_error)
    {
        if (!(cardinality >= 2) || !(p_error >= 0 && p_error <= 1))
            throw std::invalid_argument("rate_lower_bound: need cardinality >= 2 and 0 <= P_e <= 1");
        const double bits = std::log2(cardinality);
        return bits - 1.0 - p_error * bits;
    }

    double reported_rate(double cardinality, double p_error)
    {
        return std::max(0.0, rate_lower_bound(cardinality, p_error));
    }

    bool noise_removal_check(double d_min, double noise_variance)
    {
        if (!(d_min >= 0) || !(noise_variance >= 0))
            throw std::invalid_argument("noise_removal_check: inputs must be non-negative");
        return d_min > std::sqrt(noise_variance);
    }
} // namespace lia
