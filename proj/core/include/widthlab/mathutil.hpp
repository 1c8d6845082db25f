#pragma once

#include <algorithm>
#include <vector>

#include "widthlab/vec.hpp"

namespace widthlab {

/// Residual of min ||sum_i lam_i dirs_i - target|| over lam >= 0
/// (Lawson-Hanson active set; the column count stays small here).
template <int N>
inline double nnls_residual(const std::vector<Vec<N>>& dirs, const Vec<N>& target,
                            int max_iter = 200) {
    const int k = static_cast<int>(dirs.size());
    if (k == 0) return norm(target);
    std::vector<double> lam(k, 0.0);
    std::vector<int> passive;
    Vec<N> resid = target;

    auto solve_passive = [&](std::vector<double>& sol) -> bool {
        const int m = static_cast<int>(passive.size());
        // Normal equations with a tiny ridge for rank-deficient sets.
        std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
        std::vector<double> rhs(m, 0.0);
        for (int i = 0; i < m; ++i) {
            rhs[i] = dot(dirs[passive[i]], target);
            for (int j = 0; j < m; ++j) g[i][j] = dot(dirs[passive[i]], dirs[passive[j]]);
            g[i][i] += 1e-14;
        }
        // Gaussian elimination.
        for (int c = 0; c < m; ++c) {
            int piv = c;
            for (int r = c + 1; r < m; ++r)
                if (std::abs(g[r][c]) > std::abs(g[piv][c])) piv = r;
            if (std::abs(g[piv][c]) < 1e-18) return false;
            std::swap(g[c], g[piv]);
            std::swap(rhs[c], rhs[piv]);
            for (int r = c + 1; r < m; ++r) {
                double f = g[r][c] / g[c][c];
                for (int q = c; q < m; ++q) g[r][q] -= f * g[c][q];
                rhs[r] -= f * rhs[c];
            }
        }
        sol.assign(m, 0.0);
        for (int r = m - 1; r >= 0; --r) {
            double s = rhs[r];
            for (int q = r + 1; q < m; ++q) s -= g[r][q] * sol[q];
            sol[r] = s / g[r][r];
        }
        return true;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        // Most violated dual variable among the free columns.
        int best = -1;
        double best_w = 1e-10;
        for (int j = 0; j < k; ++j) {
            if (std::find(passive.begin(), passive.end(), j) != passive.end()) continue;
            double w = dot(dirs[j], resid);
            if (w > best_w) {
                best_w = w;
                best = j;
            }
        }
        if (best < 0) break;
        passive.push_back(best);

        for (int inner = 0; inner < max_iter; ++inner) {
            std::vector<double> sol;
            if (!solve_passive(sol)) {
                passive.pop_back();
                goto done;
            }
            bool all_pos = true;
            for (double s : sol)
                if (s <= 0.0) all_pos = false;
            if (all_pos) {
                for (std::size_t i = 0; i < passive.size(); ++i) lam[passive[i]] = sol[i];
                break;
            }
            // Step back toward the previous feasible point and drop a column.
            double alpha = 1.0;
            for (std::size_t i = 0; i < passive.size(); ++i) {
                double cur = lam[passive[i]];
                if (sol[i] <= 0.0 && cur - sol[i] > 1e-18)
                    alpha = std::min(alpha, cur / (cur - sol[i]));
            }
            for (std::size_t i = 0; i < passive.size(); ++i)
                lam[passive[i]] += alpha * (sol[i] - lam[passive[i]]);
            for (std::size_t i = 0; i < passive.size();) {
                if (lam[passive[i]] <= 1e-15) {
                    lam[passive[i]] = 0.0;
                    passive.erase(passive.begin() + static_cast<long>(i));
                } else {
                    ++i;
                }
            }
        }
        resid = target;
        for (int j = 0; j < k; ++j)
            if (lam[j] != 0.0) resid -= lam[j] * dirs[j];
    }
done:
    resid = target;
    for (int j = 0; j < k; ++j)
        if (lam[j] != 0.0) resid -= lam[j] * dirs[j];
    return norm(resid);
}

/// Greedy clustering by radius; returns one representative per cluster.
template <int N>
inline std::vector<Vec<N>> cluster_points(const std::vector<Vec<N>>& pts, double radius) {
    std::vector<Vec<N>> reps;
    for (const auto& p : pts) {
        bool found = false;
        for (const auto& r : reps)
            if (dist(p, r) <= radius) {
                found = true;
                break;
            }
        if (!found) reps.push_back(p);
    }
    return reps;
}

}  // namespace widthlab
