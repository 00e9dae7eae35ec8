#pragma once

#include <vector>

#include <Eigen/Dense>

namespace orbithull::testing {

inline std::vector<std::vector<int>> index_subsets(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Spectral norm of the k-th compound matrix, built from all k x k minors.
inline double compound_norm(const Eigen::MatrixXd& a, int k) {
    auto idx = index_subsets(static_cast<int>(a.rows()), k);
    const auto size = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd c(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        for (Eigen::Index s = 0; s < size; ++s) {
            Eigen::MatrixXd minor(k, k);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) minor(i, j) = a(idx[r][i], idx[s][j]);
            }
            c(r, s) = minor.determinant();
        }
    }
    return Eigen::JacobiSVD<Eigen::MatrixXd>(c).singularValues()(0);
}

}  // namespace orbithull::testing
