#include "mubent/assignment.hpp"

#include <limits>

#include "mubent/errors.hpp"

namespace mubent {

// Shortest-augmenting-path Hungarian algorithm with row/column potentials,
// run on cost = -weights.
Assignment max_weight_assignment(const RealMatrix& weights) {
    if (weights.rows() != weights.cols()) throw DomainError("max_weight_assignment: matrix must be square");
    const int n = static_cast<int>(weights.rows());
    Assignment out;
    if (n == 0) return out;

    const double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; column 0 is a virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    auto cost = [&](int i, int j) { return -weights(i - 1, j - 1); };

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    out.permutation.assign(n, 0);
    for (int j = 1; j <= n; ++j) out.permutation[match[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) out.value += weights(i, out.permutation[i]);
    return out;
}

}  // namespace mubent
