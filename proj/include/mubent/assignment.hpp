#pragma once

#include <vector>

#include "mubent/qmath.hpp"

namespace mubent {

struct Assignment {
    double value = 0.0;
    /// column assigned to each row
    std::vector<int> permutation;
};

/// Maximum-weight perfect matching on a square matrix (Hungarian method, O(n^3)).
Assignment max_weight_assignment(const RealMatrix& weights);

}  // namespace mubent
