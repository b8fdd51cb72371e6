#pragma once

#include <utility>
#include <vector>

#include "convring/characteristic.hpp"

namespace convring {

/// Square column-sparse matrix. Entries live in [1, p) for p > 0 and in Z \ {0}
/// for p = 0; absent entries are zero.
struct SparseMatrix {
    Characteristic characteristic{0};
    unsigned long dim = 0;
    /// cols[j] lists (row, value) pairs with nonzero value.
    std::vector<std::vector<std::pair<unsigned long, long long>>> cols;
};

} // namespace convring
