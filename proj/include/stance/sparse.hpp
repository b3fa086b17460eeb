#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stance {

// Strictly increasing indices, no stored zeros, all indices < dim.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
  std::size_t dim = 0;

  std::size_t nnz() const { return index.size(); }
  double squared_norm() const {
    double s = 0;
    for (double v : value) s += v * v;
    return s;
  }
  double dot(const std::vector<double>& w) const {
    double s = 0;
    for (std::size_t k = 0; k < index.size(); ++k) s += w[index[k]] * value[k];
    return s;
  }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

}  // namespace stance
