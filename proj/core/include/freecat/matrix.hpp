#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "freecat/rational.hpp"

namespace freecat {

// Sparse matrix over complex rationals. rows = codomain dimension, cols =
// domain dimension; basis indices are row-major over tensor factors with
// the leftmost factor most significant.
class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows) {}

  static RatMatrix identity(std::size_t n);
  // Permutation matrix for wire shuffles: entry (perm[j], j) = 1, i.e. the
  // matrix sending basis vector j to basis vector perm[j].
  static RatMatrix permutation(const std::vector<std::size_t>& perm);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const CRat& at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, CRat v);
  void add(std::size_t r, std::size_t c, const CRat& v);

  // this ∘ other (ordinary matrix product; this.cols == other.rows).
  RatMatrix mul(const RatMatrix& other) const;
  RatMatrix kron(const RatMatrix& other) const;
  // Conjugate transpose.
  RatMatrix dagger() const;
  RatMatrix transpose() const;

  bool operator==(const RatMatrix& other) const;
  bool operator!=(const RatMatrix& other) const { return !(*this == other); }

  // First column index (basis input) where the two matrices differ.
  static std::optional<std::size_t> first_diff_col(const RatMatrix& a,
                                                   const RatMatrix& b);

  // Row-major iteration over nonzero entries.
  template <typename F> void for_each(F&& f) const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) f(r, c, v);
  }

  std::size_t nnz() const;
  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, CRat>> data_;
};

} // namespace freecat
