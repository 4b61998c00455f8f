#pragma once

#include <span>
#include <vector>

#include "heatctl/mesh.hpp"

namespace heatctl {

using Vector = std::vector<double>;

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Square sparse matrix in compressed-row form holding both triangles.
///
/// Entries are sorted by (row, col); duplicates from assembly are summed in
/// insertion order, so a fixed assembly sequence gives bit-identical values.
class SymmetricSparseMatrix {
 public:
  SymmetricSparseMatrix() = default;

  static SymmetricSparseMatrix from_triplets(Index dimension, std::vector<Triplet> triplets);
  static SymmetricSparseMatrix identity(Index dimension);
  static SymmetricSparseMatrix diagonal(std::span<const double> values);

  /// a*A + b*B over the union of both patterns.
  static SymmetricSparseMatrix combine(double a, const SymmetricSparseMatrix& A, double b,
                                       const SymmetricSparseMatrix& B);

  Index dimension() const noexcept { return dimension_; }
  Index nonzeros() const noexcept { return values_.size(); }

  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> columns() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return values_; }

  double operator()(Index row, Index col) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector operator*(std::span<const double> x) const;

  Vector diagonal_entries() const;
  Vector row_sums() const;

  double quadratic_form(std::span<const double> x) const;
  double bilinear_form(std::span<const double> x, std::span<const double> y) const;

  /// Rows and columns listed in `keep` (sorted), renumbered 0..keep.size()-1.
  SymmetricSparseMatrix principal_submatrix(std::span<const Index> keep) const;

  bool is_symmetric() const;

 private:
  Index dimension_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> columns_;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += a*x
void axpy(double a, std::span<const double> x, std::span<double> y);
Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(double s, std::span<const double> a);

}  // namespace heatctl
