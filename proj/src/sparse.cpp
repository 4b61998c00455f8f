#include "heatctl/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatctl {

SymmetricSparseMatrix SymmetricSparseMatrix::from_triplets(Index dimension,
                                                           std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SymmetricSparseMatrix m;
  m.dimension_ = dimension;
  m.row_offsets_.assign(dimension + 1, 0);
  m.columns_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  for (Index k = 0; k < triplets.size();) {
    const Triplet& t = triplets[k];
    if (t.row >= dimension || t.col >= dimension) {
      throw std::out_of_range("triplet index outside matrix dimension");
    }
    double sum = 0.0;
    Index j = k;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j) {
      sum += triplets[j].value;
    }
    m.columns_.push_back(t.col);
    m.values_.push_back(sum);
    ++m.row_offsets_[t.row + 1];
    k = j;
  }
  for (Index r = 0; r < dimension; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

SymmetricSparseMatrix SymmetricSparseMatrix::identity(Index dimension) {
  return diagonal(Vector(dimension, 1.0));
}

SymmetricSparseMatrix SymmetricSparseMatrix::diagonal(std::span<const double> values) {
  std::vector<Triplet> t;
  t.reserve(values.size());
  for (Index i = 0; i < values.size(); ++i) t.push_back({i, i, values[i]});
  return from_triplets(values.size(), std::move(t));
}

SymmetricSparseMatrix SymmetricSparseMatrix::combine(double a, const SymmetricSparseMatrix& A,
                                                     double b, const SymmetricSparseMatrix& B) {
  if (A.dimension() != B.dimension()) throw std::invalid_argument("dimension mismatch");
  std::vector<Triplet> t;
  t.reserve(A.nonzeros() + B.nonzeros());
  for (Index r = 0; r < A.dimension(); ++r) {
    for (Index k = A.row_offsets_[r]; k < A.row_offsets_[r + 1]; ++k) {
      t.push_back({r, A.columns_[k], a * A.values_[k]});
    }
    for (Index k = B.row_offsets_[r]; k < B.row_offsets_[r + 1]; ++k) {
      t.push_back({r, B.columns_[k], b * B.values_[k]});
    }
  }
  return from_triplets(A.dimension(), std::move(t));
}

double SymmetricSparseMatrix::operator()(Index row, Index col) const {
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(row));
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(row + 1));
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<Index>(it - columns_.begin())];
}

void SymmetricSparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dimension_ || y.size() != dimension_) {
    throw std::invalid_argument("matrix-vector size mismatch");
  }
  for (Index r = 0; r < dimension_; ++r) {
    double sum = 0.0;
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) sum += values_[k] * x[columns_[k]];
    y[r] = sum;
  }
}

Vector SymmetricSparseMatrix::operator*(std::span<const double> x) const {
  Vector y(dimension_);
  multiply(x, y);
  return y;
}

Vector SymmetricSparseMatrix::diagonal_entries() const {
  Vector d(dimension_, 0.0);
  for (Index r = 0; r < dimension_; ++r) d[r] = (*this)(r, r);
  return d;
}

Vector SymmetricSparseMatrix::row_sums() const {
  Vector s(dimension_, 0.0);
  for (Index r = 0; r < dimension_; ++r) {
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) s[r] += values_[k];
  }
  return s;
}

double SymmetricSparseMatrix::quadratic_form(std::span<const double> x) const {
  return bilinear_form(x, x);
}

double SymmetricSparseMatrix::bilinear_form(std::span<const double> x,
                                            std::span<const double> y) const {
  return dot(x, (*this) * y);
}

SymmetricSparseMatrix SymmetricSparseMatrix::principal_submatrix(
    std::span<const Index> keep) const {
  constexpr Index kDropped = static_cast<Index>(-1);
  std::vector<Index> renumber(dimension_, kDropped);
  for (Index i = 0; i < keep.size(); ++i) renumber.at(keep[i]) = i;

  std::vector<Triplet> t;
  for (Index i = 0; i < keep.size(); ++i) {
    const Index r = keep[i];
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      const Index c = renumber[columns_[k]];
      if (c != kDropped) t.push_back({i, c, values_[k]});
    }
  }
  return from_triplets(keep.size(), std::move(t));
}

bool SymmetricSparseMatrix::is_symmetric() const {
  for (Index r = 0; r < dimension_; ++r) {
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if ((*this)(columns_[k], r) != values_[k]) return false;
    }
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (Index i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector add(std::span<const double> a, std::span<const double> b) {
  Vector out(a.begin(), a.end());
  axpy(1.0, b, out);
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  Vector out(a.begin(), a.end());
  axpy(-1.0, b, out);
  return out;
}

Vector scaled(double s, std::span<const double> a) {
  Vector out(a.begin(), a.end());
  for (double& v : out) v *= s;
  return out;
}

}  // namespace heatctl
