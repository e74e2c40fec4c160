#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/fem/mesh.hpp"

namespace noxsim::fem {

/// Compressed-row structure shared by every operator assembled on a mesh, so
/// linear combinations reduce to loops over the value arrays.
struct SparsityPattern {
  Index rows = 0;
  std::vector<Index> row_ptr;
  std::vector<Index> cols;  ///< sorted within each row

  Index nnz() const { return cols.size(); }

  /// Position of (r, c) in the value array. Throws if not in the pattern.
  Index find(Index r, Index c) const {
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
    auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c) throw Error("sparse: entry outside pattern");
    return static_cast<Index>(it - cols.begin());
  }

  static std::shared_ptr<const SparsityPattern> from_mesh(const Mesh& mesh) {
    const Index n = mesh.node_count();
    std::vector<std::vector<Index>> adj(n);
    for (int ey = 0; ey < mesh.ny(); ++ey)
      for (int ex = 0; ex < mesh.nx(); ++ex) {
        const auto nodes = mesh.element_nodes(ex, ey);
        for (Index a : nodes)
          for (Index b : nodes) adj[a].push_back(b);
      }
    auto p = std::make_shared<SparsityPattern>();
    p->rows = n;
    p->row_ptr.assign(n + 1, 0);
    for (Index r = 0; r < n; ++r) {
      auto& row = adj[r];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      p->row_ptr[r + 1] = p->row_ptr[r] + row.size();
    }
    p->cols.reserve(p->row_ptr[n]);
    for (const auto& row : adj) p->cols.insert(p->cols.end(), row.begin(), row.end());
    return p;
  }

  static std::shared_ptr<const SparsityPattern> diagonal(Index n) {
    auto p = std::make_shared<SparsityPattern>();
    p->rows = n;
    p->row_ptr.resize(n + 1);
    p->cols.resize(n);
    for (Index i = 0; i <= n; ++i) p->row_ptr[i] = i;
    for (Index i = 0; i < n; ++i) p->cols[i] = i;
    return p;
  }
};

/// Square sparse matrix over a shared pattern.
class SparseOperator {
public:
  SparseOperator() = default;
  explicit SparseOperator(std::shared_ptr<const SparsityPattern> pattern, bool symmetric = true)
      : pattern_(std::move(pattern)), values_(pattern_->nnz(), 0.0), symmetric_(symmetric) {}

  Index dimension() const { return pattern_ ? pattern_->rows : 0; }
  const SparsityPattern& pattern() const { return *pattern_; }
  const std::shared_ptr<const SparsityPattern>& pattern_ptr() const { return pattern_; }
  bool symmetric() const { return symmetric_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double& at(Index r, Index c) { return values_[pattern_->find(r, c)]; }
  double at(Index r, Index c) const { return values_[pattern_->find(r, c)]; }

  void multiply(std::span<const double> x, std::span<double> y) const {
    const auto& p = *pattern_;
    for (Index r = 0; r < p.rows; ++r) {
      double s = 0.0;
      for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) s += values_[k] * x[p.cols[k]];
      y[r] = s;
    }
  }

  std::vector<double> operator*(std::span<const double> x) const {
    std::vector<double> y(dimension());
    multiply(x, y);
    return y;
  }

  /// this += alpha * other; both must share the pattern.
  void add_scaled(double alpha, const SparseOperator& other) {
    if (other.pattern_ != pattern_) throw Error("sparse: operators do not share a pattern");
    for (Index k = 0; k < values_.size(); ++k) values_[k] += alpha * other.values_[k];
    symmetric_ = symmetric_ && other.symmetric_;
  }

  void scale(double alpha) {
    for (double& v : values_) v *= alpha;
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(dimension(), 0.0);
    const auto& p = *pattern_;
    for (Index r = 0; r < p.rows; ++r)
      for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k)
        if (p.cols[k] == r) d[r] = values_[k];
    return d;
  }

  /// max |A - A^T| over stored entries.
  double max_asymmetry() const {
    const auto& p = *pattern_;
    double worst = 0.0;
    for (Index r = 0; r < p.rows; ++r)
      for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k)
        worst = std::max(worst, std::abs(values_[k] - at(p.cols[k], r)));
    return worst;
  }

  /// Plain-text `row,col,value` dump of nonzero entries.
  void write_triplets(std::ostream& os) const {
    const auto& p = *pattern_;
    os << "row,col,value\n";
    os.precision(17);
    for (Index r = 0; r < p.rows; ++r)
      for (Index k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k)
        if (values_[k] != 0.0) os << r << ',' << p.cols[k] << ',' << values_[k] << '\n';
  }

private:
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<double> values_;
  bool symmetric_ = true;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace noxsim::fem
