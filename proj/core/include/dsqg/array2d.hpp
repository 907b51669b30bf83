#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dsqg {

/// Dense row-major matrix of doubles. Row index runs along the first
/// coordinate direction, column index along the second.
class Array2D {
 public:
  Array2D() = default;
  Array2D(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  bool same_shape(const Array2D& o) const noexcept { return rows_ == o.rows_ && cols_ == o.cols_; }

  Array2D& operator+=(const Array2D& o);
  Array2D& operator-=(const Array2D& o);
  Array2D& operator*=(double s);

  double max_abs() const noexcept;
  double sum_squares() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const Array2D&, const Array2D&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Array2D operator+(Array2D a, const Array2D& b);
Array2D operator-(Array2D a, const Array2D& b);
Array2D operator*(double s, Array2D a);

/// Elementwise product.
Array2D hadamard(const Array2D& a, const Array2D& b);

}  // namespace dsqg
