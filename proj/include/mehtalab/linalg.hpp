#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace mehtalab {

// Small dense row-major matrix. Sizes here are desk scale (m <= 64), so no
// blocking or expression templates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const;
  std::vector<double> column(std::size_t j) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
double trace(const Matrix& a);
double max_asymmetry(const Matrix& a);

// Eigenpairs of a symmetric matrix, ascending; vectors are the columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

// Cyclic Jacobi rotations. Only the symmetric part of `a` is used.
SymmetricEigen symmetric_eigen(const Matrix& a);

// Lower Cholesky factor, or nullopt when a pivot is <= pivot_floor.
std::optional<Matrix> cholesky(const Matrix& a, double pivot_floor = 0.0);
// Solves (L L^T) X = B.
Matrix cholesky_solve(const Matrix& lower, const Matrix& b);

// LU with partial pivoting.
double determinant(const Matrix& a);
std::vector<double> solve(const Matrix& a, std::span<const double> b);

// Symmetric square root of a PSD matrix; eigenvalues in [-clip, 0) are
// treated as rounding and set to 0, anything below -clip throws.
Matrix psd_sqrt(const Matrix& a, double clip = 1e-10);

void to_json(nlohmann::json& j, const Matrix& m);

}  // namespace mehtalab
