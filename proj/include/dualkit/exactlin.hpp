#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include "dualkit/json.hpp"
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualkit {

using Int = mpz_class;
using Rat = mpq_class;

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const T& s) const;
    Matrix transpose() const;
    Matrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// Nonnegative integer matrix; arithmetic closes under +, *, kronecker.
class NatMatrix : public IntMatrix {
public:
    NatMatrix() = default;
    NatMatrix(std::size_t rows, std::size_t cols) : IntMatrix(rows, cols) {}
    NatMatrix(std::initializer_list<std::initializer_list<Int>> init);
    explicit NatMatrix(IntMatrix m);  // throws std::invalid_argument on a negative entry

    static NatMatrix identity(std::size_t n) { return NatMatrix(IntMatrix::identity(n)); }

    NatMatrix operator*(const NatMatrix& o) const;
    NatMatrix operator+(const NatMatrix& o) const;
};

// Matrix over the prime field F_p, entries kept in [0, p).
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);
    FpMatrix(std::uint64_t p, std::initializer_list<std::initializer_list<std::int64_t>> init);
    static FpMatrix identity(std::uint64_t p, std::size_t n);
    static FpMatrix reduce(const IntMatrix& m, std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v);

    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix transpose() const;
    bool is_zero() const;

    // Reduced row echelon form and pivot columns.
    std::pair<FpMatrix, std::vector<std::size_t>> rref() const;
    std::size_t rank() const;
    // Rows spanning {v : v * this = 0}, in RREF order.
    FpMatrix left_kernel() const;
    // Some x with this * x = b, or throws NotInvertible when b is outside the image.
    FpMatrix solve_right(const FpMatrix& b) const;

private:
    std::uint64_t p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> data_;
};

bool is_prime(std::uint64_t n);
std::uint64_t fp_inverse(std::uint64_t a, std::uint64_t p);

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
NatMatrix kronecker(const NatMatrix& a, const NatMatrix& b);
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);

enum class PivotRule {
    MinAbs,        // smallest nonzero |entry|, row-major tie-break
    FirstNonzero,  // first nonzero entry in row-major order
};

struct SmithForm {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix D;  // rows x cols, diagonal
    IntMatrix V;  // cols x cols, unimodular
    std::vector<Int> diagonal() const;
    std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m, PivotRule rule = PivotRule::MinAbs);

struct CokernelDecomposition {
    std::vector<Int> torsion;  // invariant factors > 1
    std::size_t free_rank = 0;
    bool operator==(const CokernelDecomposition&) const = default;
};

CokernelDecomposition cokernel_decomposition(const IntMatrix& m, PivotRule rule = PivotRule::MinAbs);

Int determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

IntMatrix invert_or_fail(const IntMatrix& m);
FpMatrix invert_or_fail(const FpMatrix& m);
RatMatrix invert_or_fail(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

// JSON: {"scalar": "nat"|"int"|{"fp": p}, "rows": [[...], ...]}
json to_json(const IntMatrix& m);
json to_json(const NatMatrix& m);
json to_json(const FpMatrix& m);
json int_to_json(const Int& v);
Int int_from_json(const json& j);
IntMatrix int_matrix_from_json(const json& j);
NatMatrix nat_matrix_from_json(const json& j);
FpMatrix fp_matrix_from_json(const json& j, std::uint64_t p);
json rows_json(const IntMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const FpMatrix& m);

}  // namespace dualkit
