#include "dualkit/exactlin.hpp"

namespace dualkit {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t fp_inverse(std::uint64_t a, std::uint64_t p) {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    if (base == 0) throw NotInvertible("zero has no inverse mod p");
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

static std::uint64_t mod_of(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

FpMatrix::FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!is_prime(p) || p >= (1ULL << 31)) throw std::invalid_argument("FpMatrix needs a prime below 2^31");
}

FpMatrix::FpMatrix(std::uint64_t p, std::initializer_list<std::initializer_list<std::int64_t>> init)
    : FpMatrix(p, init.size(), init.size() ? init.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& row : init) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        std::size_t j = 0;
        for (auto v : row) set(i, j++, v);
        ++i;
    }
}

FpMatrix FpMatrix::identity(std::uint64_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::reduce(const IntMatrix& m, std::uint64_t p) {
    FpMatrix r(p, m.rows(), m.cols());
    Int pp(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int v = m(i, j) % pp;
            if (v < 0) v += pp;
            r.data_[i * r.cols_ + j] = v.get_ui();
        }
    return r;
}

void FpMatrix::set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = mod_of(v, p_); }

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (p_ != o.p_) throw DimensionMismatch("product over different primes");
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    FpMatrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = (*this)(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.data_[i * r.cols_ + j] = (r.data_[i * r.cols_ + j] + a * o(k, j)) % p_;
        }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum: shapes differ");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = (data_[i] + o.data_[i]) % p_;
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference: shapes differ");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = (data_[i] + p_ - o.data_[i]) % p_;
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = (*this)(i, j);
    return r;
}

bool FpMatrix::is_zero() const {
    for (auto v : data_)
        if (v) return false;
    return true;
}

std::pair<FpMatrix, std::vector<std::size_t>> FpMatrix::rref() const {
    FpMatrix a = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && a(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(a.data_[piv * cols_ + j], a.data_[r * cols_ + j]);
        std::uint64_t inv = fp_inverse(a(r, c), p_);
        for (std::size_t j = 0; j < cols_; ++j) a.data_[r * cols_ + j] = a.data_[r * cols_ + j] * inv % p_;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            std::uint64_t f = a(i, c);
            if (!f) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                a.data_[i * cols_ + j] = (a.data_[i * cols_ + j] + (p_ - f) * a.data_[r * cols_ + j]) % p_;
        }
        pivots.push_back(c);
        ++r;
    }
    return {a, pivots};
}

std::size_t FpMatrix::rank() const { return rref().second.size(); }

FpMatrix FpMatrix::left_kernel() const {
    // v * A = 0  <=>  A^T v^T = 0; basis from the free columns of rref(A^T).
    FpMatrix at = transpose();
    auto [red, pivots] = at.rref();
    const std::size_t n = at.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    FpMatrix basis(p_, n - pivots.size(), n);
    std::size_t row = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis.set(row, f, 1);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            basis.data_[row * n + pivots[k]] = (p_ - red(k, f)) % p_;
        ++row;
    }
    return basis;
}

FpMatrix FpMatrix::solve_right(const FpMatrix& b) const {
    if (b.rows_ != rows_ || b.p_ != p_) throw DimensionMismatch("solve_right: shapes differ");
    FpMatrix aug(p_, rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.data_[i * aug.cols_ + j] = (*this)(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) aug.data_[i * aug.cols_ + cols_ + j] = b(i, j);
    }
    auto [red, pivots] = aug.rref();
    FpMatrix x(p_, cols_, b.cols_);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] >= cols_) throw NotInvertible("right-hand side outside the image");
        for (std::size_t j = 0; j < b.cols_; ++j) x.data_[pivots[k] * b.cols_ + j] = red(k, cols_ + j);
    }
    return x;
}

FpMatrix invert_or_fail(const FpMatrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("non-square matrix");
    if (m.rank() != m.rows()) throw NotInvertible("singular matrix over F_p");
    return m.solve_right(FpMatrix::identity(m.prime(), m.rows()));
}

}  // namespace dualkit
