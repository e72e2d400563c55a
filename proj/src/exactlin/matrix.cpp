#include "dualkit/exactlin.hpp"

#include <sstream>

namespace dualkit {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        for (const auto& v : row) data_.push_back(v);
    }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const T& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum: shapes differ");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

template <class T>
Matrix<T> Matrix<T>::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference: shapes differ");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

template <class T>
Matrix<T> Matrix<T>::scaled(const T& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

template <class T>
Matrix<T> Matrix<T>::submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    Matrix r(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) r(i - r0, j - c0) = (*this)(i, j);
    return r;
}

template <class T>
bool Matrix<T>::is_zero() const {
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template class Matrix<Int>;
template class Matrix<Rat>;

NatMatrix::NatMatrix(std::initializer_list<std::initializer_list<Int>> init) : IntMatrix(init) {
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            if ((*this)(i, j) < 0) throw std::invalid_argument("negative entry in NatMatrix");
}

NatMatrix::NatMatrix(IntMatrix m) : IntMatrix(std::move(m)) {
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            if ((*this)(i, j) < 0) throw std::invalid_argument("negative entry in NatMatrix");
}

NatMatrix NatMatrix::operator*(const NatMatrix& o) const {
    return NatMatrix(static_cast<const IntMatrix&>(*this) * static_cast<const IntMatrix&>(o));
}

NatMatrix NatMatrix::operator+(const NatMatrix& o) const {
    return NatMatrix(static_cast<const IntMatrix&>(*this) + static_cast<const IntMatrix&>(o));
}

template <class T>
static Matrix<T> kron_impl(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) { return kron_impl(a, b); }
NatMatrix kronecker(const NatMatrix& a, const NatMatrix& b) {
    return NatMatrix(kron_impl<Int>(a, b));
}
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) { return kron_impl(a, b); }

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
    if (a.prime() != b.prime()) throw DimensionMismatch("kronecker over different primes");
    FpMatrix r(a.prime(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.set(i * b.rows() + k, j * b.cols() + l,
                          static_cast<std::int64_t>((a(i, j) * b(k, l)) % a.prime()));
    return r;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            a.swap_rows(piv, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return Int(det.get_num());
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

RatMatrix invert_or_fail(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) throw NotInvertible("singular rational matrix");
        a.swap_rows(piv, c);
        inv.swap_rows(piv, c);
        Rat s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(piv, r);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
    return json(v.get_str());
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

json rows_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const IntMatrix& m) { return json{{"scalar", "int"}, {"rows", rows_json(m)}}; }
json to_json(const NatMatrix& m) { return json{{"scalar", "nat"}, {"rows", rows_json(m)}}; }

json to_json(const FpMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return json{{"scalar", {{"fp", m.prime()}}}, {"rows", rows}};
}

static const json& rows_of(const json& j) {
    if (j.is_object()) return j.at("rows");
    return j;
}

IntMatrix int_matrix_from_json(const json& j) {
    const json& rows = rows_of(j);
    if (!rows.is_array()) throw std::invalid_argument("matrix must be an array of rows");
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = int_from_json(rows[i][k]);
    }
    return m;
}

NatMatrix nat_matrix_from_json(const json& j) { return NatMatrix(int_matrix_from_json(j)); }

FpMatrix fp_matrix_from_json(const json& j, std::uint64_t p) {
    IntMatrix m = int_matrix_from_json(j);
    return FpMatrix::reduce(m, p);
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

std::string to_string(const FpMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m(i, j);
        }
        os << ']';
    }
    os << "] mod " << m.prime();
    return os.str();
}

}  // namespace dualkit
