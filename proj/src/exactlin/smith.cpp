#include <algorithm>
#include <optional>

#include "dualkit/exactlin.hpp"

namespace dualkit {

namespace {

struct Reducer {
    IntMatrix A, U, V;

    // row dst += q * row src (A and U)
    void add_row(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t j = 0; j < A.cols(); ++j) A(dst, j) += q * A(src, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(dst, j) += q * U(src, j);
    }
    // col dst += q * col src (A and V)
    void add_col(std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t i = 0; i < A.rows(); ++i) A(i, dst) += q * A(i, src);
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, dst) += q * V(i, src);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        A.swap_rows(a, b);
        U.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        A.swap_cols(a, b);
        V.swap_cols(a, b);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) = -A(r, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
    }
};

std::optional<std::pair<std::size_t, std::size_t>> pick_pivot(const IntMatrix& a, std::size_t t, PivotRule rule) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            if (rule == PivotRule::FirstNonzero) return std::make_pair(i, j);
            Int v = abs(a(i, j));
            if (!best || v < best_abs) {
                best = std::make_pair(i, j);
                best_abs = v;
            }
        }
    return best;
}

// Smallest nonzero entry in row t / column t (from t on), moved to (t, t).
void repivot_cross(Reducer& r, std::size_t t) {
    std::size_t bi = t, bj = t;
    Int best = abs(r.A(t, t));
    for (std::size_t i = t + 1; i < r.A.rows(); ++i)
        if (r.A(i, t) != 0 && (best == 0 || abs(r.A(i, t)) < best)) {
            best = abs(r.A(i, t));
            bi = i;
            bj = t;
        }
    for (std::size_t j = t + 1; j < r.A.cols(); ++j)
        if (r.A(t, j) != 0 && (best == 0 || abs(r.A(t, j)) < best)) {
            best = abs(r.A(t, j));
            bi = t;
            bj = j;
        }
    r.swap_rows(t, bi);
    r.swap_cols(t, bj);
}

}  // namespace

std::vector<Int> SmithForm::diagonal() const {
    std::vector<Int> d;
    for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k) d.push_back(D(k, k));
    return d;
}

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& v : diagonal())
        if (v != 0) ++r;
    return r;
}

SmithForm smith_normal_form(const IntMatrix& m, PivotRule rule) {
    Reducer r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t) {
        auto pos = pick_pivot(r.A, t, rule);
        if (!pos) break;
        r.swap_rows(t, pos->first);
        r.swap_cols(t, pos->second);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r.A.rows(); ++i) {
                if (r.A(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), r.A(i, t).get_mpz_t(), r.A(t, t).get_mpz_t());
                r.add_row(i, t, -q);
                if (r.A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < r.A.cols(); ++j) {
                if (r.A(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), r.A(t, j).get_mpz_t(), r.A(t, t).get_mpz_t());
                r.add_col(j, t, -q);
                if (r.A(t, j) != 0) clean = false;
            }
            if (!clean) {
                repivot_cross(r, t);
                continue;
            }
            // divisibility: fold an offending row into row t and keep reducing
            bool folded = false;
            for (std::size_t i = t + 1; i < r.A.rows() && !folded; ++i)
                for (std::size_t j = t + 1; j < r.A.cols(); ++j)
                    if (r.A(i, j) % r.A(t, t) != 0) {
                        r.add_row(t, i, 1);
                        folded = true;
                        break;
                    }
            if (!folded) break;
        }
        if (r.A(t, t) < 0) r.negate_row(t);
    }
    return SmithForm{std::move(r.U), std::move(r.A), std::move(r.V)};
}

CokernelDecomposition cokernel_decomposition(const IntMatrix& m, PivotRule rule) {
    SmithForm s = smith_normal_form(m, rule);
    CokernelDecomposition c;
    std::size_t nonzero = 0;
    for (const auto& d : s.diagonal()) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) c.torsion.push_back(d);
    }
    c.free_rank = m.rows() - nonzero;
    return c;
}

IntMatrix invert_or_fail(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("non-square matrix");
    SmithForm s = smith_normal_form(m);
    for (const auto& d : s.diagonal())
        if (d != 1) throw NotInvertible("integer matrix is not unimodular");
    // U m V = I  =>  m^{-1} = V U
    return s.V * s.U;
}

}  // namespace dualkit
