#pragma once
// Reference computations used only by tests. Deliberately naive and independent
// of the library's algorithms.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

// An explicit span A <- P -> B of finite sets given by its two legs.
struct ExplicitSpan {
    std::size_t a, b;
    std::vector<std::size_t> left, right;  // P -> A, P -> B
};

inline ExplicitSpan random_span(std::mt19937_64& rng, std::size_t a, std::size_t b, std::size_t max_apex) {
    ExplicitSpan s{a, b, {}, {}};
    if (a == 0 || b == 0) return s;
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_apex)(rng);
    for (std::size_t k = 0; k < n; ++k) {
        s.left.push_back(std::uniform_int_distribution<std::size_t>(0, a - 1)(rng));
        s.right.push_back(std::uniform_int_distribution<std::size_t>(0, b - 1)(rng));
    }
    return s;
}

// counts[j][i] = #{p : left(p) = i, right(p) = j}
inline std::vector<std::vector<long>> span_counts(const ExplicitSpan& s) {
    std::vector<std::vector<long>> m(s.b, std::vector<long>(s.a, 0));
    for (std::size_t p = 0; p < s.left.size(); ++p) ++m[s.right[p]][s.left[p]];
    return m;
}

// Composite g o f computed by forming the pullback P xB Q element by element.
inline ExplicitSpan pullback_compose(const ExplicitSpan& f, const ExplicitSpan& g) {
    ExplicitSpan out{f.a, g.b, {}, {}};
    for (std::size_t p = 0; p < f.left.size(); ++p)
        for (std::size_t q = 0; q < g.left.size(); ++q)
            if (f.right[p] == g.left[q]) {
                out.left.push_back(f.left[p]);
                out.right.push_back(g.right[q]);
            }
    return out;
}

// ---------------------------------------------------------------- integer matrices

using Mat = std::vector<std::vector<mpz_class>>;

// Determinant by cofactor expansion (inputs are at most 4x4).
inline mpz_class det(const Mat& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    mpz_class acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Mat minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(row);
        }
        mpz_class term = m[0][j] * det(minor);
        acc += (j % 2 == 0) ? term : mpz_class(-term);
    }
    return acc;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
inline std::vector<mpz_class> invariant_factors(const Mat& m, std::size_t rows, std::size_t cols) {
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        mpz_class g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat sub(k, std::vector<mpz_class>(k));
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[r[a]][c[b]];
                mpz_class d = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

inline std::vector<std::uint64_t> prime_divisors(mpz_class n) {
    std::vector<std::uint64_t> out;
    if (n < 0) n = -n;
    for (std::uint64_t p = 2; n > 1 && mpz_class(p) * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n.get_ui());
    return out;
}

// Rank over F_p by plain elimination.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    for (auto& row : m)
        for (auto& v : row) v = ((v % p) + p) % p;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::int64_t inv = 1;
        for (std::int64_t k = 1; k < p; ++k)
            if (m[r][c] * k % p == 1) inv = k;
        for (auto& v : m[r]) v = v * inv % p;
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c] != 0) {
                const std::int64_t f = m[i][c];
                for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
            }
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------- rationals

inline std::size_t rank_q(std::vector<std::vector<mpq_class>> m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c] != 0) {
                mpq_class f = m[i][c] / m[r][c];
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
            }
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------- groups

using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

inline Perm inverse(const Perm& a) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
    return c;
}

// All elements by breadth-first closure under the generators.
inline std::vector<Perm> closure(std::size_t degree, const std::vector<Perm>& gens) {
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0u);
    std::set<Perm> seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Perm y = compose(g, x);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// Subgroups by testing every subset for closure; returns conjugacy classes as sets of subgroups.
inline std::vector<std::set<std::set<Perm>>> subgroup_classes_by_power_set(const std::vector<Perm>& elems) {
    const std::size_t n = elems.size();
    std::vector<std::set<Perm>> subgroups;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::set<Perm> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.insert(elems[i]);
        bool closed = true;
        for (const auto& a : s) {
            for (const auto& b : s)
                if (!s.count(compose(a, inverse(b)))) {
                    closed = false;
                    break;
                }
            if (!closed) break;
        }
        if (closed) subgroups.push_back(s);
    }
    std::vector<std::set<std::set<Perm>>> classes;
    std::set<std::set<Perm>> placed;
    for (const auto& h : subgroups) {
        if (placed.count(h)) continue;
        std::set<std::set<Perm>> cls;
        for (const auto& g : elems) {
            std::set<Perm> c;
            for (const auto& x : h) c.insert(compose(compose(g, x), inverse(g)));
            cls.insert(c);
        }
        for (const auto& c : cls) placed.insert(c);
        classes.push_back(cls);
    }
    return classes;
}

}  // namespace oracle
