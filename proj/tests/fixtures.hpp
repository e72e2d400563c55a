#pragma once
// Random and exhaustive samplers over the library's model types, shared by the test binaries.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "dualkit/models.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace dualkit;

inline SpanMorphism to_span(const oracle::ExplicitSpan& s) {
    auto counts = oracle::span_counts(s);
    NatMatrix m(s.b, s.a);
    for (std::size_t j = 0; j < s.b; ++j)
        for (std::size_t i = 0; i < s.a; ++i) m(j, i) = counts[j][i];
    return SpanFin::make(s.a, s.b, m);
}

inline const std::vector<Prime> small_primes{2, 3, 5};

inline EvConstObject random_object(std::mt19937_64& rng, std::size_t max_f, std::size_t max_d) {
    std::size_t f = std::uniform_int_distribution<std::size_t>(0, max_f)(rng);
    std::map<Prime, std::size_t> exc;
    for (Prime p : small_primes)
        if (rng() % 2) exc[p] = std::uniform_int_distribution<std::size_t>(0, max_d)(rng);
    return EvConstObject(f, exc);
}

inline FpMatrix random_fp(std::mt19937_64& rng, Prime p, std::size_t r, std::size_t c) {
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % p));
    return m;
}

inline EvConstMorphism random_morphism(std::mt19937_64& rng, const EvConstObject& X, const EvConstObject& Y) {
    IntMatrix free(Y.f, X.f);
    std::uniform_int_distribution<int> entry(-10, 10);
    for (std::size_t i = 0; i < Y.f; ++i)
        for (std::size_t j = 0; j < X.f; ++j) free(i, j) = entry(rng);
    std::map<Prime, FpMatrix> ex;
    for (Prime p : small_primes)
        if (X.exc.count(p) || Y.exc.count(p) || rng() % 3 == 0)
            ex.emplace(p, random_fp(rng, p, Y.dim_at(p), X.dim_at(p)));
    return EvConst::make(X, Y, free, ex);
}

// every morphism between two torsion objects
inline std::vector<EvConstMorphism> all_morphisms(const EvConstObject& X, const EvConstObject& Y) {
    std::set<Prime> ps = X.primes();
    for (Prime p : Y.primes()) ps.insert(p);
    std::vector<std::map<Prime, FpMatrix>> acc{{}};
    for (Prime p : ps) {
        const std::size_t r = Y.dim_at(p), c = X.dim_at(p), n = r * c;
        std::size_t total = 1;
        for (std::size_t k = 0; k < n; ++k) total *= p;
        std::vector<std::map<Prime, FpMatrix>> next;
        for (const auto& partial : acc)
            for (std::size_t code = 0; code < total; ++code) {
                FpMatrix m(p, r, c);
                std::size_t v = code;
                for (std::size_t k = 0; k < n; ++k) {
                    m.set(k / c, k % c, static_cast<std::int64_t>(v % p));
                    v /= p;
                }
                auto e = partial;
                e.emplace(p, m);
                next.push_back(std::move(e));
            }
        acc = std::move(next);
    }
    std::vector<EvConstMorphism> out;
    for (auto& e : acc) out.push_back(EvConst::make(X, Y, IntMatrix(0, 0), e));
    return out;
}

}  // namespace fixtures
