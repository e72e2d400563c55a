#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dualkit/idem.hpp"
#include "dualkit/models.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dualkit;
using namespace fixtures;

namespace {

SpanMorphism random_span(std::mt19937_64& rng, std::size_t a, std::size_t b) {
    return to_span(oracle::random_span(rng, a, b, 4));
}

EvConstObject ev(const char* text) { return EvConst::parse_object(text); }

// pr_k o m for every k determines m, and the biproduct equations hold
template <ModelCategory M>
void check_biproduct(const typename M::Object& x, const typename M::Object& y) {
    auto b = M::biproduct(x, y);
    CHECK(M::compose(b.pr1, b.in1) == M::identity(x));
    CHECK(M::compose(b.pr2, b.in2) == M::identity(y));
    CHECK(M::compose(b.pr1, b.in2) == M::zero_morphism(y, x));
    CHECK(M::compose(b.pr2, b.in1) == M::zero_morphism(x, y));
    CHECK(M::add(M::compose(b.in1, b.pr1), M::compose(b.in2, b.pr2)) == M::identity(b.object));
}

template <ModelCategory M>
typename M::Morphism loop_of(const typename M::Object& x) {
    auto dd = M::duality(x);
    return M::compose(dd.eps, M::compose(M::braiding_inverse(x, dd.dual), dd.eta));
}

}  // namespace

// ---------------------------------------------------------------- SpanFin

TEST_CASE("span composition") {
    auto swap = SpanFin::make(2, 2, NatMatrix{{0, 1}, {1, 0}});
    auto g = SpanFin::make(2, 2, NatMatrix{{1, 1}, {0, 1}});
    CHECK(SpanFin::compose(g, swap).matrix == NatMatrix{{1, 1}, {1, 0}});
    CHECK(SpanFin::compose(g, SpanFin::identity({2})) == g);
    CHECK_THROWS_AS(SpanFin::compose(g, SpanFin::identity({3})), DimensionMismatch);
    CHECK_THROWS_AS(SpanFin::make(2, 2, NatMatrix{{1}}), DimensionMismatch);
}

TEST_CASE("span composition counts the pullback") {
    std::mt19937_64 rng(idem::seed_from_env());
    std::uniform_int_distribution<std::size_t> size(0, 4);
    for (int k = 0; k < 200; ++k) {
        const std::size_t a = size(rng), b = size(rng), c = size(rng);
        auto f = oracle::random_span(rng, a, b, 4);
        auto g = oracle::random_span(rng, b, c, 4);
        CHECK(SpanFin::compose(to_span(g), to_span(f)) == to_span(oracle::pullback_compose(f, g)));
    }
}

TEST_CASE("span duality") {
    auto d1 = SpanFin::duality({1});
    CHECK(d1.eta.matrix == NatMatrix{{1}});
    CHECK(d1.eps.matrix == NatMatrix{{1}});
    CHECK(SpanFin::duality({2}).eta.matrix == NatMatrix{{1}, {0}, {0}, {1}});
    for (std::size_t n = 0; n <= 4; ++n) CHECK(idem::triangle_equations_hold<SpanFin>({n}, SpanFin::duality({n})));
    // the loop of a set counts its elements
    CHECK(loop_of<SpanFin>({3}) == SpanFin::scalar({1}, 3));
}

TEST_CASE("span cofibers of the handled shapes") {
    auto c01 = SpanFin::cofiber(span_from_shape("zero", {0, 1}));
    CHECK(c01.object == SpanObject{1});
    CHECK(SpanFin::cofiber(span_from_shape("backward", {2, 1})).object == SpanObject{0});
    CHECK(SpanFin::cofiber(span_from_shape("forward", {2, 1})).object == SpanObject{0});
    CHECK(SpanFin::cofiber(span_from_shape("identity", {3})).object == SpanObject{0});
    // a block sum: 0 -> 1 beside a fold 2 -> 1 beside the identity
    NatMatrix m{{0, 0, 0}, {1, 1, 0}, {0, 0, 1}};
    auto mixed = SpanFin::cofiber(SpanFin::make(3, 3, m));
    CHECK(mixed.object == SpanObject{1});
    CHECK(mixed.provenance.size() == 3);
    CHECK_THROWS_AS(SpanFin::cofiber(SpanFin::make(1, 1, NatMatrix{{2}})), UnsupportedShape);
    CHECK_THROWS_AS(SpanFin::cofiber(SpanFin::make(2, 2, NatMatrix{{1, 1}, {1, 1}})), UnsupportedShape);
    CHECK_THROWS_AS(span_from_shape("forward", {1, 0}), std::invalid_argument);
}

TEST_CASE("span cofiber quotients kill the map and are universal among the handled shapes") {
    std::vector<SpanMorphism> maps{span_from_shape("zero", {0, 2}), span_from_shape("forward", {3, 1}),
                                   span_from_shape("backward", {3, 2}), SpanFin::make(3, 3, NatMatrix{{0, 0, 0}, {1, 1, 0}, {0, 0, 1}})};
    for (const auto& f : maps) {
        auto cof = SpanFin::cofiber(f);
        CHECK(SpanFin::compose(cof.quotient, f) == SpanFin::zero_morphism(f.dom, cof.object));
        auto u = SpanFin::identity(cof.object);
        auto theta = SpanFin::compose(u, cof.quotient);
        CHECK(SpanFin::factor_through(cof.quotient, theta) == u);
    }
}

TEST_CASE("span suspension and anti-additivity") {
    CHECK(SpanFin::suspension({1}) == SpanObject{0});
    CHECK(SpanFin::suspension({0}) == SpanObject{0});
    // cofiber of 1 <- 2 vanishes
    CHECK(SpanFin::cofiber(span_from_shape("backward", {2, 1})).object.size == 0);
}

TEST_CASE("span morphism JSON") {
    auto f = span_morphism_from_json(json::parse(R"({"dom": 2, "cod": 1, "matrix": [[1, 1]]})"));
    CHECK(f == span_from_shape("forward", {2, 1}));
    CHECK(span_morphism_from_json(SpanFin::to_json(f)) == f);
    auto empty = span_morphism_from_json(json::parse(R"({"dom": 0, "cod": 2, "matrix": []})"));
    CHECK(empty.matrix.rows() == 2);
    CHECK_THROWS(span_morphism_from_json(json::parse(R"({"matrix": [[-1]]})")));
}

// ---------------------------------------------------------------- EvConst

TEST_CASE("evconst objects") {
    CHECK(EvConstObject(1, {{2, 1}}) == EvConstObject(1, {}));
    CHECK(ev("S/2") == EvConstObject(0, {{2, 1}}));
    CHECK(ev("S(6)") == EvConstObject(1, {{2, 0}, {3, 0}}));
    CHECK(ev("2*S/3+S") == EvConstObject(1, {{3, 3}}));
    CHECK(ev("0") == EvConst::zero_object());
    CHECK(ev(R"({"f": 1, "exc": {"5": 2}})") == EvConstObject(1, {{5, 2}}));
    CHECK(EvConst::object_from_json(EvConst::to_json(ev("S/2+S(3)"))) == ev("S/2+S(3)"));
    CHECK_THROWS(EvConstObject(0, {{4, 1}}));
    CHECK_THROWS(ev("T"));
}

TEST_CASE("evconst composition") {
    auto S = EvConst::unit();
    CHECK(EvConst::compose(EvConst::scalar(S, 2), EvConst::scalar(S, 3)) == EvConst::scalar(S, 6));

    auto S2 = ev("S/2");
    auto r = EvConst::make(S, S2, IntMatrix(0, 1), {{2, FpMatrix(2, {{1}})}});
    auto i = EvConst::make(S2, S, IntMatrix(1, 0), {{2, FpMatrix(2, {{1}})}});
    auto ir = EvConst::compose(i, r);
    CHECK(ir.free == IntMatrix{{0}});
    CHECK(ir.explicit_.size() == 1);
    CHECK(ir.explicit_.at(2) == FpMatrix(2, {{1}}));
    CHECK(EvConst::compose(r, i) == EvConst::identity(S2));

    auto X = EvConstObject(1, {{2, 2}});
    std::mt19937_64 rng(8);
    auto f = random_morphism(rng, X, X);
    CHECK(EvConst::compose(f, EvConst::identity(X)) == f);
    CHECK(EvConst::compose(EvConst::identity(X), f) == f);
    CHECK_THROWS_AS(EvConst::compose(r, r), DimensionMismatch);
}

TEST_CASE("evconst canonical morphisms drop redundant primes") {
    auto S = EvConst::unit();
    auto a = EvConst::make(S, S, IntMatrix{{7}}, {{5, FpMatrix(5, {{2}})}});
    CHECK(a.explicit_.empty());
    CHECK(a == EvConst::scalar(S, 7));
    auto b = EvConst::make(S, S, IntMatrix{{7}}, {{5, FpMatrix(5, {{1}})}});
    CHECK(b.explicit_.size() == 1);
    CHECK_FALSE(a == b);
    CHECK_THROWS(EvConst::make(S, ev("S/2"), IntMatrix(0, 0), {}));
}

TEST_CASE("evconst biproducts") {
    CHECK(EvConst::biproduct(ev("S/2"), ev("S(2)")).object == EvConst::unit());
    CHECK(EvConst::biproduct(ev("S/2+S"), EvConst::zero_object()).object == ev("S/2+S"));
    CHECK(EvConst::biproduct(ev("S(2)"), ev("S(3)")).object == EvConstObject(2, {{2, 1}, {3, 1}}));
}

TEST_CASE("evconst cofibers") {
    auto S = EvConst::unit();
    CHECK(EvConst::cofiber(EvConst::scalar(S, 6)).object == EvConstObject(0, {{2, 1}, {3, 1}}));
    for (const char* x : {"S", "S/2", "S/2+S(3)", "0"}) CHECK(EvConst::cofiber(EvConst::identity(ev(x))).object == EvConst::zero_object());
    auto S2 = EvConstObject(2, {});
    auto m = EvConst::make(S2, S2, IntMatrix{{2, 0}, {0, 0}}, {});
    CHECK(EvConst::cofiber(m).object == EvConstObject(1, {{2, 2}}));
}

TEST_CASE("evconst cofibers satisfy the universal property on small torsion objects") {
    std::mt19937_64 rng(idem::seed_from_env() + 1);
    int instances = 0;
    for (int k = 0; instances < 25 && k < 1000; ++k) {
        auto X = random_object(rng, 0, 1), Y = random_object(rng, 0, 2), Z = random_object(rng, 0, 1);
        auto phi = random_morphism(rng, X, Y);
        auto cof = EvConst::cofiber(phi);
        auto hy = EvConst::hom_size(Y, Z);
        if (!hy || *hy > 81) continue;
        ++instances;
        auto us = all_morphisms(cof.object, Z);
        for (const auto& theta : all_morphisms(Y, Z)) {
            const bool kills = EvConst::compose(theta, phi) == EvConst::zero_morphism(X, Z);
            int n = 0;
            for (const auto& u : us) n += EvConst::compose(u, cof.quotient) == theta;
            CHECK(n == (kills ? 1 : 0));
            if (!kills) CHECK_THROWS_AS(EvConst::factor_through(cof.quotient, theta), NotFactorizable);
        }
    }
    CHECK(instances == 25);
}

TEST_CASE("evconst duality") {
    auto S = EvConst::unit();
    auto dS = EvConst::duality(S);
    CHECK(dS.eta == EvConst::identity(S));
    CHECK(dS.eps == EvConst::identity(S));
    auto d2 = EvConst::duality(ev("S/2"));
    // S/2 ^ S/2 = S/2, so the pairing is a single 1 at p = 2
    CHECK(d2.eta.cod == ev("S/2"));
    CHECK(d2.eta.explicit_.at(2) == FpMatrix(2, {{1}}));
    CHECK(d2.eps.explicit_.at(2) == FpMatrix(2, {{1}}));
    auto d22 = EvConst::duality(ev("2*S/2"));
    CHECK(d22.eta.explicit_.at(2) == FpMatrix(2, {{1}, {0}, {0}, {1}}));
    CHECK(idem::triangle_equations_hold<EvConst>(EvConstObject(1, {{2, 2}}), EvConst::duality(EvConstObject(1, {{2, 2}}))));
    // closed under sums
    auto sum = EvConst::biproduct(ev("S/3"), ev("S(2)")).object;
    CHECK(idem::triangle_equations_hold<EvConst>(sum, EvConst::duality(sum)));
}

TEST_CASE("evconst suspension") {
    CHECK(EvConst::suspension(ev("S/2+S")) == EvConst::zero_object());
    CHECK(EvConst::cofiber(EvConst::zero_morphism(ev("S/2+S"), EvConst::zero_object())).object == EvConst::zero_object());
}

TEST_CASE("evconst hom-set sizes") {
    for (Prime p : {2, 3, 5, 7}) {
        auto Sp = EvConst::torsion(p);
        CHECK(EvConst::hom_size(Sp, Sp) == Int(static_cast<unsigned long>(p)));
        CHECK(all_morphisms(Sp, Sp).size() == p);
        for (Prime l : {2, 3, 5, 7})
            if (l != p) CHECK(EvConst::hom_size(Sp, EvConst::torsion(l)) == Int(1));
        // p | m: nothing nonzero
        CHECK(EvConst::hom_size(Sp, EvConst::local_away({p})) == Int(1));
        CHECK(EvConst::hom_size(EvConst::local_away({p}), Sp) == Int(1));
    }
    // p does not divide m: the S/p summand of S(m) contributes
    CHECK(EvConst::hom_size(EvConst::torsion(2), ev("S(3)")) == Int(2));
    CHECK_FALSE(EvConst::hom_size(EvConst::unit(), EvConst::unit()).has_value());
}

TEST_CASE("evconst inverses") {
    auto S = EvConst::unit();
    CHECK_FALSE(EvConst::inverse(EvConst::scalar(S, 2)).has_value());
    CHECK(EvConst::inverse(EvConst::scalar(S, -1)) == EvConst::scalar(S, -1));
    // 3 is a unit on S/2
    CHECK(EvConst::inverse(EvConst::scalar(ev("S/2"), 3)) == EvConst::identity(ev("S/2")));
    // 2 is a unit on S(2) only away from 2, and S(2) has free part Z
    CHECK_FALSE(EvConst::inverse(EvConst::scalar(ev("S(2)"), 2)).has_value());
}

TEST_CASE("evconst morphism JSON") {
    auto f = EvConst::morphism_from_json(json::parse(R"({"free": [[6]], "explicit": {}})"));
    CHECK(f == EvConst::scalar(EvConst::unit(), 6));
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        auto X = random_object(rng, 2, 2), Y = random_object(rng, 2, 2);
        auto g = random_morphism(rng, X, Y);
        CHECK(EvConst::morphism_from_json(EvConst::to_json(g)) == g);
    }
    CHECK_THROWS(EvConst::morphism_from_json(json::parse(R"({"free": [[1]], "explicit": {"4": [[1]]}})")));
}

// ---------------------------------------------------------------- laws, both models

TEST_CASE("category and monoidal laws in SpanFin") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> size(0, 3);
    for (int k = 0; k < 500; ++k) {
        SpanObject a{size(rng)}, b{size(rng)}, c{size(rng)}, d{size(rng)};
        auto f = random_span(rng, a.size, b.size), g = random_span(rng, b.size, c.size), h = random_span(rng, c.size, d.size);
        CHECK(SpanFin::compose(h, SpanFin::compose(g, f)) == SpanFin::compose(SpanFin::compose(h, g), f));
        CHECK(SpanFin::compose(f, SpanFin::identity(a)) == f);
        CHECK(SpanFin::compose(SpanFin::identity(b), f) == f);
        auto f2 = random_span(rng, c.size, d.size), g2 = random_span(rng, d.size, a.size);
        CHECK(SpanFin::compose(SpanFin::tensor(g, g2), SpanFin::tensor(f, f2)) ==
              SpanFin::tensor(SpanFin::compose(g, f), SpanFin::compose(g2, f2)));
        // naturality of the braiding
        CHECK(SpanFin::compose(SpanFin::braiding(b, d), SpanFin::tensor(f, f2)) ==
              SpanFin::compose(SpanFin::tensor(f2, f), SpanFin::braiding(a, c)));
        CHECK(SpanFin::compose(SpanFin::braiding_inverse(a, b), SpanFin::braiding(a, b)) == SpanFin::identity({a.size * b.size}));
    }
}

TEST_CASE("category and monoidal laws in EvConst") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 500; ++k) {
        auto a = random_object(rng, 2, 2), b = random_object(rng, 2, 2), c = random_object(rng, 2, 2), d = random_object(rng, 2, 2);
        auto f = random_morphism(rng, a, b), g = random_morphism(rng, b, c), h = random_morphism(rng, c, d);
        CHECK(EvConst::compose(h, EvConst::compose(g, f)) == EvConst::compose(EvConst::compose(h, g), f));
        CHECK(EvConst::compose(f, EvConst::identity(a)) == f);
        CHECK(EvConst::compose(EvConst::identity(b), f) == f);
        if (k % 5 == 0) {
            auto f2 = random_morphism(rng, c, d), g2 = random_morphism(rng, d, a);
            CHECK(EvConst::compose(EvConst::tensor(g, g2), EvConst::tensor(f, f2)) ==
                  EvConst::tensor(EvConst::compose(g, f), EvConst::compose(g2, f2)));
            CHECK(EvConst::compose(EvConst::braiding(b, d), EvConst::tensor(f, f2)) ==
                  EvConst::compose(EvConst::tensor(f2, f), EvConst::braiding(a, c)));
        }
    }
}

TEST_CASE("biproducts in both models") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 40; ++k) {
        check_biproduct<SpanFin>({rng() % 4}, {rng() % 4});
        check_biproduct<EvConst>(random_object(rng, 2, 2), random_object(rng, 2, 2));
    }
    // maps into a biproduct are determined by their components
    for (int k = 0; k < 40; ++k) {
        auto x = random_object(rng, 2, 2), y = random_object(rng, 2, 2), z = random_object(rng, 2, 2);
        auto b = EvConst::biproduct(x, y);
        auto f = random_morphism(rng, z, b.object);
        CHECK(EvConst::add(EvConst::compose(b.in1, EvConst::compose(b.pr1, f)),
                           EvConst::compose(b.in2, EvConst::compose(b.pr2, f))) == f);
    }
}

TEST_CASE("the zero object is self-dual") {
    CHECK(idem::triangle_equations_hold<SpanFin>(SpanFin::zero_object(), SpanFin::duality(SpanFin::zero_object())));
    CHECK(idem::triangle_equations_hold<EvConst>(EvConst::zero_object(), EvConst::duality(EvConst::zero_object())));
    CHECK(idem::triangle_equations_hold<EvConstSpan>(EvConstSpan::zero_object(), EvConstSpan::duality(EvConstSpan::zero_object())));
}

// ---------------------------------------------------------------- product

TEST_CASE("product model is componentwise") {
    using P = EvConstSpan;
    CHECK(P::unit() == P::Object{EvConst::unit(), SpanObject{1}});
    std::mt19937_64 rng(24);
    for (int k = 0; k < 30; ++k) {
        P::Object x{random_object(rng, 2, 1), {rng() % 3}}, y{random_object(rng, 2, 1), {rng() % 3}};
        auto b = P::biproduct(x, y);
        CHECK(b.object == P::Object{EvConst::biproduct(x.first, y.first).object, SpanFin::biproduct(x.second, y.second).object});
        CHECK(P::tensor(x, y) == P::Object{EvConst::tensor(x.first, y.first), SpanFin::tensor(x.second, y.second)});
        CHECK(idem::triangle_equations_hold<P>(x, P::duality(x)));
    }
    auto gp = idem::gp_idempotent<P>();
    CHECK(gp.E == P::Object{EvConst::unit(), SpanObject{0}});
    auto cof = P::cofiber(P::Morphism{EvConst::scalar(EvConst::unit(), 2), span_from_shape("zero", {0, 1})});
    CHECK(cof.object == P::Object{ev("S/2"), SpanObject{1}});
    // one tagged line per component rule
    CHECK(cof.provenance == std::vector<std::string>{"evconst:free: coker rank 0, invariant factors [2]",
                                                     "evconst:p=2: dim 1 - rank 0 = 1", "spanfin:forward 0->1 => 1"});
}
