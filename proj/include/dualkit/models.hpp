#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dualkit/exactlin.hpp"
#include "dualkit/json.hpp"

namespace dualkit {

struct UnsupportedShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFactorizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Prime = std::uint64_t;

template <class Obj, class Mor>
struct Biproduct {
    Obj object;
    Mor in1, in2, pr1, pr2;
};

template <class Obj, class Mor>
struct DualityData {
    Obj dual;
    Mor eta;  // S -> X^v (x) X
    Mor eps;  // X (x) X^v -> S
};

template <class Obj, class Mor>
struct CofiberResult {
    Obj object;
    Mor quotient;
    std::vector<std::string> provenance;
};

// One coordinate block of a hom-set, used to compare hom-sets by structure.
struct HomBlock {
    enum class Kind { Nat, Free, Fp } kind;
    Prime p = 0;  // Fp only
    std::size_t rank = 0;
    bool operator==(const HomBlock&) const = default;
};

// Coordinates of a morphism, one vector per block.
using HomCoords = std::vector<std::vector<Int>>;

// ---------------------------------------------------------------- SpanFin

struct SpanObject {
    std::size_t size = 0;
    bool operator==(const SpanObject&) const = default;
    auto operator<=>(const SpanObject&) const = default;
};

struct SpanMorphism {
    SpanObject dom, cod;
    NatMatrix matrix;  // cod.size x dom.size
    bool operator==(const SpanMorphism& o) const {
        return dom == o.dom && cod == o.cod && matrix == static_cast<const IntMatrix&>(o.matrix);
    }
};

// One block of a shape-classified span.
struct SpanBlock {
    enum class Kind { Identity, Forward, Backward, Unit, Counit } kind;
    std::vector<std::size_t> sources, targets;
};

struct SpanFin {
    using Object = SpanObject;
    using Morphism = SpanMorphism;
    static constexpr const char* name = "spanfin";
    static constexpr bool has_negation = false;

    static Object unit() { return {1}; }
    static Object zero_object() { return {0}; }
    static Object dom(const Morphism& f) { return f.dom; }
    static Object cod(const Morphism& f) { return f.cod; }

    static Morphism make(std::size_t dom, std::size_t cod, NatMatrix m);
    static Morphism identity(const Object& x);
    static Morphism compose(const Morphism& g, const Morphism& f);  // g o f
    static Object tensor(const Object& x, const Object& y);
    static Morphism tensor(const Morphism& f, const Morphism& g);
    static Morphism braiding(const Object& x, const Object& y);
    static Morphism braiding_inverse(const Object& x, const Object& y);  // Y(x)X -> X(x)Y
    static Biproduct<Object, Morphism> biproduct(const Object& x, const Object& y);
    static Morphism zero_morphism(const Object& x, const Object& y);
    static Morphism add(const Morphism& f, const Morphism& g);
    static Morphism subtract(const Morphism& f, const Morphism& g);  // throws if negative
    static Morphism scalar(const Object& x, const Int& n);
    static DualityData<Object, Morphism> duality(const Object& x);
    static CofiberResult<Object, Morphism> cofiber(const Morphism& f);
    static Morphism factor_through(const Morphism& q, const Morphism& theta);
    static std::optional<Morphism> inverse(const Morphism& f);
    static Object suspension(const Object& x);

    static std::vector<HomBlock> hom_blocks(const Object& x, const Object& y, const std::set<Prime>& ctx);
    static HomCoords coordinates(const Morphism& f, const std::set<Prime>& ctx);
    static Morphism basis_morphism(const Object& x, const Object& y, std::size_t block, std::size_t index,
                                   const std::set<Prime>& ctx);
    static std::set<Prime> relevant_primes(const Object&) { return {}; }

    static json to_json(const Object& x);
    static json to_json(const Morphism& f);
    static std::string describe(const Object& x);
};

// Decompose a span matrix into the shapes the cofiber table handles; throws UnsupportedShape.
std::vector<SpanBlock> classify_span(const SpanMorphism& f);
SpanMorphism span_from_shape(const std::string& shape, const std::vector<std::size_t>& sizes);
// {"dom": n, "cod": m, "matrix": rows}; dom/cod are optional when the matrix is nonempty
SpanMorphism span_morphism_from_json(const json& j);

// ---------------------------------------------------------------- EvConst

struct EvConstObject {
    std::size_t f = 0;                      // free rank
    std::map<Prime, std::size_t> exc;       // exceptional dimensions, canonical: no entry equals f

    EvConstObject() = default;
    EvConstObject(std::size_t free_rank, std::map<Prime, std::size_t> exceptional);
    std::size_t dim_at(Prime p) const;
    std::set<Prime> primes() const;
    bool is_torsion() const { return f == 0; }
    bool operator==(const EvConstObject&) const = default;
};

struct EvConstMorphism {
    EvConstObject dom, cod;
    IntMatrix free;                       // cod.f x dom.f
    std::map<Prime, FpMatrix> explicit_;  // cod.d_p x dom.d_p

    FpMatrix component(Prime p) const;
    bool operator==(const EvConstMorphism& o) const {
        return dom == o.dom && cod == o.cod && free == o.free && explicit_ == o.explicit_;
    }
};

struct EvConst {
    using Object = EvConstObject;
    using Morphism = EvConstMorphism;
    static constexpr const char* name = "evconst";
    static constexpr bool has_negation = true;

    static Object unit() { return Object(1, {}); }
    static Object zero_object() { return Object(0, {}); }
    static Object dom(const Morphism& f) { return f.dom; }
    static Object cod(const Morphism& f) { return f.cod; }

    // Validates shapes and canonicalizes.
    static Morphism make(Object dom, Object cod, IntMatrix free, std::map<Prime, FpMatrix> explicit_);
    static Morphism canonical(Morphism f);

    static Morphism identity(const Object& x);
    static Morphism compose(const Morphism& g, const Morphism& f);
    static Object tensor(const Object& x, const Object& y);
    static Morphism tensor(const Morphism& f, const Morphism& g);
    static Morphism braiding(const Object& x, const Object& y);
    static Morphism braiding_inverse(const Object& x, const Object& y);
    static Biproduct<Object, Morphism> biproduct(const Object& x, const Object& y);
    static Morphism zero_morphism(const Object& x, const Object& y);
    static Morphism add(const Morphism& f, const Morphism& g);
    static Morphism subtract(const Morphism& f, const Morphism& g);
    static Morphism scalar(const Object& x, const Int& n);
    static DualityData<Object, Morphism> duality(const Object& x);
    static CofiberResult<Object, Morphism> cofiber(const Morphism& f);
    static Morphism factor_through(const Morphism& q, const Morphism& theta);
    static std::optional<Morphism> inverse(const Morphism& f);
    static Object suspension(const Object&) { return zero_object(); }

    static std::vector<HomBlock> hom_blocks(const Object& x, const Object& y, const std::set<Prime>& ctx);
    static HomCoords coordinates(const Morphism& f, const std::set<Prime>& ctx);
    static Morphism basis_morphism(const Object& x, const Object& y, std::size_t block, std::size_t index,
                                   const std::set<Prime>& ctx);
    static std::set<Prime> relevant_primes(const Object& x) { return x.primes(); }

    // Finite hom-set size, or nullopt when a free part makes it infinite.
    static std::optional<Int> hom_size(const Object& x, const Object& y);

    static json to_json(const Object& x);
    static json to_json(const Morphism& f);
    static Object object_from_json(const json& j);
    static Morphism morphism_from_json(const json& j, const Object* dom = nullptr, const Object* cod = nullptr);
    static std::string describe(const Object& x);

    // S/p, S(m) and friends
    static Object torsion(Prime p, std::size_t d = 1) { return Object(0, {{p, d}}); }
    static Object local_away(std::vector<Prime> ps);  // f = 1, dimension 0 at each p
    static Object parse_object(const std::string& text);  // "S", "S/2", "S(6)", "S/2+S/3", "0"
};

std::vector<Prime> prime_factors(Int n);

// ---------------------------------------------------------------- product

template <class A, class B>
struct ProductModel {
    using Object = std::pair<typename A::Object, typename B::Object>;
    using Morphism = std::pair<typename A::Morphism, typename B::Morphism>;
    static constexpr const char* name = "product";
    static constexpr bool has_negation = false;

    static Object unit() { return {A::unit(), B::unit()}; }
    static Object zero_object() { return {A::zero_object(), B::zero_object()}; }
    static Object dom(const Morphism& f) { return {A::dom(f.first), B::dom(f.second)}; }
    static Object cod(const Morphism& f) { return {A::cod(f.first), B::cod(f.second)}; }
    static Morphism identity(const Object& x) { return {A::identity(x.first), B::identity(x.second)}; }
    static Morphism compose(const Morphism& g, const Morphism& f) {
        return {A::compose(g.first, f.first), B::compose(g.second, f.second)};
    }
    static Object tensor(const Object& x, const Object& y) {
        return {A::tensor(x.first, y.first), B::tensor(x.second, y.second)};
    }
    static Morphism tensor(const Morphism& f, const Morphism& g) {
        return {A::tensor(f.first, g.first), B::tensor(f.second, g.second)};
    }
    static Morphism braiding(const Object& x, const Object& y) {
        return {A::braiding(x.first, y.first), B::braiding(x.second, y.second)};
    }
    static Morphism braiding_inverse(const Object& x, const Object& y) {
        return {A::braiding_inverse(x.first, y.first), B::braiding_inverse(x.second, y.second)};
    }
    static Biproduct<Object, Morphism> biproduct(const Object& x, const Object& y) {
        auto a = A::biproduct(x.first, y.first);
        auto b = B::biproduct(x.second, y.second);
        return {{a.object, b.object}, {a.in1, b.in1}, {a.in2, b.in2}, {a.pr1, b.pr1}, {a.pr2, b.pr2}};
    }
    static Morphism zero_morphism(const Object& x, const Object& y) {
        return {A::zero_morphism(x.first, y.first), B::zero_morphism(x.second, y.second)};
    }
    static Morphism add(const Morphism& f, const Morphism& g) {
        return {A::add(f.first, g.first), B::add(f.second, g.second)};
    }
    static Morphism subtract(const Morphism& f, const Morphism& g) {
        return {A::subtract(f.first, g.first), B::subtract(f.second, g.second)};
    }
    static Morphism scalar(const Object& x, const Int& n) { return {A::scalar(x.first, n), B::scalar(x.second, n)}; }
    static DualityData<Object, Morphism> duality(const Object& x) {
        auto a = A::duality(x.first);
        auto b = B::duality(x.second);
        return {{a.dual, b.dual}, {a.eta, b.eta}, {a.eps, b.eps}};
    }
    static CofiberResult<Object, Morphism> cofiber(const Morphism& f) {
        auto a = A::cofiber(f.first);
        auto b = B::cofiber(f.second);
        std::vector<std::string> prov;
        for (auto& s : a.provenance) prov.push_back(std::string(A::name) + ":" + s);
        for (auto& s : b.provenance) prov.push_back(std::string(B::name) + ":" + s);
        return {{a.object, b.object}, {a.quotient, b.quotient}, prov};
    }
    static Morphism factor_through(const Morphism& q, const Morphism& theta) {
        return {A::factor_through(q.first, theta.first), B::factor_through(q.second, theta.second)};
    }
    static std::optional<Morphism> inverse(const Morphism& f) {
        auto a = A::inverse(f.first);
        auto b = B::inverse(f.second);
        if (!a || !b) return std::nullopt;
        return Morphism{*a, *b};
    }
    static Object suspension(const Object& x) { return {A::suspension(x.first), B::suspension(x.second)}; }

    static std::vector<HomBlock> hom_blocks(const Object& x, const Object& y, const std::set<Prime>& ctx) {
        auto a = A::hom_blocks(x.first, y.first, ctx);
        auto b = B::hom_blocks(x.second, y.second, ctx);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    static HomCoords coordinates(const Morphism& f, const std::set<Prime>& ctx) {
        auto a = A::coordinates(f.first, ctx);
        auto b = B::coordinates(f.second, ctx);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    static Morphism basis_morphism(const Object& x, const Object& y, std::size_t block, std::size_t index,
                                   const std::set<Prime>& ctx) {
        std::size_t na = A::hom_blocks(x.first, y.first, ctx).size();
        if (block < na)
            return {A::basis_morphism(x.first, y.first, block, index, ctx), B::zero_morphism(x.second, y.second)};
        return {A::zero_morphism(x.first, y.first), B::basis_morphism(x.second, y.second, block - na, index, ctx)};
    }
    static std::set<Prime> relevant_primes(const Object& x) {
        auto a = A::relevant_primes(x.first);
        auto b = B::relevant_primes(x.second);
        a.insert(b.begin(), b.end());
        return a;
    }
    static json to_json(const Object& x) { return json::array({A::to_json(x.first), B::to_json(x.second)}); }
    static json to_json(const Morphism& f) { return json::array({A::to_json(f.first), B::to_json(f.second)}); }
    static std::string describe(const Object& x) {
        return "(" + A::describe(x.first) + ", " + B::describe(x.second) + ")";
    }
};

using EvConstSpan = ProductModel<EvConst, SpanFin>;

template <class M>
concept ModelCategory = requires(const typename M::Object& x, const typename M::Morphism& f, const Int& n,
                                 const std::set<Prime>& ctx) {
    { M::unit() } -> std::same_as<typename M::Object>;
    { M::zero_object() } -> std::same_as<typename M::Object>;
    { M::identity(x) } -> std::same_as<typename M::Morphism>;
    { M::compose(f, f) } -> std::same_as<typename M::Morphism>;
    { M::tensor(x, x) } -> std::same_as<typename M::Object>;
    { M::tensor(f, f) } -> std::same_as<typename M::Morphism>;
    { M::braiding(x, x) } -> std::same_as<typename M::Morphism>;
    { M::braiding_inverse(x, x) } -> std::same_as<typename M::Morphism>;
    M::biproduct(x, x);
    M::duality(x);
    M::cofiber(f);
    { M::zero_morphism(x, x) } -> std::same_as<typename M::Morphism>;
    { M::add(f, f) } -> std::same_as<typename M::Morphism>;
    { M::subtract(f, f) } -> std::same_as<typename M::Morphism>;
    { M::scalar(x, n) } -> std::same_as<typename M::Morphism>;
    { M::factor_through(f, f) } -> std::same_as<typename M::Morphism>;
    { M::inverse(f) } -> std::same_as<std::optional<typename M::Morphism>>;
    { M::suspension(x) } -> std::same_as<typename M::Object>;
    { M::dom(f) } -> std::same_as<typename M::Object>;
    { M::cod(f) } -> std::same_as<typename M::Object>;
    { M::hom_blocks(x, x, ctx) } -> std::same_as<std::vector<HomBlock>>;
    { M::coordinates(f, ctx) } -> std::same_as<HomCoords>;
};

static_assert(ModelCategory<SpanFin>);
static_assert(ModelCategory<EvConst>);
static_assert(ModelCategory<EvConstSpan>);

}  // namespace dualkit
