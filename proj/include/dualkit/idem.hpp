#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dualkit/models.hpp"

namespace dualkit::idem {

struct NotTwistedTrivial : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string check;
    bool verdict = false;
    json witnesses = json::array();
    json to_json() const;
};

template <ModelCategory M>
struct ClosedIdempotent {
    typename M::Object E;
    typename M::Morphism r;
};

template <ModelCategory M>
struct ClopenIdempotent {
    typename M::Object E;
    typename M::Morphism r, i;
};

template <ModelCategory M>
struct Complement {
    typename M::Object C;
    typename M::Morphism r, i;  // clopen data for C
    std::vector<std::string> provenance;
};

template <ModelCategory M>
bool is_closed_idempotent(const typename M::Object& E, const typename M::Morphism& r) {
    if (!(M::dom(r) == M::unit()) || !(M::cod(r) == E)) return false;
    return M::inverse(M::tensor(r, M::identity(E))).has_value();
}

template <ModelCategory M>
bool is_open_idempotent(const typename M::Object& E, const typename M::Morphism& i) {
    if (!(M::dom(i) == E) || !(M::cod(i) == M::unit())) return false;
    return M::inverse(M::tensor(M::identity(E), i)).has_value();
}

// splitting r i = id_E and stability (i r) ^ id_E = id_E
template <ModelCategory M>
bool is_clopen(const typename M::Object& E, const typename M::Morphism& r, const typename M::Morphism& i) {
    if (!(M::dom(r) == M::unit()) || !(M::cod(r) == E) || !(M::dom(i) == E) || !(M::cod(i) == M::unit()))
        return false;
    if (!(M::compose(r, i) == M::identity(E))) return false;
    return M::tensor(M::compose(i, r), M::identity(E)) == M::identity(E);
}

template <ModelCategory M>
bool has_trivial_braiding(const typename M::Object& E) {
    return M::braiding(E, E) == M::identity(M::tensor(E, E));
}

// E ^ E ^ X ~ E ^ X through r ^ id
template <ModelCategory M>
bool localizes(const typename M::Object& E, const typename M::Morphism& r, const typename M::Object& X) {
    auto ex = M::tensor(E, X);
    return M::inverse(M::tensor(r, M::identity(ex))).has_value();
}

template <ModelCategory M>
bool triangle_equations_hold(const typename M::Object& X, const DualityData<typename M::Object, typename M::Morphism>& dd) {
    const auto idx = M::identity(X), idd = M::identity(dd.dual);
    // X -> X X^v X -> X
    auto left = M::compose(M::tensor(dd.eps, idx), M::tensor(idx, dd.eta));
    // X^v -> X^v X X^v -> X^v
    auto right = M::compose(M::tensor(idd, dd.eps), M::tensor(dd.eta, idd));
    return left == idx && right == idd;
}

// t = id_T ^ (eps o beta^{-1}_{T,T^v} o eta)
template <ModelCategory M>
typename M::Morphism euler_twist(const typename M::Object& T,
                                 const DualityData<typename M::Object, typename M::Morphism>& dd) {
    auto loop = M::compose(dd.eps, M::compose(M::braiding_inverse(T, dd.dual), dd.eta));
    return M::tensor(M::identity(T), loop);
}

template <ModelCategory M>
bool twisted_trivial(const typename M::Object& T, const typename M::Morphism& t) {
    return M::braiding(T, T) == M::tensor(M::identity(T), t);
}

// Clopen structure on T^v ^ T: r = (id ^ t) eta, i = eps beta_{T^v,T}.
template <ModelCategory M>
ClopenIdempotent<M> untwist(const typename M::Object& T,
                            const DualityData<typename M::Object, typename M::Morphism>& dd,
                            const typename M::Morphism& t) {
    if (!twisted_trivial<M>(T, t)) throw NotTwistedTrivial("braiding on T^T is not id ^ t");
    auto r = M::compose(M::tensor(M::identity(dd.dual), t), dd.eta);
    auto i = M::compose(dd.eps, M::braiding(dd.dual, T));
    return {M::tensor(dd.dual, T), r, i};
}

// Open structure built from a closed structure on a dualizable E.
template <ModelCategory M>
typename M::Morphism derived_open(const typename M::Object& E, const typename M::Morphism& r) {
    auto dd = M::duality(E);
    const auto ide = M::identity(E), idd = M::identity(dd.dual);
    auto c_inv = M::inverse(M::tensor(r, ide));
    if (!c_inv) throw NotInvertible("r ^ id_E is not invertible");
    auto step1 = M::tensor(ide, dd.eta);                       // E -> E E^v E
    auto step2 = M::tensor(ide, M::braiding(dd.dual, E));      // -> E E E^v
    auto step3 = M::tensor(*c_inv, idd);                       // -> E E^v
    return M::compose(dd.eps, M::compose(step3, M::compose(step2, step1)));
}

// i' = i (id ^ r)^{-1} (id ^ i)^{-1}
template <ModelCategory M>
typename M::Morphism compatible_open(const typename M::Object& E, const typename M::Morphism& r,
                                     const typename M::Morphism& i) {
    const auto ide = M::identity(E);
    auto a = M::inverse(M::tensor(ide, r));
    auto b = M::inverse(M::tensor(ide, i));
    if (!a || !b) throw NotInvertible("closed/open structure maps are not invertible");
    return M::compose(i, M::compose(*a, *b));
}

template <ModelCategory M>
ClopenIdempotent<M> clopen_from_closed(const typename M::Object& E, const typename M::Morphism& r) {
    return {E, r, compatible_open<M>(E, r, derived_open<M>(E, r))};
}

// Complement as cofiber(i); its open map factors id - i r through the quotient.
template <ModelCategory M>
Complement<M> complement_of_retract(const typename M::Object& E, const typename M::Morphism& r,
                                    const typename M::Morphism& i) {
    (void)E;
    auto cof = M::cofiber(i);
    auto ids = M::identity(M::unit());
    auto iC = M::factor_through(cof.quotient, M::subtract(ids, M::compose(i, r)));
    return {cof.object, cof.quotient, iC, cof.provenance};
}

// S_gp = cofiber of the diagonal, r = q o in1.
template <ModelCategory M>
ClosedIdempotent<M> gp_idempotent() {
    auto S = M::unit();
    auto bp = M::biproduct(S, S);
    auto diag = M::add(bp.in1, bp.in2);
    auto cof = M::cofiber(diag);
    return {cof.object, M::compose(cof.quotient, bp.in1)};
}

namespace detail {

struct BlockKey {
    HomBlock::Kind kind;
    Prime p;
    auto operator<=>(const BlockKey&) const = default;
};

inline std::vector<BlockKey> coordinate_keys(const std::vector<HomBlock>& blocks) {
    std::vector<BlockKey> keys;
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < b.rank; ++k) keys.push_back({b.kind, b.p});
    return keys;
}

inline std::vector<Int> flatten(const HomCoords& c) {
    std::vector<Int> v;
    for (const auto& blk : c) v.insert(v.end(), blk.begin(), blk.end());
    return v;
}

}  // namespace detail

// Is f -> (id_E ^ f, id_C ^ f) a bijection Hom(X,Y) -> Hom(EX,EY) x Hom(CX,CY)?
// The map is block-triangular in coordinates: free coordinates may leak into F_p
// coordinates, nothing else may mix.
template <ModelCategory M>
bool hom_split_bijective(const typename M::Object& E, const typename M::Object& C, const typename M::Object& X,
                         const typename M::Object& Y, const std::set<Prime>& ctx, json* witness = nullptr) {
    auto EX = M::tensor(E, X), EY = M::tensor(E, Y), CX = M::tensor(C, X), CY = M::tensor(C, Y);
    auto src_blocks = M::hom_blocks(X, Y, ctx);
    auto tgt_blocks = M::hom_blocks(EX, EY, ctx);
    auto tc = M::hom_blocks(CX, CY, ctx);
    tgt_blocks.insert(tgt_blocks.end(), tc.begin(), tc.end());
    auto src_keys = detail::coordinate_keys(src_blocks);
    auto tgt_keys = detail::coordinate_keys(tgt_blocks);

    // columns: images of basis morphisms
    std::vector<std::vector<Int>> cols;
    for (std::size_t b = 0; b < src_blocks.size(); ++b)
        for (std::size_t k = 0; k < src_blocks[b].rank; ++k) {
            auto f = M::basis_morphism(X, Y, b, k, ctx);
            auto img = detail::flatten(M::coordinates(M::tensor(M::identity(E), f), ctx));
            auto img2 = detail::flatten(M::coordinates(M::tensor(M::identity(C), f), ctx));
            img.insert(img.end(), img2.begin(), img2.end());
            cols.push_back(std::move(img));
        }

    std::set<detail::BlockKey> keys(src_keys.begin(), src_keys.end());
    keys.insert(tgt_keys.begin(), tgt_keys.end());
    bool ok = true;
    std::string reason;
    for (const auto& key : keys) {
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 0; i < tgt_keys.size(); ++i)
            if (tgt_keys[i] == key) rs.push_back(i);
        for (std::size_t j = 0; j < src_keys.size(); ++j)
            if (src_keys[j] == key) cs.push_back(j);
        // no leakage from this source key into a different target key, except free -> F_p
        for (std::size_t j : cs)
            for (std::size_t i = 0; i < tgt_keys.size(); ++i) {
                if (tgt_keys[i] == key) continue;
                if (key.kind == HomBlock::Kind::Free && tgt_keys[i].kind == HomBlock::Kind::Fp) continue;
                if (cols[j][i] != 0) {
                    ok = false;
                    reason = "coordinates mix across blocks";
                }
            }
        if (rs.size() != cs.size()) {
            ok = false;
            reason = "block ranks differ";
            continue;
        }
        if (rs.empty()) continue;
        IntMatrix sub(rs.size(), cs.size());
        for (std::size_t a = 0; a < rs.size(); ++a)
            for (std::size_t b = 0; b < cs.size(); ++b) sub(a, b) = cols[cs[b]][rs[a]];
        switch (key.kind) {
            case HomBlock::Kind::Free:
                if (!is_unimodular(sub)) ok = false, reason = "free block is not unimodular";
                break;
            case HomBlock::Kind::Fp:
                if (FpMatrix::reduce(sub, key.p).rank() != rs.size()) ok = false, reason = "F_p block is singular";
                break;
            case HomBlock::Kind::Nat: {
                // monoid isomorphisms of N^k are permutation matrices
                std::vector<int> rowc(rs.size()), colc(cs.size());
                for (std::size_t a = 0; a < rs.size(); ++a)
                    for (std::size_t b = 0; b < cs.size(); ++b) {
                        if (sub(a, b) == 0) continue;
                        if (sub(a, b) != 1) ok = false;
                        ++rowc[a];
                        ++colc[b];
                    }
                for (int v : rowc)
                    if (v != 1) ok = false;
                for (int v : colc)
                    if (v != 1) ok = false;
                if (!ok && reason.empty()) reason = "N block is not a permutation";
                break;
            }
        }
    }
    if (witness) {
        json w{{"X", M::to_json(X)}, {"Y", M::to_json(Y)}, {"source_coords", src_keys.size()},
               {"target_coords", tgt_keys.size()}, {"bijective", ok}};
        if constexpr (requires { M::hom_size(X, Y); }) {
            auto a = M::hom_size(X, Y), b = M::hom_size(EX, EY), c = M::hom_size(CX, CY);
            if (a && b && c) {
                w["hom_size"] = a->get_str();
                w["hom_size_E"] = b->get_str();
                w["hom_size_C"] = c->get_str();
            } else {
                w["infinite"] = true;
            }
        }
        if (!ok) w["reason"] = reason;
        *witness = w;
    }
    return ok;
}

template <ModelCategory M>
std::set<Prime> context_primes(const std::vector<typename M::Object>& objs, const std::set<Prime>& extra = {}) {
    std::set<Prime> ctx = extra;
    for (const auto& o : objs) {
        auto ps = M::relevant_primes(o);
        ctx.insert(ps.begin(), ps.end());
    }
    return ctx;
}

template <ModelCategory M>
Report split_homs_check(const typename M::Object& E, const typename M::Object& C,
                        const std::vector<std::pair<typename M::Object, typename M::Object>>& samples,
                        const std::set<Prime>& extra_primes = {}) {
    Report rep{"split-homs", true, json::array()};
    for (const auto& [X, Y] : samples) {
        auto ctx = context_primes<M>({E, C, X, Y}, extra_primes);
        json w;
        if (!hom_split_bijective<M>(E, C, X, Y, ctx, &w)) rep.verdict = false;
        rep.witnesses.push_back(w);
    }
    return rep;
}

// X -> (E ^ X) (+) (C ^ X) through (r ^ id, r_C ^ id) is an isomorphism.
template <ModelCategory M>
bool reassembles(const typename M::Object& X, const typename M::Morphism& r, const typename M::Morphism& rC) {
    const auto idx = M::identity(X);
    auto a = M::tensor(r, idx), b = M::tensor(rC, idx);
    auto bp = M::biproduct(M::cod(a), M::cod(b));
    auto m = M::add(M::compose(bp.in1, a), M::compose(bp.in2, b));
    return M::inverse(m).has_value();
}

template <ModelCategory M>
bool suspension_trivial(const std::vector<typename M::Object>& objs) {
    for (const auto& x : objs)
        if (!(M::suspension(x) == M::zero_object())) return false;
    return true;
}

// ---------------------------------------------------------------- EvConst specifics

struct CharSplit {
    EvConstObject torsion_part, free_part;  // S/m ^ X and S(m) ^ X
    ClopenIdempotent<EvConst> clopen;       // S/m
    Complement<EvConst> complement;         // S(m)
    bool reassembly_iso = false;
};

CharSplit char_split(const Int& m, const EvConstObject& X);

// ---------------------------------------------------------------- sampling

// Objects are sums of S/p, S(p) and S for p in {2, 3, 5}; torsion_only keeps S/p summands.
EvConstObject sample_evconst_object(std::mt19937_64& rng, bool torsion_only, std::size_t max_summands = 2);
SpanObject sample_span_object(std::mt19937_64& rng, std::size_t max_size = 3);
std::uint64_t seed_from_env();

}  // namespace dualkit::idem
