// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "dualkit/diagram.hpp"
#include "dualkit/equivariant.hpp"
#include "dualkit/idem.hpp"
#include "dualkit/models.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dualkit;
using namespace fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

// ---------------------------------------------------------------- 1. traces

std::vector<std::string> candidate_rule_ids(const diagram::RewriteTrace& t) {
    std::vector<std::string> ids = t.rule_order;
    for (const auto& s : diagram::schema_ids()) ids.push_back(s);
    for (const auto& o : t.sig.dual_pairs) {
        ids.push_back("snake-L:" + o.first);
        ids.push_back("snake-R:" + o.first);
    }
    for (const auto& g : t.sig.invertible) {
        ids.push_back("inv-L:" + g);
        ids.push_back("inv-R:" + g);
    }
    return ids;
}

std::vector<diagram::RewriteTrace> single_step_mutants(const diagram::RewriteTrace& t) {
    std::vector<diagram::RewriteTrace> out;
    auto with = [&](std::size_t k, const std::function<void(diagram::TraceStep&)>& edit) {
        auto m = t;
        edit(m.steps[k]);
        out.push_back(std::move(m));
    };
    const auto ids = candidate_rule_ids(t);
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        for (const auto& id : ids)
            if (id != s.rule) with(k, [&](diagram::TraceStep& x) { x.rule = id; });
        with(k, [](diagram::TraceStep& x) { x.loc.slice += 1; });
        if (s.loc.slice > 0) with(k, [](diagram::TraceStep& x) { x.loc.slice -= 1; });
        with(k, [](diagram::TraceStep& x) { x.loc.offset += 1; });
        if (s.loc.offset > 0) with(k, [](diagram::TraceStep& x) { x.loc.offset -= 1; });
        with(k, [](diagram::TraceStep& x) {
            x.dir = x.dir == diagram::Direction::Forward ? diagram::Direction::Backward : diagram::Direction::Forward;
        });
    }
    return out;
}

Outcome criterion_traces() {
    Outcome o;
    auto t0 = Clock::now();
    const auto files = diagram::corpus_files();
    std::vector<diagram::RewriteTrace> traces;
    for (const auto& f : files) {
        auto t = diagram::load_trace(f);
        auto rep = diagram::validate_trace(t);
        if (!rep.valid) o.fail(t.name + " invalid: " + rep.reason);
        traces.push_back(std::move(t));
    }
    const double validate_s = seconds_since(t0);
    if (traces.size() < 12) o.fail("only " + std::to_string(traces.size()) + " traces");
    if (validate_s >= 5.0) o.fail("corpus validation took " + std::to_string(validate_s) + " s");

    std::size_t mutants = 0, survivors = 0;
    for (const auto& t : traces)
        for (const auto& m : single_step_mutants(t)) {
            ++mutants;
            if (diagram::validate_trace(m).valid) {
                ++survivors;
                o.fail("a mutant of " + t.name + " still validates");
            }
        }
    std::ostringstream d;
    d << traces.size() << " traces valid in " << validate_s << " s; " << mutants << " single-step mutants, "
      << survivors << " survived";
    if (o.ok) o.detail = d.str();
    else o.detail += " (" + d.str() + ")";
    return o;
}

// ---------------------------------------------------------------- 2. spans

Outcome criterion_spans() {
    Outcome o;
    std::mt19937_64 rng(idem::seed_from_env());
    std::uniform_int_distribution<std::size_t> size(0, 4);
    for (int k = 0; k < 200; ++k) {
        const std::size_t a = size(rng), b = size(rng), c = size(rng);
        auto f = oracle::random_span(rng, a, b, 4);
        auto g = oracle::random_span(rng, b, c, 4);
        auto expected = oracle::span_counts(oracle::pullback_compose(f, g));
        auto got = SpanFin::compose(to_span(g), to_span(f));
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t i = 0; i < a; ++i)
                if (got.matrix(j, i) != expected[j][i]) o.fail("composite differs from pullback count");
    }
    for (std::size_t n = 0; n <= 4; ++n)
        if (!idem::triangle_equations_hold<SpanFin>({n}, SpanFin::duality({n})))
            o.fail("snake equations fail for n=" + std::to_string(n));
    if (o.ok) o.detail = "200 composites match pullback counts; snake equations hold for n=0..4";
    return o;
}

// ---------------------------------------------------------------- 3. span cofibers

Outcome criterion_span_cofibers() {
    Outcome o;
    auto size_of = [](const SpanMorphism& m) { return SpanFin::cofiber(m).object.size; };
    try {
        if (size_of(span_from_shape("zero", {0, 1})) != 1) o.fail("cofiber(0 -> 1) != 1");
        if (size_of(span_from_shape("forward", {2, 1})) != 0) o.fail("cofiber(fold) != 0");
        // every function g: X -> Y with |X|,|Y| <= 3, read backwards as a span Y -> X
        std::size_t count = 0;
        for (std::size_t x = 0; x <= 3; ++x)
            for (std::size_t y = 0; y <= 3; ++y) {
                if (x > 0 && y == 0) continue;
                std::size_t total = 1;
                for (std::size_t k = 0; k < x; ++k) total *= y;
                for (std::size_t code = 0; code < total; ++code) {
                    NatMatrix m(x, y);  // span Y -> X: cod X, dom Y
                    std::size_t c = code;
                    for (std::size_t i = 0; i < x; ++i) {
                        m(i, c % y) = 1;
                        c /= y;
                    }
                    ++count;
                    if (size_of(SpanFin::make(y, x, m)) != 0) o.fail("a backward map has a nonzero cofiber");
                }
            }
        auto gp = idem::gp_idempotent<SpanFin>();
        if (gp.E.size != 0) o.fail("S_gp(SpanFin) != 0");
        if (o.ok) o.detail = "table reproduced; " + std::to_string(count) + " backward maps checked";
    } catch (const std::exception& e) {
        o.fail(e.what());
    }
    return o;
}

// ---------------------------------------------------------------- 4. EvConst cofibers

std::vector<std::vector<std::int64_t>> component_oracle(const EvConstMorphism& phi, Prime p) {
    const std::size_t r = phi.cod.dim_at(p), c = phi.dom.dim_at(p);
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c, 0));
    auto it = phi.explicit_.find(p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (it != phi.explicit_.end()) {
                m[i][j] = static_cast<std::int64_t>(it->second(i, j));
            } else {
                mpz_class v = phi.free(i, j) % mpz_class(p);
                m[i][j] = v.get_si();
            }
        }
    return m;
}

std::string check_cofiber_against_oracle(const EvConstMorphism& phi) {
    auto cof = EvConst::cofiber(phi);
    const auto& C = cof.object;
    oracle::Mat fm(phi.free.rows(), std::vector<mpz_class>(phi.free.cols()));
    for (std::size_t i = 0; i < phi.free.rows(); ++i)
        for (std::size_t j = 0; j < phi.free.cols(); ++j) fm[i][j] = phi.free(i, j);
    auto inv = oracle::invariant_factors(fm, phi.free.rows(), phi.free.cols());
    if (C.f != phi.cod.f - inv.size()) return "free rank differs";
    std::set<Prime> ps(small_primes.begin(), small_primes.end());
    for (Prime p = 2; p < 50; ++p)
        if (is_prime(p)) ps.insert(p);
    for (const auto& d : inv)
        for (auto p : oracle::prime_divisors(d)) ps.insert(p);
    for (Prime p : C.primes())
        if (!ps.count(p)) return "unexpected exceptional prime " + std::to_string(p);
    for (Prime p : ps) {
        const std::size_t expect = phi.cod.dim_at(p) - oracle::rank_mod(component_oracle(phi, p), static_cast<std::int64_t>(p));
        if (C.dim_at(p) != expect) return "dimension at " + std::to_string(p) + " differs";
        // quotient is onto and kills phi
        auto q = cof.quotient;
        if (oracle::rank_mod(component_oracle(q, p), static_cast<std::int64_t>(p)) != C.dim_at(p))
            return "quotient not onto at " + std::to_string(p);
    }
    auto qphi = EvConst::compose(cof.quotient, phi);
    if (!(qphi == EvConst::zero_morphism(phi.dom, C))) return "quotient does not kill the morphism";
    oracle::Mat qm(C.f, std::vector<mpz_class>(phi.cod.f));
    for (std::size_t i = 0; i < C.f; ++i)
        for (std::size_t j = 0; j < phi.cod.f; ++j) qm[i][j] = cof.quotient.free(i, j);
    auto qinv = oracle::invariant_factors(qm, C.f, phi.cod.f);
    if (qinv.size() != C.f) return "free quotient not of full rank";
    for (const auto& d : qinv)
        if (d != 1) return "free quotient not onto";
    return "";
}

Outcome criterion_evconst_cofiber() {
    Outcome o;
    std::mt19937_64 rng(idem::seed_from_env() + 4);
    for (int k = 0; k < 300; ++k) {
        auto X = random_object(rng, 4, 3), Y = random_object(rng, 4, 3);
        auto phi = random_morphism(rng, X, Y);
        auto why = check_cofiber_against_oracle(phi);
        if (!why.empty()) o.fail("cofiber mismatch: " + why + " for " + EvConst::to_json(phi).dump());
    }
    std::size_t instances = 0, thetas = 0;
    for (int k = 0; instances < 60 && k < 2000; ++k) {
        auto X = random_object(rng, 0, 2), Y = random_object(rng, 0, 2), Z = random_object(rng, 0, 2);
        auto phi = random_morphism(rng, X, Y);
        auto cof = EvConst::cofiber(phi);
        auto hy = EvConst::hom_size(Y, Z), hc = EvConst::hom_size(cof.object, Z);
        if (!hy || !hc || *hy > 81 || *hc > 81) continue;
        ++instances;
        auto us = all_morphisms(cof.object, Z);
        for (const auto& theta : all_morphisms(Y, Z)) {
            ++thetas;
            const bool kills = EvConst::compose(theta, phi) == EvConst::zero_morphism(X, Z);
            std::size_t n = 0;
            for (const auto& u : us)
                if (EvConst::compose(u, cof.quotient) == theta) ++n;
            if (kills && n != 1) o.fail("factorization not unique/existing");
            if (!kills && n != 0) o.fail("a non-annihilating map factors");
            if (kills) {
                auto u = EvConst::factor_through(cof.quotient, theta);
                if (!(EvConst::compose(u, cof.quotient) == theta)) o.fail("factor_through is wrong");
            }
        }
    }
    if (instances < 60) o.fail("too few small torsion instances sampled");
    if (o.ok)
        o.detail = "300 cofibers match the oracle; universal property exhaustive on " + std::to_string(instances) +
                   " torsion instances (" + std::to_string(thetas) + " test maps)";
    return o;
}

// ---------------------------------------------------------------- 5. characteristic splittings

Int torsion_hom_count(const EvConstObject& X, const EvConstObject& Y) {
    std::set<Prime> ps = X.primes();
    for (Prime p : Y.primes()) ps.insert(p);
    Int n = 1;
    for (Prime p : ps)
        for (std::size_t k = 0; k < X.dim_at(p) * Y.dim_at(p); ++k) n *= static_cast<unsigned long>(p);
    return n;
}

Outcome criterion_char_splits() {
    Outcome o;
    std::mt19937_64 rng(idem::seed_from_env() + 5);
    std::size_t pairs_checked = 0;
    for (int m : {2, 3, 4, 6, 12}) {
        const std::string tag = "m=" + std::to_string(m) + ": ";
        auto s = idem::char_split(Int(m), EvConst::unit());
        std::map<Prime, std::size_t> tors, away;
        for (auto p : oracle::prime_divisors(m)) {
            tors[p] = 1;
            away[p] = 0;
        }
        if (!(s.clopen.E == EvConstObject(0, tors))) o.fail(tag + "E is not S/m");
        if (!(s.complement.C == EvConstObject(1, away))) o.fail(tag + "complement is not S(m)");
        if (!idem::is_clopen<EvConst>(s.clopen.E, s.clopen.r, s.clopen.i)) o.fail(tag + "S/m not clopen");
        if (!idem::is_clopen<EvConst>(s.complement.C, s.complement.r, s.complement.i)) o.fail(tag + "S(m) not clopen");
        if (!(EvConst::tensor(s.clopen.E, s.complement.C) == EvConst::zero_object())) o.fail(tag + "E ^ C != 0");
        std::vector<std::pair<EvConstObject, EvConstObject>> pairs;
        for (int k = 0; k < 100; ++k) {
            auto X = idem::sample_evconst_object(rng, true);
            auto Y = idem::sample_evconst_object(rng, true);
            pairs.emplace_back(X, Y);
        }
        std::set<Prime> extra;
        for (auto p : oracle::prime_divisors(m)) extra.insert(p);
        auto rep = idem::split_homs_check<EvConst>(s.clopen.E, s.complement.C, pairs, extra);
        if (!rep.verdict) o.fail(tag + "split_homs not bijective");
        for (const auto& [X, Y] : pairs) {
            ++pairs_checked;
            const auto E = s.clopen.E, C = s.complement.C;
            Int lhs = torsion_hom_count(X, Y);
            Int rhs = torsion_hom_count(EvConst::tensor(E, X), EvConst::tensor(E, Y)) *
                      torsion_hom_count(EvConst::tensor(C, X), EvConst::tensor(C, Y));
            if (lhs != rhs) o.fail(tag + "hom counts do not multiply");
        }
    }
    if (o.ok) o.detail = "m in {2,3,4,6,12}; " + std::to_string(pairs_checked) + " torsion pairs bijective with exact counts";
    return o;
}

// ---------------------------------------------------------------- 6. product model

Outcome criterion_product() {
    Outcome o;
    using P = EvConstSpan;
    auto gp = idem::gp_idempotent<P>();
    if (!(gp.E == P::Object{EvConst::unit(), SpanObject{0}})) o.fail("S_gp != (S, 0)");
    if (!idem::is_closed_idempotent<P>(gp.E, gp.r)) o.fail("S_gp is not a closed idempotent");
    // clopen structure on (S, 0)
    P::Morphism r{EvConst::identity(EvConst::unit()), SpanFin::zero_morphism({1}, {0})};
    P::Morphism i{EvConst::identity(EvConst::unit()), SpanFin::zero_morphism({0}, {1})};
    if (!(r == gp.r)) o.fail("S_gp unit map is not (id, 0)");
    if (!idem::is_clopen<P>(gp.E, r, i)) o.fail("(S, 0) not clopen");
    auto comp = idem::complement_of_retract<P>(gp.E, r, i);
    if (!(comp.C == P::Object{EvConst::zero_object(), SpanObject{1}})) o.fail("complement is not (0, 1)");

    std::mt19937_64 rng(idem::seed_from_env() + 6);
    std::vector<std::pair<P::Object, P::Object>> pairs;
    std::vector<P::Object> objs;
    for (int k = 0; k < 50; ++k) {
        P::Object X{idem::sample_evconst_object(rng, false), idem::sample_span_object(rng)};
        P::Object Y{idem::sample_evconst_object(rng, false), idem::sample_span_object(rng)};
        pairs.emplace_back(X, Y);
        objs.push_back(X);
        objs.push_back(Y);
    }
    if (!idem::suspension_trivial<P>(objs)) o.fail("a suspension is nonzero");
    auto rep = idem::split_homs_check<P>(gp.E, comp.C, pairs);
    if (!rep.verdict) o.fail("hom splitting fails");
    if (o.ok) o.detail = "S_gp = (S, 0); suspension trivial; 50 sampled pairs split";
    return o;
}

// ---------------------------------------------------------------- 7. equivariant suite

std::set<std::set<oracle::Perm>> as_perm_class(const equi::PermGroup& g, const equi::ConjugacyClass& c) {
    std::set<std::set<oracle::Perm>> out;
    for (const auto& h : c.members) {
        std::set<oracle::Perm> s;
        for (std::size_t k : h) s.insert(g.element(k));
        out.insert(s);
    }
    return out;
}

Outcome criterion_equivariant() {
    Outcome o;
    auto t0 = Clock::now();
    std::ostringstream d;
    for (const std::string name : {"c2", "c4", "s3", "d4", "q8", "a4"}) {
        auto g = equi::preset_group(name);
        auto poset = equi::enumerate_subgroup_classes(g);
        std::vector<oracle::Perm> elems;
        for (std::size_t k = 0; k < g.order(); ++k) elems.push_back(g.element(k));
        auto expected = oracle::subgroup_classes_by_power_set(elems);
        std::set<std::set<std::set<oracle::Perm>>> want(expected.begin(), expected.end()), got;
        for (const auto& c : poset.classes()) got.insert(as_perm_class(g, c));
        if (want != got || poset.size() != expected.size()) o.fail(name + ": subgroup classes differ");

        for (const std::string rep : {"trivial", "permutation", "reduced-regular"}) {
            auto v = equi::named_rep(g, rep);
            for (const auto& c : poset.classes()) {
                const auto h = c.representative();
                std::vector<std::vector<mpq_class>> proj(v.dim(), std::vector<mpq_class>(v.dim(), 0));
                for (std::size_t x : h)
                    for (std::size_t a = 0; a < v.dim(); ++a)
                        for (std::size_t b = 0; b < v.dim(); ++b) proj[a][b] += v.matrix(x)(a, b);
                for (auto& row : proj)
                    for (auto& e : row) e /= static_cast<unsigned long>(h.size());
                if (equi::fixed_dim(v, h) != oracle::rank_q(proj)) o.fail(name + "/" + rep + ": fixed_dim differs");
            }
        }
        auto cert = equi::generate_collapse_certificate(g, poset, equi::reduced_regular_rep(g), name);
        auto chk = equi::validate_certificate(cert, poset);
        if (!chk.valid) o.fail(name + ": certificate invalid: " + chk.reason);
        if (cert.removal_count() != poset.size()) o.fail(name + ": removal count != #classes");
        d << name << ":" << poset.size() << " ";
    }
    const double s = seconds_since(t0);
    if (s >= 10.0) o.fail("suite took " + std::to_string(s) + " s");
    if (o.ok) o.detail = "classes " + d.str() + "in " + std::to_string(s) + " s";
    return o;
}

// ---------------------------------------------------------------- 8. untwisting

Outcome criterion_untwisting() {
    Outcome o;
    std::size_t gsets = 0;
    for (const auto& name : equi::preset_names()) {
        auto g = equi::preset_group(name);
        auto poset = equi::enumerate_subgroup_classes(g);
        for (const auto& c : poset.classes()) {
            auto action = equi::coset_action(g, c.representative());
            ++gsets;
            if (!equi::untwisting_check(g, action)) o.fail(name + ": untwisting check fails");
            // direct check: phi(a, x) = (a, a x) is bijective and carries h(a, x) = (ha, x) to (ha, h a x)
            const std::size_t n = g.order(), m = action[0].size();
            std::set<std::pair<std::size_t, std::size_t>> image;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t x = 0; x < m; ++x) {
                    image.insert({a, action[a][x]});
                    for (std::size_t h = 0; h < n; ++h) {
                        const std::size_t ha = g.mul(h, a);
                        if (action[ha][x] != action[h][action[a][x]]) o.fail(name + ": phi not equivariant");
                    }
                }
            if (image.size() != n * m) o.fail(name + ": phi not bijective");
        }
    }
    if (o.ok) o.detail = std::to_string(gsets) + " transitive G-sets over " + std::to_string(equi::preset_names().size()) + " groups";
    return o;
}

}  // namespace

int main() {
    struct Row {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Row> rows{
        {"1 proof-trace corpus", criterion_traces},
        {"2 span semantics", criterion_spans},
        {"3 span cofiber table", criterion_span_cofibers},
        {"4 evconst cofiber", criterion_evconst_cofiber},
        {"5 characteristic splittings", criterion_char_splits},
        {"6 product 3-fold splitting", criterion_product},
        {"7 equivariant suite", criterion_equivariant},
        {"8 untwisting", criterion_untwisting},
    };
    int failures = 0;
    for (const auto& r : rows) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = r.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s  criterion %s  (%.2fs)  %s\n", o.ok ? "PASS" : "FAIL", r.name, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    return failures;
}
