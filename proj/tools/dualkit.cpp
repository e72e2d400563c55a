#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dualkit/diagram.hpp"
#include "dualkit/equivariant.hpp"
#include "dualkit/idem.hpp"
#include "dualkit/models.hpp"

using namespace dualkit;
using dualkit::json;

namespace {

struct Options {
    std::string format;  // empty: the subcommand's default
};

// exit 1 with a structured report
struct DomainFailure : std::runtime_error {
    json report;
    DomainFailure(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

void render_text(const json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !v.empty()) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object()) {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const Options& o, const json& j) {
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        render_text(j, std::cout, 0);
}

json parse_json_arg(const std::string& text) {
    // inline JSON, or @path
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("cannot read " + text.substr(1));
        return json::parse(in);
    }
    return json::parse(text);
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty size in --sizes");
        out.push_back(std::stoull(item));
    }
    return out;
}

// ---------------------------------------------------------------- diagrams

int cmd_diagrams_verify(const Options& o, bool all, const std::string& trace_file) {
    using namespace dualkit::diagram;
    std::vector<std::string> files;
    if (!trace_file.empty())
        files.push_back(trace_file);
    else if (all)
        files = corpus_files();
    if (files.empty()) throw CLI::ValidationError("diagrams verify", "give --all or --trace <file>");
    json rows = json::array();
    bool ok = true;
    for (const auto& f : files) {
        json row;
        try {
            auto t = load_trace(f);
            auto rep = validate_trace(t);
            row = json{{"trace", t.name}, {"steps", t.steps.size()}, {"valid", rep.valid}};
            if (!rep.valid) {
                row["failing_step"] = rep.failing_step ? json(*rep.failing_step) : json(nullptr);
                row["reason"] = rep.reason;
            }
            ok = ok && rep.valid;
        } catch (const std::exception& e) {
            row = json{{"trace", f}, {"valid", false}, {"reason", e.what()}};
            ok = false;
        }
        rows.push_back(row);
    }
    if (o.format == "json") {
        emit(o, json{{"check", "diagrams-verify"}, {"verdict", ok}, {"traces", rows}});
    } else {
        for (const auto& r : rows) {
            std::cout << (r["valid"].get<bool>() ? "valid  " : "INVALID") << "  " << r["trace"].get<std::string>();
            if (r.contains("steps")) std::cout << "  (" << r["steps"] << " steps)";
            if (r.contains("reason")) std::cout << "  " << r["reason"].get<std::string>();
            std::cout << "\n";
        }
        std::cout << (ok ? "all traces valid" : "some traces failed") << " (" << rows.size() << ")\n";
    }
    return ok ? 0 : 1;
}

std::string layers_text(const diagram::Diagram& d) {
    std::string out = diagram::word_text(d.domain) + " [";
    for (std::size_t k = 0; k < d.layers.size(); ++k)
        out += (k ? ", " : "") + d.layers[k].cell.text() + "@" + std::to_string(d.layers[k].offset);
    return out + "]";
}

// print the diagram after every step, stopping at the first failure
int cmd_diagrams_replay(const Options& o, const std::string& trace_file) {
    using namespace dualkit::diagram;
    if (trace_file.empty()) throw CLI::ValidationError("diagrams replay", "needs --trace <file>");
    auto t = load_trace(trace_file);
    json rows = json::array();
    Diagram cur = t.start;
    rows.push_back(json{{"step", "start"}, {"diagram", layers_text(cur)}});
    bool ok = true;
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        try {
            cur = apply_rule(t.sig, cur, s.rule, t.rules, s.dir, s.loc);
            rows.push_back(json{{"step", k}, {"rule", s.rule}, {"diagram", layers_text(cur)}});
        } catch (const std::exception& e) {
            rows.push_back(json{{"step", k}, {"rule", s.rule}, {"error", e.what()}});
            ok = false;
            break;
        }
    }
    if (ok && !(cur == t.end)) {
        rows.push_back(json{{"step", "end"}, {"expected", layers_text(t.end)}});
        ok = false;
    }
    if (o.format == "json") {
        emit(o, json{{"trace", t.name}, {"verdict", ok}, {"steps", rows}});
    } else {
        for (const auto& r : rows) {
            std::cout << (r["step"].is_string() ? r["step"].get<std::string>() : std::to_string(r["step"].get<std::size_t>()));
            if (r.contains("rule")) std::cout << "  " << r["rule"].get<std::string>();
            if (r.contains("diagram")) std::cout << "  " << r["diagram"].get<std::string>();
            if (r.contains("error")) std::cout << "  ERROR " << r["error"].get<std::string>();
            if (r.contains("expected")) std::cout << "  expected " << r["expected"].get<std::string>();
            std::cout << "\n";
        }
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- span

int cmd_span(const Options& o, const std::string& action, const std::string& f, const std::string& g, std::size_t n,
             const std::string& shape, const std::string& sizes) {
    if (action == "compose" || action == "tensor") {
        if (f.empty() || g.empty()) throw CLI::ValidationError("span " + action, "needs --f and --g");
        auto mf = span_morphism_from_json(parse_json_arg(f));
        auto mg = span_morphism_from_json(parse_json_arg(g));
        auto r = action == "compose" ? SpanFin::compose(mg, mf) : SpanFin::tensor(mf, mg);
        emit(o, SpanFin::to_json(r));
        return 0;
    }
    if (action == "dual-check") {
        auto dd = SpanFin::duality({n});
        bool ok = idem::triangle_equations_hold<SpanFin>({n}, dd);
        emit(o, json{{"check", "span-dual-check"},
                     {"verdict", ok},
                     {"witnesses", json::array({json{{"n", n}, {"eta", SpanFin::to_json(dd.eta)}}})}});
        return ok ? 0 : 1;
    }
    if (action == "cofiber") {
        SpanMorphism m = !f.empty() ? span_morphism_from_json(parse_json_arg(f))
                                    : span_from_shape(shape, parse_sizes(sizes));
        try {
            auto c = SpanFin::cofiber(m);
            emit(o, json{{"input", SpanFin::to_json(m)},
                         {"cofiber", SpanFin::to_json(c.object)},
                         {"quotient", SpanFin::to_json(c.quotient)},
                         {"provenance", c.provenance}});
            return 0;
        } catch (const UnsupportedShape& e) {
            throw DomainFailure(e.what(), json{{"error", "UnsupportedShape"}, {"message", e.what()}});
        }
    }
    throw CLI::ValidationError("span", "unknown action " + action);
}

// ---------------------------------------------------------------- evconst

int cmd_evconst(const Options& o, const std::string& action, const std::string& f, const std::string& g,
                const std::string& x, const std::string& y, const std::string& morphism, const std::string& m,
                const std::string& object) {
    if (action == "compose") {
        if (f.empty() || g.empty()) throw CLI::ValidationError("evconst compose", "needs --f and --g");
        auto mf = EvConst::morphism_from_json(parse_json_arg(f));
        auto mg = EvConst::morphism_from_json(parse_json_arg(g));
        emit(o, EvConst::to_json(EvConst::compose(mg, mf)));
        return 0;
    }
    if (action == "biproduct") {
        if (x.empty() || y.empty()) throw CLI::ValidationError("evconst biproduct", "needs --x and --y");
        auto b = EvConst::biproduct(EvConst::parse_object(x), EvConst::parse_object(y));
        emit(o, json{{"object", EvConst::to_json(b.object)},
                     {"describe", EvConst::describe(b.object)},
                     {"in1", EvConst::to_json(b.in1)},
                     {"in2", EvConst::to_json(b.in2)},
                     {"pr1", EvConst::to_json(b.pr1)},
                     {"pr2", EvConst::to_json(b.pr2)}});
        return 0;
    }
    if (action == "cofiber") {
        if (morphism.empty()) throw CLI::ValidationError("evconst cofiber", "needs --morphism");
        auto phi = EvConst::morphism_from_json(parse_json_arg(morphism));
        auto c = EvConst::cofiber(phi);
        emit(o, json{{"object", EvConst::to_json(c.object)},
                     {"describe", EvConst::describe(c.object)},
                     {"quotient", EvConst::to_json(c.quotient)},
                     {"provenance", c.provenance}});
        return 0;
    }
    if (action == "split") {
        if (m.empty()) throw CLI::ValidationError("evconst split", "needs --m");
        Int mi(m);
        auto X = EvConst::parse_object(object.empty() ? "S" : object);
        auto s = idem::char_split(mi, X);
        const bool clopen = idem::is_clopen<EvConst>(s.clopen.E, s.clopen.r, s.clopen.i);
        const bool cclopen = idem::is_clopen<EvConst>(s.complement.C, s.complement.r, s.complement.i);
        const bool orth = EvConst::tensor(s.clopen.E, s.complement.C) == EvConst::zero_object();
        const bool ok = clopen && cclopen && orth && s.reassembly_iso;
        emit(o, json{{"check", "char-split"},
                     {"verdict", ok},
                     {"witnesses",
                      json::array({json{{"m", m},
                                        {"X", EvConst::describe(X)},
                                        {"S/m", EvConst::describe(s.clopen.E)},
                                        {"S(m)", EvConst::describe(s.complement.C)},
                                        {"S/m^X", EvConst::describe(s.torsion_part)},
                                        {"S(m)^X", EvConst::describe(s.free_part)},
                                        {"clopen", clopen},
                                        {"complement_clopen", cclopen},
                                        {"E^C=0", orth},
                                        {"reassembly_iso", s.reassembly_iso}}})}});
        return ok ? 0 : 1;
    }
    throw CLI::ValidationError("evconst", "unknown action " + action);
}

// ---------------------------------------------------------------- idem

template <class M>
typename M::Object parse_model_object(const std::string& s);
template <>
EvConstObject parse_model_object<EvConst>(const std::string& s) {
    return EvConst::parse_object(s);
}
template <>
SpanObject parse_model_object<SpanFin>(const std::string& s) {
    return {std::stoull(s)};
}
template <>
EvConstSpan::Object parse_model_object<EvConstSpan>(const std::string& s) {
    auto comma = s.rfind(',');
    if (comma == std::string::npos) throw std::invalid_argument("product objects are written 'EVCONST,SIZE'");
    return {EvConst::parse_object(s.substr(0, comma)), SpanObject{std::stoull(s.substr(comma + 1))}};
}

template <class M>
typename M::Morphism parse_model_morphism(const std::string& s, const typename M::Object& dom,
                                          const typename M::Object& cod);
template <>
EvConstMorphism parse_model_morphism<EvConst>(const std::string& s, const EvConstObject& dom,
                                              const EvConstObject& cod) {
    return EvConst::morphism_from_json(parse_json_arg(s), &dom, &cod);
}
template <>
SpanMorphism parse_model_morphism<SpanFin>(const std::string& s, const SpanObject&, const SpanObject&) {
    return span_morphism_from_json(parse_json_arg(s));
}
template <>
EvConstSpan::Morphism parse_model_morphism<EvConstSpan>(const std::string& s, const EvConstSpan::Object& dom,
                                                        const EvConstSpan::Object& cod) {
    json j = parse_json_arg(s);
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("product morphisms are [evconst, span]");
    return {EvConst::morphism_from_json(j[0], &dom.first, &cod.first), span_morphism_from_json(j[1])};
}

template <class M>
typename M::Object sample_object(std::mt19937_64& rng);
template <>
EvConstObject sample_object<EvConst>(std::mt19937_64& rng) {
    return idem::sample_evconst_object(rng, true);
}
template <>
SpanObject sample_object<SpanFin>(std::mt19937_64& rng) {
    return idem::sample_span_object(rng);
}
template <>
EvConstSpan::Object sample_object<EvConstSpan>(std::mt19937_64& rng) {
    auto a = idem::sample_evconst_object(rng, true);
    return {a, idem::sample_span_object(rng)};
}

template <class M>
int run_idem(const Options& o, const std::string& action, const std::string& object, const std::string& r_text,
             const std::string& i_text, const std::string& t_text, std::size_t samples) {
    using Obj = typename M::Object;
    auto need_object = [&]() -> Obj {
        if (object.empty()) throw CLI::ValidationError("idem " + action, "needs --object");
        return parse_model_object<M>(object);
    };
    idem::Report rep;
    rep.check = action;
    auto finish = [&]() {
        emit(o, rep.to_json());
        return rep.verdict ? 0 : 1;
    };
    auto clopen_for = [&](const Obj& T) {
        auto dd = M::duality(T);
        auto t = t_text.empty() ? idem::euler_twist<M>(T, dd) : parse_model_morphism<M>(t_text, T, T);
        return idem::untwist<M>(T, dd, t);
    };
    auto explicit_or_untwist = [&](const Obj& T) -> idem::ClopenIdempotent<M> {
        if (!r_text.empty() && !i_text.empty())
            return {T, parse_model_morphism<M>(r_text, M::unit(), T), parse_model_morphism<M>(i_text, T, M::unit())};
        return clopen_for(T);
    };
    try {
        if (action == "gp") {
            auto gp = idem::gp_idempotent<M>();
            rep.verdict = idem::is_closed_idempotent<M>(gp.E, gp.r);
            rep.witnesses.push_back(
                json{{"S_gp", M::to_json(gp.E)}, {"describe", M::describe(gp.E)}, {"r", M::to_json(gp.r)}});
            return finish();
        }
        const Obj T = need_object();
        if (action == "euler") {
            auto t = idem::euler_twist<M>(T, M::duality(T));
            rep.verdict = true;
            rep.witnesses.push_back(json{{"T", M::describe(T)}, {"t", M::to_json(t)}});
            return finish();
        }
        if (action == "closed") {
            typename M::Morphism r =
                r_text.empty() ? clopen_for(T).r : parse_model_morphism<M>(r_text, M::unit(), T);
            const Obj E = r_text.empty() ? clopen_for(T).E : T;
            rep.verdict = idem::is_closed_idempotent<M>(E, r);
            rep.witnesses.push_back(json{{"E", M::describe(E)}, {"r", M::to_json(r)}});
            return finish();
        }
        if (action == "clopen" || action == "untwist") {
            auto c = explicit_or_untwist(T);
            rep.verdict = idem::is_clopen<M>(c.E, c.r, c.i);
            rep.witnesses.push_back(json{{"E", M::describe(c.E)},
                                         {"r", M::to_json(c.r)},
                                         {"i", M::to_json(c.i)},
                                         {"trivial_braiding", idem::has_trivial_braiding<M>(c.E)}});
            return finish();
        }
        if (action == "complement") {
            auto c = explicit_or_untwist(T);
            auto comp = idem::complement_of_retract<M>(c.E, c.r, c.i);
            const bool cl = idem::is_clopen<M>(comp.C, comp.r, comp.i);
            const bool orth = M::tensor(c.E, comp.C) == M::zero_object();
            rep.verdict = cl && orth;
            rep.witnesses.push_back(json{{"E", M::describe(c.E)},
                                         {"complement", M::describe(comp.C)},
                                         {"complement_clopen", cl},
                                         {"E^C=0", orth},
                                         {"provenance", comp.provenance}});
            return finish();
        }
        if (action == "split-homs") {
            auto c = explicit_or_untwist(T);
            auto comp = idem::complement_of_retract<M>(c.E, c.r, c.i);
            std::mt19937_64 rng(idem::seed_from_env());
            std::vector<std::pair<Obj, Obj>> pairs;
            for (std::size_t k = 0; k < samples; ++k) {
                auto X = sample_object<M>(rng);
                auto Y = sample_object<M>(rng);
                pairs.emplace_back(X, Y);
            }
            rep = idem::split_homs_check<M>(c.E, comp.C, pairs);
            return finish();
        }
    } catch (const idem::NotTwistedTrivial& e) {
        rep.verdict = false;
        rep.witnesses.push_back(json{{"error", "NotTwistedTrivial"}, {"message", e.what()}});
        return finish();
    }
    throw CLI::ValidationError("idem", "unknown action " + action);
}

// ---------------------------------------------------------------- equi

std::size_t parse_class(const equi::ConjugacyPoset& p, const std::string& s) {
    for (std::size_t c = 0; c < p.size(); ++c)
        if (p.label(c) == s) return c;
    std::size_t k = std::stoull(s);
    if (k >= p.size()) throw std::invalid_argument("class index out of range");
    return k;
}

equi::Representation load_rep(const equi::PermGroup& g, const std::string& s) {
    if (s.find('.') != std::string::npos || s.find('/') != std::string::npos) {
        std::ifstream in(s);
        if (!in) throw std::invalid_argument("cannot read representation file " + s);
        return equi::Representation::from_json(g, json::parse(in));
    }
    return equi::named_rep(g, s);
}

int cmd_equi(const Options& o, const std::string& action, const std::string& group, const std::string& rep,
             const std::string& cls, const std::string& cert_file) {
    auto g = equi::load_group(group);
    auto poset = equi::enumerate_subgroup_classes(g);
    if (action == "lattice") {
        json classes = json::array();
        for (std::size_t c = 0; c < poset.size(); ++c) {
            json below = json::array();
            for (std::size_t d = 0; d < poset.size(); ++d)
                if (d != c && poset.leq(d, c)) below.push_back(d);
            classes.push_back(json{{"index", c},
                                   {"label", poset.label(c)},
                                   {"order", poset.classes()[c].order()},
                                   {"conjugates", poset.classes()[c].members.size()},
                                   {"weyl_order", poset.weyl_order(c)},
                                   {"below", below}});
        }
        emit(o, json{{"group", group}, {"order", g.order()}, {"classes", classes}});
        return 0;
    }
    if (action == "weyl") {
        json out = json::array();
        std::vector<std::size_t> which;
        if (cls.empty())
            for (std::size_t c = 0; c < poset.size(); ++c) which.push_back(c);
        else
            which.push_back(parse_class(poset, cls));
        for (std::size_t c : which) {
            auto w = equi::weyl_group(g, poset, c);
            out.push_back(json{{"class", poset.label(c)}, {"order", w.order}, {"coset_representatives", w.coset_representatives}});
        }
        emit(o, json{{"group", group}, {"weyl", out}});
        return 0;
    }
    if (action == "fixdim") {
        auto v = load_rep(g, rep.empty() ? "permutation" : rep);
        json out = json::array();
        for (std::size_t c = 0; c < poset.size(); ++c)
            out.push_back(json{{"class", poset.label(c)}, {"fixed_dim", equi::fixed_dim(v, poset.classes()[c].representative())}});
        emit(o, json{{"group", group}, {"representation", v.name()}, {"dim", v.dim()}, {"fixed", out}});
        return 0;
    }
    if (action == "collapse") {
        auto v = load_rep(g, rep.empty() ? "reduced-regular" : rep);
        auto cert = equi::generate_collapse_certificate(g, poset, v, group);
        auto chk = equi::validate_certificate(cert, poset);
        json j = cert.to_json(poset);
        j["valid"] = chk.valid;
        emit(o, j);
        return chk.valid ? 0 : 1;
    }
    if (action == "validate") {
        if (cert_file.empty()) throw CLI::ValidationError("equi validate", "needs --certificate");
        std::ifstream in(cert_file);
        if (!in) throw std::invalid_argument("cannot read certificate " + cert_file);
        auto cert = equi::CollapseCertificate::from_json(json::parse(in));
        auto chk = equi::validate_certificate(cert, poset);
        json j{{"check", "certificate"}, {"verdict", chk.valid}};
        j["failing_step"] = chk.failing_step ? json(*chk.failing_step) : json(nullptr);
        if (!chk.reason.empty()) j["reason"] = chk.reason;
        emit(o, j);
        return chk.valid ? 0 : 1;
    }
    throw CLI::ValidationError("equi", "unknown action " + action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dualkit: string-diagram traces, model categories, idempotent splittings, equivariant certificates"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* diagrams = app.add_subcommand("diagrams", "validate rewrite traces");
    diagrams->require_subcommand(1);
    auto* verify = diagrams->add_subcommand("verify", "validate the bundled corpus or a single trace");
    bool all = false;
    std::string trace_file;
    verify->add_flag("--all", all, "every bundled trace");
    verify->add_option("--trace", trace_file, "a trace JSON file")->check(CLI::ExistingFile);
    verify->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    auto* replay = diagrams->add_subcommand("replay", "show the diagram after each step of a trace");
    replay->add_option("--trace", trace_file, "a trace JSON file")->check(CLI::ExistingFile)->required();
    replay->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));

    std::string f, g, x, y, morphism, shape, sizes, m, object, r_text, i_text, t_text, model = "evconst";
    std::string group, rep, cls, cert_file;
    std::size_t n = 1, samples = 20;

    auto* span = app.add_subcommand("span", "spans of finite sets");
    span->require_subcommand(1);
    for (const char* a : {"compose", "tensor", "dual-check", "cofiber"}) {
        auto* s = span->add_subcommand(a);
        s->add_option("--f", f, "span JSON {dom, cod, matrix}");
        s->add_option("--g", g, "span JSON, applied after f");
        s->add_option("--n", n, "object size");
        s->add_option("--shape", shape, "identity | zero | forward | backward");
        s->add_option("--sizes", sizes, "comma separated sizes for --shape");
        s->add_option("--morphism", f, "span JSON (cofiber)");
        s->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    }

    auto* ev = app.add_subcommand("evconst", "eventually-constant F_p vector spaces");
    ev->require_subcommand(1);
    for (const char* a : {"compose", "biproduct", "cofiber", "split"}) {
        auto* s = ev->add_subcommand(a);
        s->add_option("--f", f, "morphism JSON");
        s->add_option("--g", g, "morphism JSON, applied after f");
        s->add_option("--x", x, "object, e.g. S/2+S");
        s->add_option("--y", y, "object");
        s->add_option("--morphism", morphism, "morphism JSON {free, explicit}");
        s->add_option("--m", m, "positive integer");
        s->add_option("--object", object, "object to split (default S)");
        s->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    }

    auto* id = app.add_subcommand("idem", "idempotents and splittings");
    id->require_subcommand(1);
    for (const char* a : {"closed", "clopen", "untwist", "euler", "complement", "split-homs", "gp"}) {
        auto* s = id->add_subcommand(a);
        s->add_option("--model", model, "evconst | spanfin | product")
            ->check(CLI::IsMember({"evconst", "spanfin", "product"}));
        s->add_option("--object", object, "object (product: EVCONST,SIZE)");
        s->add_option("--r", r_text, "explicit r: S -> E");
        s->add_option("--i", i_text, "explicit i: E -> S");
        s->add_option("--twist", t_text, "explicit twist t: T -> T");
        s->add_option("--samples", samples, "sampled pairs for split-homs");
        s->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    }

    auto* eq = app.add_subcommand("equi", "finite-group lattices and collapse certificates");
    eq->require_subcommand(1);
    for (const char* a : {"lattice", "weyl", "fixdim", "collapse", "validate"}) {
        auto* s = eq->add_subcommand(a);
        s->add_option("--group", group, "preset (c2 c4 s3 d4 q8 a4 trivial) or JSON file")->required();
        s->add_option("--rep", rep, "trivial | sign | permutation | reduced-permutation | regular | reduced-regular | file");
        s->add_option("--class", cls, "class label or index");
        s->add_option("--certificate", cert_file, "certificate JSON");
        s->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto chosen = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
    // tables for traces and lattices, JSON for algebraic results
    if (opt.format.empty()) opt.format = diagrams->parsed() || eq->parsed() ? "text" : "json";
    try {
        if (diagrams->parsed())
            return chosen(diagrams) == "replay" ? cmd_diagrams_replay(opt, trace_file)
                                                : cmd_diagrams_verify(opt, all, trace_file);
        if (span->parsed()) return cmd_span(opt, chosen(span), f, g, n, shape, sizes);
        if (ev->parsed()) return cmd_evconst(opt, chosen(ev), f, g, x, y, morphism, m, object);
        if (id->parsed()) {
            const std::string a = chosen(id);
            if (model == "evconst") return run_idem<EvConst>(opt, a, object, r_text, i_text, t_text, samples);
            if (model == "spanfin") return run_idem<SpanFin>(opt, a, object, r_text, i_text, t_text, samples);
            return run_idem<EvConstSpan>(opt, a, object, r_text, i_text, t_text, samples);
        }
        if (eq->parsed()) return cmd_equi(opt, chosen(eq), group, rep, cls, cert_file);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "usage error: malformed JSON argument: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainFailure& e) {
        emit(opt, e.report);
        return 1;
    } catch (const std::exception& e) {
        emit(opt, json{{"error", e.what()}});
        return 1;
    }
    return 2;
}
