#include <algorithm>

#include "dualkit/equivariant.hpp"

namespace dualkit::equi {

namespace {

std::string set_text(const std::set<std::size_t>& s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t k : s) {
        if (!first) out += ",";
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

std::set<std::size_t> without(std::set<std::size_t> s, std::size_t k) {
    s.erase(k);
    return s;
}

}  // namespace

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::SingletonKill: return "SingletonKill";
        case Rule::CofiberLocal: return "CofiberLocal";
        case Rule::SmashRemove: return "SmashRemove";
    }
    return "";
}

Rule rule_from_name(const std::string& s) {
    if (s == "SingletonKill") return Rule::SingletonKill;
    if (s == "CofiberLocal") return Rule::CofiberLocal;
    if (s == "SmashRemove") return Rule::SmashRemove;
    throw std::invalid_argument("unknown certificate rule '" + s + "'");
}

namespace fact {
std::string axiom() { return "F(S^V)=0"; }
std::string zero(const std::set<std::size_t>& s) { return "zero" + set_text(s); }
std::string local(const std::set<std::size_t>& s) { return "local" + set_text(s); }
std::string equivalence(const std::set<std::size_t>& from, const std::set<std::size_t>& to) {
    return "equiv" + set_text(from) + "->" + set_text(to);
}
std::string final_fact() { return "F(S^0)=0"; }
}  // namespace fact

std::size_t CollapseCertificate::removal_count() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const CertStep& s) { return s.rule == Rule::SmashRemove; }));
}

json CollapseCertificate::to_json(const ConjugacyPoset& poset) const {
    json st = json::array();
    for (const auto& s : steps)
        st.push_back(json{{"rule", rule_name(s.rule)},
                          {"class", s.cls},
                          {"label", poset.label(s.cls)},
                          {"upset", std::vector<std::size_t>(s.upset.begin(), s.upset.end())},
                          {"premises", s.premises},
                          {"conclusion", s.conclusion}});
    json classes = json::array();
    for (std::size_t c = 0; c < poset.size(); ++c)
        classes.push_back(json{{"index", c}, {"label", poset.label(c)}, {"order", poset.classes()[c].order()}});
    return json{{"group", group},   {"representation", representation}, {"axioms", axioms},
                {"classes", classes}, {"steps", st}, {"removals", removal_count()}, {"final", final_fact}};
}

CollapseCertificate CollapseCertificate::from_json(const json& j) {
    CollapseCertificate c;
    c.group = j.value("group", std::string());
    c.representation = j.value("representation", std::string());
    c.axioms = j.at("axioms").get<std::vector<std::string>>();
    for (const auto& s : j.at("steps")) {
        CertStep st;
        st.rule = rule_from_name(s.at("rule").get<std::string>());
        st.cls = s.at("class").get<std::size_t>();
        for (auto k : s.at("upset")) st.upset.insert(k.get<std::size_t>());
        st.premises = s.at("premises").get<std::vector<std::string>>();
        st.conclusion = s.at("conclusion").get<std::string>();
        c.steps.push_back(std::move(st));
    }
    c.final_fact = j.at("final").get<std::string>();
    return c;
}

CollapseCertificate generate_collapse_certificate(const PermGroup&, const ConjugacyPoset& poset, const Representation& v,
                                                  const std::string& group_name) {
    CollapseCertificate cert;
    cert.group = group_name;
    cert.representation = v.name();
    cert.axioms = {fact::axiom()};
    std::set<std::size_t> U = poset.all();
    while (!U.empty()) {
        const std::size_t h = poset.minimal(U).front();
        const auto rest = without(U, h);
        cert.steps.push_back({Rule::SingletonKill, h, U, {fact::axiom()}, fact::zero({h})});
        cert.steps.push_back({Rule::CofiberLocal, h, U, {fact::zero({h})}, fact::equivalence(U, rest)});
        cert.steps.push_back(
            {Rule::SmashRemove, h, U, {fact::local(U), fact::equivalence(U, rest)}, fact::local(rest)});
        U = rest;
    }
    cert.final_fact = fact::final_fact();
    return cert;
}

CertificateCheck validate_certificate(const CollapseCertificate& cert, const ConjugacyPoset& poset) {
    std::set<std::string> derived{fact::local(poset.all())};
    for (const auto& a : cert.axioms) {
        if (a != fact::axiom()) return {false, std::nullopt, "unknown axiom '" + a + "'"};
        derived.insert(a);
    }
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const auto& s = cert.steps[k];
        auto fail = [&](const std::string& why) { return CertificateCheck{false, k, why}; };
        if (s.cls >= poset.size()) return fail("class index out of range");
        for (std::size_t c : s.upset)
            if (c >= poset.size()) return fail("upset mentions an unknown class");
        if (!poset.is_upset(s.upset)) return fail("stated set is not an upset");
        if (!s.upset.count(s.cls)) return fail("class is not in the current upset");
        for (const auto& p : s.premises)
            if (!derived.count(p)) return fail("premise '" + p + "' was not derived");
        auto needs = [&](const std::string& p) {
            return std::find(s.premises.begin(), s.premises.end(), p) != s.premises.end();
        };
        const auto rest = without(s.upset, s.cls);
        std::string expected;
        switch (s.rule) {
            case Rule::SingletonKill:
                if (!needs(fact::axiom())) return fail("singleton kill needs the axiom");
                expected = fact::zero({s.cls});
                break;
            case Rule::CofiberLocal: {
                if (!needs(fact::zero({s.cls}))) return fail("cofiber step needs the singleton fact");
                auto mins = poset.minimal(s.upset);
                if (std::find(mins.begin(), mins.end(), s.cls) == mins.end()) return fail("class is not minimal in U");
                IntervalSphere down(poset, poset.down(s.cls)), up(poset, s.upset);
                if (interval_smash(poset, down, up).classes() != std::set<std::size_t>{s.cls})
                    return fail("downset of H meets U in more than H");
                expected = fact::equivalence(s.upset, rest);
                break;
            }
            case Rule::SmashRemove:
                if (!needs(fact::local(s.upset)) || !needs(fact::equivalence(s.upset, rest)))
                    return fail("removal needs locality of U and the cofiber step");
                if (!poset.is_upset(rest)) return fail("removal leaves a non-upset");
                expected = fact::local(rest);
                break;
        }
        if (s.conclusion != expected) return fail("conclusion does not follow");
        derived.insert(s.conclusion);
    }
    if (cert.final_fact != fact::final_fact()) return {false, std::nullopt, "wrong final fact"};
    if (!derived.count(fact::local({}))) return {false, std::nullopt, "empty upset never reached"};
    return {true, std::nullopt, ""};
}

}  // namespace dualkit::equi
