#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "dualkit/diagram.hpp"

namespace dualkit::diagram {

namespace {

Direction parse_dir(const std::string& s) {
    if (s == "fwd" || s == "forward") return Direction::Forward;
    if (s == "bwd" || s == "backward") return Direction::Backward;
    throw std::invalid_argument("direction must be fwd or bwd");
}

}  // namespace

RewriteTrace RewriteTrace::from_json(const json& j) {
    RewriteTrace t;
    t.name = j.value("name", std::string());
    t.sig = Signature::from_json(j.at("signature"));
    for (const auto& r : j.value("rules", json::array())) {
        RewriteRule rule;
        rule.id = r.at("id").get<std::string>();
        rule.kind = r.value("kind", std::string("hypothesis"));
        rule.lhs = Diagram::from_json(t.sig, r.at("lhs"));
        rule.rhs = Diagram::from_json(t.sig, r.at("rhs"));
        rule.validate(t.sig);
        if (!t.rules.emplace(rule.id, rule).second) throw std::invalid_argument("rule '" + rule.id + "' defined twice");
        t.rule_order.push_back(rule.id);
    }
    t.start = Diagram::from_json(t.sig, j.at("start"));
    t.end = Diagram::from_json(t.sig, j.at("end"));
    for (const auto& s : j.at("steps")) {
        TraceStep st;
        st.rule = s.at("rule").get<std::string>();
        st.dir = parse_dir(s.value("dir", std::string("fwd")));
        st.loc = {s.at("slice").get<std::size_t>(), s.at("offset").get<std::size_t>()};
        st.group = s.value("group", std::string());
        t.steps.push_back(std::move(st));
    }
    return t;
}

json RewriteTrace::to_json() const {
    json rules_j = json::array();
    for (const auto& id : rule_order) {
        const auto& r = rules.at(id);
        rules_j.push_back(json{{"id", r.id}, {"kind", r.kind}, {"lhs", r.lhs.to_json()}, {"rhs", r.rhs.to_json()}});
    }
    json steps_j = json::array();
    for (const auto& s : steps) {
        json o{{"rule", s.rule},
               {"dir", s.dir == Direction::Forward ? "fwd" : "bwd"},
               {"slice", s.loc.slice},
               {"offset", s.loc.offset}};
        if (!s.group.empty()) o["group"] = s.group;
        steps_j.push_back(o);
    }
    return json{{"name", name},   {"signature", sig.to_json()}, {"rules", rules_j},
                {"start", start.to_json()}, {"steps", steps_j}, {"end", end.to_json()}};
}

json TraceReport::to_json() const {
    json j{{"valid", valid}};
    j["failing_step"] = failing_step ? json(*failing_step) : json(nullptr);
    if (!reason.empty()) j["reason"] = reason;
    return j;
}

TraceReport validate_trace(const RewriteTrace& t) {
    Diagram cur = t.start;
    try {
        boundaries(t.sig, cur);
    } catch (const std::exception& e) {
        return {false, 0, std::string("start diagram is ill-typed: ") + e.what()};
    }
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        try {
            cur = apply_rule(t.sig, cur, s.rule, t.rules, s.dir, s.loc);
        } catch (const std::exception& e) {
            return {false, k, e.what()};
        }
    }
    if (!(cur == t.end)) return {false, t.steps.size(), "final diagram differs from the stated end"};
    return {true, std::nullopt, ""};
}

std::string data_dir() {
    if (const char* env = std::getenv("DUALKIT_DATA_DIR"); env && *env) return env;
#ifdef DUALKIT_DATA_DIR
    return DUALKIT_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    const std::filesystem::path dir = std::filesystem::path(data_dir()) / "traces";
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

RewriteTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read trace file '" + path + "'");
    return RewriteTrace::from_json(json::parse(in));
}

}  // namespace dualkit::diagram
