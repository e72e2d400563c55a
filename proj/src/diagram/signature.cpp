#include "dualkit/diagram.hpp"

namespace dualkit::diagram {

Letter Letter::parse(const std::string& s) {
    if (s.empty()) throw SignatureError("empty letter");
    if (s.back() == '*') return {s.substr(0, s.size() - 1), true};
    return {s, false};
}

std::string word_text(const Word& w) {
    std::string out = "(";
    for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + w[k].text();
    return out + ")";
}

Word word_from_json(const json& j) {
    Word w;
    for (const auto& l : j) w.push_back(Letter::parse(l.get<std::string>()));
    return w;
}

json word_to_json(const Word& w) {
    json j = json::array();
    for (const auto& l : w) j.push_back(l.text());
    return j;
}

bool Signature::has_object(const std::string& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
}

const Generator& Signature::generator(const std::string& name) const {
    auto it = generators.find(name);
    if (it == generators.end()) throw TypeError("unknown generator '" + name + "'");
    return it->second;
}

void Signature::validate() const {
    std::set<std::string> seen;
    for (const auto& o : objects)
        if (!seen.insert(o).second) throw SignatureError("object '" + o + "' declared twice");
    auto check_word = [&](const Word& w, const std::string& where) {
        for (const auto& l : w) {
            if (!has_object(l.object)) throw SignatureError(where + ": undeclared object '" + l.object + "'");
            if (l.dual && !dual_pairs.count(l.object))
                throw SignatureError(where + ": '" + l.object + "' has no dual pair");
        }
    };
    for (const auto& [name, g] : generators) {
        if (name != g.name) throw SignatureError("generator key/name mismatch for '" + name + "'");
        check_word(g.dom, "generator " + name);
        check_word(g.cod, "generator " + name);
    }
    for (const auto& [obj, dp] : dual_pairs) {
        if (obj != dp.object) throw SignatureError("dual pair key/object mismatch");
        if (!has_object(obj)) throw SignatureError("dual pair for undeclared object '" + obj + "'");
    }
    for (const auto& [gen, obj] : twists) {
        auto it = generators.find(gen);
        if (it == generators.end()) throw SignatureError("twist names unknown generator '" + gen + "'");
        const Word single{Letter{obj, false}};
        if (it->second.dom != single || it->second.cod != single)
            throw SignatureError("twist '" + gen + "' must be an endomorphism of " + obj);
    }
    for (const auto& g : invertible)
        if (!generators.count(g)) throw SignatureError("invertible names unknown generator '" + g + "'");
}

Signature Signature::from_json(const json& j) {
    Signature s;
    s.objects = j.at("objects").get<std::vector<std::string>>();
    if (j.contains("generators"))
        for (const auto& g : j.at("generators")) {
            Generator gen{g.at("name").get<std::string>(), word_from_json(g.at("dom")), word_from_json(g.at("cod"))};
            if (!s.generators.emplace(gen.name, gen).second)
                throw SignatureError("generator '" + gen.name + "' declared twice");
        }
    if (j.contains("dual_pairs"))
        for (const auto& d : j.at("dual_pairs")) {
            DualPair dp{d.at("object").get<std::string>(), d.value("unit", std::string("eta")),
                        d.value("counit", std::string("eps"))};
            if (!s.dual_pairs.emplace(dp.object, dp).second)
                throw SignatureError("object '" + dp.object + "' appears in two dual pairs");
        }
    if (j.contains("twists"))
        for (const auto& [g, o] : j.at("twists").items()) s.twists[g] = o.get<std::string>();
    if (j.contains("invertible"))
        for (const auto& g : j.at("invertible")) s.invertible.insert(g.get<std::string>());
    const std::string fl = j.value("flavor", std::string("braided"));
    if (fl == "braided")
        s.flavor = Flavor::Braided;
    else if (fl == "symmetric")
        s.flavor = Flavor::Symmetric;
    else
        throw SignatureError("flavor must be braided or symmetric");
    s.validate();
    return s;
}

json Signature::to_json() const {
    json gens = json::array();
    for (const auto& [name, g] : generators)
        gens.push_back(json{{"name", name}, {"dom", word_to_json(g.dom)}, {"cod", word_to_json(g.cod)}});
    json pairs = json::array();
    for (const auto& [o, d] : dual_pairs) pairs.push_back(json{{"object", o}, {"unit", d.unit}, {"counit", d.counit}});
    json tw = json::object();
    for (const auto& [g, o] : twists) tw[g] = o;
    return json{{"objects", objects},
                {"generators", gens},
                {"dual_pairs", pairs},
                {"twists", tw},
                {"invertible", std::vector<std::string>(invertible.begin(), invertible.end())},
                {"flavor", flavor == Flavor::Braided ? "braided" : "symmetric"}};
}

}  // namespace dualkit::diagram
