#include "dualkit/diagram.hpp"

namespace dualkit::diagram {

std::string Cell::text() const {
    switch (kind) {
        case CellKind::BraidPos: return "B+";
        case CellKind::BraidNeg: return "B-";
        case CellKind::Cup: return "cup:" + name;
        case CellKind::Cap: return "cap:" + name;
        case CellKind::Gen: return "gen:" + name;
        case CellKind::GenInv: return "inv:" + name;
    }
    return "";
}

Cell Cell::parse(const std::string& s) {
    if (s == "B+") return {CellKind::BraidPos, ""};
    if (s == "B-") return {CellKind::BraidNeg, ""};
    auto colon = s.find(':');
    if (colon == std::string::npos || colon + 1 == s.size()) throw TypeError("unknown cell tag '" + s + "'");
    const std::string tag = s.substr(0, colon), name = s.substr(colon + 1);
    if (tag == "cup") return {CellKind::Cup, name};
    if (tag == "cap") return {CellKind::Cap, name};
    if (tag == "gen") return {CellKind::Gen, name};
    if (tag == "inv") return {CellKind::GenInv, name};
    throw TypeError("unknown cell tag '" + s + "'");
}

std::size_t input_arity(const Signature& sig, const Cell& c) {
    switch (c.kind) {
        case CellKind::BraidPos:
        case CellKind::BraidNeg: return 2;
        case CellKind::Cup: return 0;
        case CellKind::Cap: return 2;
        case CellKind::Gen: return sig.generator(c.name).dom.size();
        case CellKind::GenInv: return sig.generator(c.name).cod.size();
    }
    return 0;
}

Word cell_output(const Signature& sig, const Cell& c, const Word& in) {
    if (in.size() != input_arity(sig, c)) throw TypeError("cell " + c.text() + " gets the wrong number of wires");
    switch (c.kind) {
        case CellKind::BraidPos:
        case CellKind::BraidNeg: return {in[1], in[0]};
        case CellKind::Cup:
            if (!sig.dual_pairs.count(c.name)) throw TypeError("no dual pair for " + c.name);
            return {Letter{c.name, true}, Letter{c.name, false}};
        case CellKind::Cap:
            if (!sig.dual_pairs.count(c.name)) throw TypeError("no dual pair for " + c.name);
            if (in != Word{Letter{c.name, false}, Letter{c.name, true}})
                throw TypeError("cap:" + c.name + " applied to " + word_text(in));
            return {};
        case CellKind::Gen: {
            const auto& g = sig.generator(c.name);
            if (in != g.dom) throw TypeError("gen:" + c.name + " applied to " + word_text(in));
            return g.cod;
        }
        case CellKind::GenInv: {
            const auto& g = sig.generator(c.name);
            if (!sig.invertible.count(c.name)) throw TypeError(c.name + " has no formal inverse");
            if (in != g.cod) throw TypeError("inv:" + c.name + " applied to " + word_text(in));
            return g.dom;
        }
    }
    return {};
}

std::vector<Word> boundaries(const Signature& sig, const Diagram& d) {
    std::vector<Word> out{d.domain};
    for (const auto& l : d.layers) {
        const Word& w = out.back();
        const std::size_t ar = input_arity(sig, l.cell);
        if (l.offset + ar > w.size())
            throw TypeError("cell " + l.cell.text() + " at offset " + std::to_string(l.offset) + " overruns " +
                            word_text(w));
        Word in(w.begin() + l.offset, w.begin() + l.offset + ar);
        Word res(w.begin(), w.begin() + l.offset);
        Word o = cell_output(sig, l.cell, in);
        res.insert(res.end(), o.begin(), o.end());
        res.insert(res.end(), w.begin() + l.offset + ar, w.end());
        out.push_back(std::move(res));
    }
    return out;
}

Word codomain(const Signature& sig, const Diagram& d) { return boundaries(sig, d).back(); }

Diagram Diagram::from_json(const Signature& sig, const json& j) {
    Diagram d;
    d.domain = word_from_json(j.at("domain"));
    Word cur = d.domain;
    std::size_t sk = 0;
    for (const auto& slice : j.value("slices", json::array())) {
        std::size_t pos = 0;  // position in the partially rewritten word
        for (const auto& tag : slice) {
            const std::string t = tag.get<std::string>();
            if (t == "id") {
                if (pos >= cur.size()) throw TypeError("slice " + std::to_string(sk) + " has too many identities");
                ++pos;
                continue;
            }
            Cell c = Cell::parse(t);
            if (c.kind == CellKind::BraidNeg && sig.flavor == Flavor::Symmetric) c.kind = CellKind::BraidPos;
            const std::size_t ar = input_arity(sig, c);
            if (pos + ar > cur.size()) throw TypeError("slice " + std::to_string(sk) + " overruns its domain");
            Word in(cur.begin() + pos, cur.begin() + pos + ar);
            Word o = cell_output(sig, c, in);
            d.layers.push_back({pos, c});
            Word next(cur.begin(), cur.begin() + pos);
            next.insert(next.end(), o.begin(), o.end());
            next.insert(next.end(), cur.begin() + pos + ar, cur.end());
            cur = std::move(next);
            pos += o.size();
        }
        ++sk;
    }
    return d;
}

json Diagram::to_json() const {
    json slices = json::array();
    for (const auto& l : layers) {
        json s = json::array();
        for (std::size_t k = 0; k < l.offset; ++k) s.push_back("id");
        s.push_back(l.cell.text());
        slices.push_back(s);
    }
    return json{{"domain", word_to_json(domain)}, {"slices", slices}};
}

Diagram identity(const Word& w) { return {w, {}}; }

Diagram compose(const Signature& sig, const Diagram& first, const Diagram& second) {
    Word c = codomain(sig, first);
    if (c != second.domain)
        throw BoundaryMismatch("cannot compose: codomain " + word_text(c) + " vs domain " + word_text(second.domain));
    Diagram d = first;
    d.layers.insert(d.layers.end(), second.layers.begin(), second.layers.end());
    return d;
}

Diagram tensor(const Signature& sig, const Diagram& left, const Diagram& right) {
    Diagram d{left.domain, left.layers};
    d.domain.insert(d.domain.end(), right.domain.begin(), right.domain.end());
    const std::size_t shift = codomain(sig, left).size();
    for (auto l : right.layers) {
        l.offset += shift;
        d.layers.push_back(l);
    }
    boundaries(sig, d);
    return d;
}

Diagram cell_diagram(const Signature& sig, const Cell& c, const Word& inputs) {
    Diagram d{inputs, {{0, c}}};
    boundaries(sig, d);
    return d;
}

}  // namespace dualkit::diagram
