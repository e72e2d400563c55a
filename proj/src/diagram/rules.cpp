#include "dualkit/diagram.hpp"

namespace dualkit::diagram {

namespace {

Cell braid(bool positive, const Signature& sig) {
    if (!positive && sig.flavor == Flavor::Braided) return {CellKind::BraidNeg, ""};
    return {CellKind::BraidPos, ""};
}

std::size_t output_size(const std::vector<Word>& bounds, const Signature& sig, const Diagram& d, std::size_t k) {
    return bounds[k + 1].size() + input_arity(sig, d.layers[k].cell) - bounds[k].size();
}

Diagram splice(const Diagram& d, std::size_t at, std::size_t erase, const std::vector<Layer>& insert) {
    Diagram out{d.domain, {}};
    out.layers.insert(out.layers.end(), d.layers.begin(), d.layers.begin() + at);
    out.layers.insert(out.layers.end(), insert.begin(), insert.end());
    out.layers.insert(out.layers.end(), d.layers.begin() + at + erase, d.layers.end());
    return out;
}

Diagram checked(const Signature& sig, Diagram d) {
    try {
        boundaries(sig, d);
    } catch (const TypeError& e) {
        throw NoMatchAtLocation(std::string("rewrite result is ill-typed: ") + e.what());
    }
    return d;
}

[[noreturn]] void no_match(const std::string& id, const std::string& why) {
    throw NoMatchAtLocation(id + ": " + why);
}

Diagram interchange(const Signature& sig, const Diagram& d, bool leftward, Location loc, const std::string& id) {
    const std::size_t s = loc.slice;
    if (s + 1 >= d.layers.size()) no_match(id, "needs two layers");
    const auto bounds = boundaries(sig, d);
    const Layer& A = d.layers[s];
    const Layer& B = d.layers[s + 1];
    if (A.offset != loc.offset) no_match(id, "first layer is not at the stated offset");
    const std::size_t a = A.offset, b = B.offset;
    const std::size_t ia = input_arity(sig, A.cell), oa = output_size(bounds, sig, d, s);
    const std::size_t ib = input_arity(sig, B.cell), ob = output_size(bounds, sig, d, s + 1);
    if (leftward) {
        if (b + ib > a) no_match(id, "second cell is not left of the first");
        return checked(sig, splice(d, s, 2, {{b, B.cell}, {a - ib + ob, A.cell}}));
    }
    if (b < a + oa) no_match(id, "second cell is not right of the first");
    return checked(sig, splice(d, s, 2, {{b - oa + ia, B.cell}, {a, A.cell}}));
}

Diagram cancel(const Signature& sig, const Diagram& d, bool pos_first, Direction dir, Location loc,
               const std::string& id) {
    const Cell first = braid(pos_first, sig), second = braid(!pos_first, sig);
    const std::size_t s = loc.slice, w = loc.offset;
    if (dir == Direction::Backward) {
        if (s > d.layers.size()) no_match(id, "slice out of range");
        return checked(sig, splice(d, s, 0, {{w, first}, {w, second}}));
    }
    if (s + 1 >= d.layers.size()) no_match(id, "needs two layers");
    if (!(d.layers[s] == Layer{w, first}) || !(d.layers[s + 1] == Layer{w, second}))
        no_match(id, "no opposite crossing pair here");
    return checked(sig, splice(d, s, 2, {}));
}

// A wire at w passes a cell c: nat-L moves it rightward, nat-R leftward.
Diagram naturality(const Signature& sig, const Diagram& d, bool rightward, bool positive, Direction dir, Location loc,
                   const std::string& id) {
    const Cell X = braid(positive, sig);
    const std::size_t s = loc.slice, w = loc.offset;
    const auto& L = d.layers;
    auto crossings = [&](std::size_t count, bool ascending, std::size_t base) {
        std::vector<Layer> out;
        for (std::size_t k = 0; k < count; ++k) out.push_back({ascending ? base + k : base + count - 1 - k, X});
        return out;
    };
    auto matches = [&](std::size_t from, const std::vector<Layer>& want) {
        if (from + want.size() > L.size()) return false;
        for (std::size_t k = 0; k < want.size(); ++k)
            if (!(L[from + k] == want[k])) return false;
        return true;
    };
    const std::size_t c_fwd = rightward ? w + 1 : w;   // cell offset on the side with the cell first
    const std::size_t c_bwd = rightward ? w : w + 1;   // cell offset on the side with crossings first
    if (dir == Direction::Forward) {
        if (s >= L.size()) no_match(id, "slice out of range");
        const Layer& c = L[s];
        if (c.offset != c_fwd) no_match(id, "cell is not beside the wire");
        const std::size_t m = input_arity(sig, c.cell);
        const auto bounds = boundaries(sig, d);
        const std::size_t n = output_size(bounds, sig, d, s);
        if (!matches(s + 1, crossings(n, rightward, w))) no_match(id, "crossings do not follow the cell");
        auto repl = crossings(m, rightward, w);
        repl.push_back({c_bwd, c.cell});
        return checked(sig, splice(d, s, 1 + n, repl));
    }
    for (std::size_t m = 0; s + m < L.size(); ++m) {
        const Layer& c = L[s + m];
        if (c.offset != c_bwd || input_arity(sig, c.cell) != m) continue;
        if (!matches(s, crossings(m, rightward, w))) continue;
        const auto bounds = boundaries(sig, d);
        const std::size_t n = output_size(bounds, sig, d, s + m);
        std::vector<Layer> repl{{c_fwd, c.cell}};
        auto cr = crossings(n, rightward, w);
        repl.insert(repl.end(), cr.begin(), cr.end());
        return checked(sig, splice(d, s, m + 1, repl));
    }
    no_match(id, "no crossings followed by a cell here");
}

Diagram apply_schema(const Signature& sig, const Diagram& d, const std::string& id, Direction dir, Location loc) {
    const bool fwd = dir == Direction::Forward;
    if (id == "interchange-l") return interchange(sig, d, fwd, loc, id);
    if (id == "interchange-r") return interchange(sig, d, !fwd, loc, id);
    if (id == "cancel+-") return cancel(sig, d, true, dir, loc, id);
    if (id == "cancel-+") return cancel(sig, d, false, dir, loc, id);
    if (id == "nat-L+") return naturality(sig, d, true, true, dir, loc, id);
    if (id == "nat-L-") return naturality(sig, d, true, false, dir, loc, id);
    if (id == "nat-R+") return naturality(sig, d, false, true, dir, loc, id);
    if (id == "nat-R-") return naturality(sig, d, false, false, dir, loc, id);
    no_match(id, "unknown rule");
}

}  // namespace

void RewriteRule::validate(const Signature& sig) const {
    if (lhs.domain != rhs.domain)
        throw BoundaryMismatch("rule " + id + ": domains differ " + word_text(lhs.domain) + " vs " + word_text(rhs.domain));
    Word a = codomain(sig, lhs), b = codomain(sig, rhs);
    if (a != b) throw BoundaryMismatch("rule " + id + ": codomains differ " + word_text(a) + " vs " + word_text(b));
}

std::vector<std::string> schema_ids() {
    return {"interchange-l", "interchange-r", "cancel+-", "cancel-+", "nat-L+", "nat-L-", "nat-R+", "nat-R-"};
}

bool is_schema(const std::string& id) {
    for (const auto& s : schema_ids())
        if (s == id) return true;
    return false;
}

std::optional<RewriteRule> builtin_rule(const Signature& sig, const std::string& id) {
    auto colon = id.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string head = id.substr(0, colon), arg = id.substr(colon + 1);
    RewriteRule r;
    r.id = id;
    r.kind = "axiom";
    if (head == "snake-L" || head == "snake-R") {
        if (!sig.dual_pairs.count(arg)) return std::nullopt;
        const Cell cup{CellKind::Cup, arg}, cap{CellKind::Cap, arg};
        if (head == "snake-L") {
            r.lhs = {{Letter{arg, false}}, {{1, cup}, {0, cap}}};
        } else {
            r.lhs = {{Letter{arg, true}}, {{0, cup}, {1, cap}}};
        }
        r.rhs = {r.lhs.domain, {}};
        return r;
    }
    if (head == "inv-L" || head == "inv-R") {
        if (!sig.invertible.count(arg)) return std::nullopt;
        const auto& g = sig.generator(arg);
        const Cell gen{CellKind::Gen, arg}, inv{CellKind::GenInv, arg};
        if (head == "inv-L")
            r.lhs = {g.dom, {{0, gen}, {0, inv}}};
        else
            r.lhs = {g.cod, {{0, inv}, {0, gen}}};
        r.rhs = {r.lhs.domain, {}};
        return r;
    }
    return std::nullopt;
}

Diagram apply_rule(const Signature& sig, const Diagram& d, const RewriteRule& rule, Direction dir, Location loc) {
    const Diagram& pat = dir == Direction::Forward ? rule.lhs : rule.rhs;
    const Diagram& rep = dir == Direction::Forward ? rule.rhs : rule.lhs;
    const auto bounds = boundaries(sig, d);
    const std::size_t s = loc.slice, w = loc.offset;
    if (s > d.layers.size()) no_match(rule.id, "slice out of range");
    const Word& here = bounds[s];
    if (w + pat.domain.size() > here.size()) no_match(rule.id, "pattern boundary overruns the wires");
    if (!std::equal(pat.domain.begin(), pat.domain.end(), here.begin() + w))
        no_match(rule.id, "wires at the location are " + word_text(here) + ", pattern needs " + word_text(pat.domain));
    if (s + pat.layers.size() > d.layers.size()) no_match(rule.id, "pattern runs past the diagram");
    for (std::size_t k = 0; k < pat.layers.size(); ++k) {
        const Layer want{pat.layers[k].offset + w, pat.layers[k].cell};
        if (!(d.layers[s + k] == want)) no_match(rule.id, "cell mismatch at layer " + std::to_string(s + k));
    }
    std::vector<Layer> repl;
    for (const auto& l : rep.layers) repl.push_back({l.offset + w, l.cell});
    return checked(sig, splice(d, s, pat.layers.size(), repl));
}

Diagram apply_rule(const Signature& sig, const Diagram& d, const std::string& id,
                   const std::map<std::string, RewriteRule>& rules, Direction dir, Location loc) {
    if (auto it = rules.find(id); it != rules.end()) return apply_rule(sig, d, it->second, dir, loc);
    if (auto b = builtin_rule(sig, id)) return apply_rule(sig, d, *b, dir, loc);
    return apply_schema(sig, d, id, dir, loc);
}

}  // namespace dualkit::diagram
