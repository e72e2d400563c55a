#include <algorithm>
#include <functional>
#include <numeric>

#include "dualkit/diagram.hpp"

namespace dualkit::diagram {

namespace {

constexpr std::size_t npos = OpenGraph::npos;

struct Items {
    std::vector<std::size_t> parent;
    std::vector<std::optional<PortRef>> terminal;
    std::vector<std::string> object;  // for strands born at a cup

    std::size_t make(std::optional<PortRef> t, std::string obj = "") {
        parent.push_back(parent.size());
        terminal.push_back(t);
        object.push_back(std::move(obj));
        return parent.size() - 1;
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

OpenGraph normalize_symmetric(const Signature& sig, const Diagram& d) {
    if (sig.flavor != Flavor::Symmetric) throw UnsupportedCell("normal forms need a symmetric signature");
    OpenGraph g;
    g.domain = d.domain;
    Items items;
    std::vector<std::size_t> wires;
    for (std::size_t i = 0; i < d.domain.size(); ++i) wires.push_back(items.make(PortRef{npos, false, i}));
    const auto bounds = boundaries(sig, d);
    for (const auto& l : d.layers) {
        const std::size_t ar = input_arity(sig, l.cell);
        std::vector<std::size_t> in(wires.begin() + l.offset, wires.begin() + l.offset + ar);
        std::vector<std::size_t> out;
        switch (l.cell.kind) {
            case CellKind::BraidPos:
            case CellKind::BraidNeg: out = {in[1], in[0]}; break;
            case CellKind::Cup: {
                std::size_t strand = items.make(std::nullopt, l.cell.name);
                out = {strand, strand};
                break;
            }
            case CellKind::Cap: items.join(in[0], in[1]); break;
            case CellKind::Gen: {
                const auto& gen = sig.generator(l.cell.name);
                const std::size_t node = g.nodes.size();
                g.nodes.push_back(gen.name);
                g.n_in.push_back(gen.dom.size());
                g.n_out.push_back(gen.cod.size());
                for (std::size_t k = 0; k < in.size(); ++k) items.join(in[k], items.make(PortRef{node, false, k}));
                for (std::size_t k = 0; k < gen.cod.size(); ++k) out.push_back(items.make(PortRef{node, true, k}));
                break;
            }
            case CellKind::GenInv: throw UnsupportedCell("formal inverses have no normal form");
        }
        std::vector<std::size_t> next(wires.begin(), wires.begin() + l.offset);
        next.insert(next.end(), out.begin(), out.end());
        next.insert(next.end(), wires.begin() + l.offset + ar, wires.end());
        wires = std::move(next);
    }
    g.codomain = bounds.back();
    for (std::size_t j = 0; j < wires.size(); ++j) items.join(wires[j], items.make(PortRef{npos, true, j}));

    std::map<std::size_t, std::vector<PortRef>> classes;
    std::map<std::size_t, std::string> loop_object;
    for (std::size_t k = 0; k < items.parent.size(); ++k) {
        const std::size_t root = items.find(k);
        if (items.terminal[k]) classes[root].push_back(*items.terminal[k]);
        if (!items.object[k].empty()) loop_object[root] = items.object[k];
        classes[root];
    }
    for (const auto& [root, ports] : classes) {
        if (ports.size() == 2) {
            g.mate[ports[0]] = ports[1];
            g.mate[ports[1]] = ports[0];
        } else if (ports.empty()) {
            g.loops.push_back(loop_object.at(root));
        } else {
            throw std::logic_error("wire tracing produced a non-matching");
        }
    }
    std::sort(g.loops.begin(), g.loops.end());
    return g;
}

// Ports are ordered, so a traversal from a fixed starting point numbers nodes canonically.
// Closed components take the least encoding over all starting nodes.
std::string OpenGraph::canonical() const {
    std::string out = "dom" + word_text(domain) + "cod" + word_text(codomain) + "loops[";
    for (const auto& l : loops) out += l + ";";
    out += "]";

    auto encode_from = [&](std::vector<std::size_t> seeds, const std::vector<PortRef>& boundary_order,
                           std::vector<std::size_t>& number) {
        std::string s;
        std::size_t next = 0;
        for (std::size_t n : number)
            if (n != npos) next = std::max(next, n + 1);
        std::vector<std::size_t> queue;
        auto label = [&](const PortRef& p) {
            if (p.node == npos) return std::string(p.output ? "C" : "D") + std::to_string(p.index);
            if (number[p.node] == npos) {
                number[p.node] = next++;
                queue.push_back(p.node);
            }
            return "N" + std::to_string(number[p.node]) + (p.output ? "o" : "i") + std::to_string(p.index);
        };
        for (const auto& b : boundary_order) s += label(b) + "~" + label(mate.at(b)) + ",";
        for (std::size_t seed : seeds) {
            if (number[seed] == npos) {
                number[seed] = next++;
                queue.push_back(seed);
            }
        }
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const std::size_t n = queue[q];
            s += "[" + std::to_string(number[n]) + ":" + nodes[n] + "|";
            for (std::size_t k = 0; k < n_in[n]; ++k) s += label(mate.at(PortRef{n, false, k})) + ",";
            s += "|";
            for (std::size_t k = 0; k < n_out[n]; ++k) s += label(mate.at(PortRef{n, true, k})) + ",";
            s += "]";
        }
        return s;
    };

    std::vector<std::size_t> number(nodes.size(), npos);
    std::vector<PortRef> boundary;
    for (std::size_t i = 0; i < domain.size(); ++i) boundary.push_back({npos, false, i});
    for (std::size_t j = 0; j < codomain.size(); ++j) boundary.push_back({npos, true, j});
    out += encode_from({}, boundary, number);

    std::vector<std::string> closed;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (number[n] != npos) continue;
        // collect this component
        std::vector<std::size_t> comp{n};
        std::vector<bool> in(nodes.size());
        in[n] = true;
        for (std::size_t q = 0; q < comp.size(); ++q)
            for (const auto& [a, b] : mate)
                if (a.node == comp[q] && b.node != npos && !in[b.node]) {
                    in[b.node] = true;
                    comp.push_back(b.node);
                }
        std::string best;
        bool have = false;
        for (std::size_t start : comp) {
            std::vector<std::size_t> local(nodes.size(), npos);
            std::string enc = encode_from({start}, {}, local);
            if (!have || enc < best) best = enc, have = true;
        }
        for (std::size_t c : comp) number[c] = 0;
        closed.push_back(best);
    }
    std::sort(closed.begin(), closed.end());
    for (const auto& c : closed) out += "{" + c + "}";
    return out;
}

}  // namespace dualkit::diagram
