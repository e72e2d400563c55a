#include <algorithm>
#include <deque>

#include "dualkit/equivariant.hpp"

namespace dualkit::equi {

namespace {

Perm compose_perm(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
}

void check_perm(const Perm& p, std::size_t degree) {
    if (p.size() != degree) throw std::invalid_argument("generator has the wrong degree");
    std::vector<bool> seen(degree);
    for (auto v : p) {
        if (v >= degree || seen[v]) throw std::invalid_argument("generator is not a bijection");
        seen[v] = true;
    }
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t bound)
    : degree_(degree), generators_(std::move(generators)) {
    for (const auto& g : generators_) check_perm(g, degree_);
    Perm id(degree_);
    for (std::size_t x = 0; x < degree_; ++x) id[x] = static_cast<std::uint32_t>(x);
    std::set<Perm> seen{id};
    std::deque<Perm> todo{id};
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop_front();
        for (const auto& g : generators_) {
            Perm nxt = compose_perm(g, cur);
            if (seen.insert(nxt).second) {
                if (seen.size() > bound)
                    throw GroupTooLarge("group order exceeds the bound " + std::to_string(bound));
                todo.push_back(std::move(nxt));
            }
        }
    }
    elements_.assign(seen.begin(), seen.end());
    const std::size_t n = elements_.size();
    id_ = index_of(id);
    table_.resize(n * n);
    inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t c = index_of(compose_perm(elements_[a], elements_[b]));
            table_[a * n + b] = c;
            if (c == id_) inv_[a] = b;
        }
    for (const auto& g : generators_) gen_idx_.push_back(index_of(g));
}

std::size_t PermGroup::index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) throw std::invalid_argument("permutation is not in the group");
    return static_cast<std::size_t>(it - elements_.begin());
}

PermGroup PermGroup::from_json(const json& j, std::size_t bound) {
    const std::size_t n = j.at("degree").get<std::size_t>();
    std::vector<Perm> gens;
    for (const auto& g : j.at("generators")) {
        Perm p;
        for (const auto& v : g) {
            auto x = v.get<std::int64_t>();
            if (x < 1 || static_cast<std::size_t>(x) > n) throw std::invalid_argument("image outside 1..degree");
            p.push_back(static_cast<std::uint32_t>(x - 1));
        }
        gens.push_back(std::move(p));
    }
    return PermGroup(n, std::move(gens), bound);
}

json PermGroup::to_json() const {
    json gens = json::array();
    for (const auto& g : generators_) {
        json row = json::array();
        for (auto v : g) row.push_back(v + 1);
        gens.push_back(row);
    }
    return json{{"degree", degree_}, {"generators", gens}};
}

ElementSet PermGroup::generated(const ElementSet& gens) const {
    std::vector<bool> in(order());
    std::vector<std::size_t> todo{id_};
    in[id_] = true;
    while (!todo.empty()) {
        std::size_t cur = todo.back();
        todo.pop_back();
        for (std::size_t g : gens) {
            std::size_t nxt = mul(g, cur);
            if (!in[nxt]) {
                in[nxt] = true;
                todo.push_back(nxt);
            }
        }
    }
    ElementSet out;
    for (std::size_t k = 0; k < order(); ++k)
        if (in[k]) out.push_back(k);
    return out;
}

ElementSet PermGroup::conjugate(std::size_t g, const ElementSet& h) const {
    ElementSet out;
    for (std::size_t x : h) out.push_back(mul(mul(g, x), inv(g)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementSet> PermGroup::subgroups() const {
    std::set<ElementSet> subs;
    for (std::size_t g = 0; g < order(); ++g) subs.insert(generated({g}));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<ElementSet> cur(subs.begin(), subs.end());
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b) {
                ElementSet u;
                std::set_union(cur[a].begin(), cur[a].end(), cur[b].begin(), cur[b].end(), std::back_inserter(u));
                if (subs.insert(generated(u)).second) grew = true;
            }
    }
    return {subs.begin(), subs.end()};
}

}  // namespace dualkit::equi
