#include <algorithm>

#include "dualkit/equivariant.hpp"

namespace dualkit::equi {

ConjugacyPoset::ConjugacyPoset(const PermGroup& g) {
    auto subs = g.subgroups();
    std::set<ElementSet> assigned;
    for (const auto& h : subs) {
        if (assigned.count(h)) continue;
        std::set<ElementSet> conj;
        for (std::size_t x = 0; x < g.order(); ++x) conj.insert(g.conjugate(x, h));
        assigned.insert(conj.begin(), conj.end());
        classes_.push_back({std::vector<ElementSet>(conj.begin(), conj.end())});
    }
    std::sort(classes_.begin(), classes_.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.representative() < b.representative();
    });
    const std::size_t n = classes_.size();
    leq_.assign(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto rep = classes_[a].representative();
            for (const auto& m : classes_[b].members)
                if (std::includes(m.begin(), m.end(), rep.begin(), rep.end())) {
                    leq_[a * n + b] = true;
                    break;
                }
        }
    for (std::size_t c = 0; c < n; ++c) weyl_.push_back(weyl_group(g, *this, c).order);
}

ConjugacyPoset enumerate_subgroup_classes(const PermGroup& g) { return ConjugacyPoset(g); }

WeylGroup weyl_group(const PermGroup& g, const ConjugacyPoset& poset, std::size_t cls) {
    const ElementSet h = poset.classes().at(cls).representative();
    std::vector<std::size_t> normalizer;
    for (std::size_t x = 0; x < g.order(); ++x)
        if (g.conjugate(x, h) == h) normalizer.push_back(x);
    // coset xH represented by its least element index
    std::set<std::size_t> reps;
    for (std::size_t x : normalizer) {
        std::size_t least = g.order();
        for (std::size_t y : h) least = std::min(least, g.mul(x, y));
        reps.insert(least);
    }
    return {normalizer.size() / h.size(), std::vector<std::size_t>(reps.begin(), reps.end())};
}

std::size_t ConjugacyPoset::class_of(const ElementSet& h) const {
    for (std::size_t c = 0; c < classes_.size(); ++c)
        if (std::binary_search(classes_[c].members.begin(), classes_[c].members.end(), h)) return c;
    throw std::invalid_argument("not a subgroup of this group");
}

std::vector<std::size_t> ConjugacyPoset::orders() const {
    std::vector<std::size_t> o;
    for (const auto& c : classes_) o.push_back(c.order());
    return o;
}

std::string ConjugacyPoset::label(std::size_t c) const {
    const std::size_t ord = classes_.at(c).order();
    std::size_t same = 0, pos = 0;
    for (std::size_t k = 0; k < classes_.size(); ++k)
        if (classes_[k].order() == ord) {
            if (k == c) pos = same;
            ++same;
        }
    std::string s = "H" + std::to_string(ord);
    if (same > 1) s += static_cast<char>('a' + pos);
    return s;
}

std::set<std::size_t> ConjugacyPoset::down(std::size_t c) const {
    std::set<std::size_t> s;
    for (std::size_t k = 0; k < size(); ++k)
        if (leq(k, c)) s.insert(k);
    return s;
}

std::set<std::size_t> ConjugacyPoset::up(std::size_t c) const {
    std::set<std::size_t> s;
    for (std::size_t k = 0; k < size(); ++k)
        if (leq(c, k)) s.insert(k);
    return s;
}

std::set<std::size_t> ConjugacyPoset::all() const {
    std::set<std::size_t> s;
    for (std::size_t k = 0; k < size(); ++k) s.insert(k);
    return s;
}

bool ConjugacyPoset::is_upset(const std::set<std::size_t>& s) const {
    for (std::size_t a : s)
        for (std::size_t b = 0; b < size(); ++b)
            if (leq(a, b) && !s.count(b)) return false;
    return true;
}

bool ConjugacyPoset::is_downset(const std::set<std::size_t>& s) const {
    for (std::size_t a : s)
        for (std::size_t b = 0; b < size(); ++b)
            if (leq(b, a) && !s.count(b)) return false;
    return true;
}

bool ConjugacyPoset::is_convex(const std::set<std::size_t>& s) const {
    for (std::size_t a : s)
        for (std::size_t c : s)
            for (std::size_t b = 0; b < size(); ++b)
                if (leq(a, b) && leq(b, c) && !s.count(b)) return false;
    return true;
}

std::vector<std::size_t> ConjugacyPoset::minimal(const std::set<std::size_t>& s) const {
    std::vector<std::size_t> out;
    for (std::size_t a : s) {
        bool min = true;
        for (std::size_t b : s)
            if (b != a && leq(b, a)) min = false;
        if (min) out.push_back(a);
    }
    // class indices are already sorted by (order, element set)
    return out;
}

IntervalSphere::IntervalSphere(const ConjugacyPoset& poset, std::set<std::size_t> classes) : classes_(std::move(classes)) {
    for (std::size_t c : classes_)
        if (c >= poset.size()) throw std::invalid_argument("class index out of range");
    if (!poset.is_convex(classes_)) throw std::invalid_argument("class set is not order-convex");
}

IntervalSphere interval_smash(const ConjugacyPoset& poset, const IntervalSphere& a, const IntervalSphere& b) {
    std::set<std::size_t> out;
    std::set_intersection(a.classes().begin(), a.classes().end(), b.classes().begin(), b.classes().end(),
                          std::inserter(out, out.begin()));
    return IntervalSphere(poset, out);
}

CofiberSequence cofiber_upset_sequence(const ConjugacyPoset& poset, const std::set<std::size_t>& downset) {
    if (!poset.is_downset(downset)) throw NotADownset("class set is not downward closed");
    std::set<std::size_t> up;
    for (std::size_t k = 0; k < poset.size(); ++k)
        if (!downset.count(k)) up.insert(k);
    if (!poset.is_upset(up)) throw std::logic_error("complement of a downset is not an upset");
    return {downset, poset.all(), up};
}

void validate_action(const PermGroup& g, const ActionTable& action) {
    if (action.size() != g.order()) throw InvalidAction("action table needs one row per group element");
    const std::size_t m = action.empty() ? 0 : action[0].size();
    for (const auto& row : action) {
        if (row.size() != m) throw InvalidAction("ragged action table");
        std::vector<bool> seen(m);
        for (auto v : row) {
            if (v >= m || seen[v]) throw InvalidAction("an element does not act by a bijection");
            seen[v] = true;
        }
    }
    for (std::size_t x = 0; x < m; ++x)
        if (action[g.identity()][x] != x) throw InvalidAction("identity does not act trivially");
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            for (std::size_t x = 0; x < m; ++x)
                if (action[g.mul(a, b)][x] != action[a][action[b][x]])
                    throw InvalidAction("action is not compatible with multiplication");
}

ActionTable coset_action(const PermGroup& g, const ElementSet& h) {
    std::vector<ElementSet> cosets;
    std::map<ElementSet, std::size_t> index;
    for (std::size_t x = 0; x < g.order(); ++x) {
        ElementSet c;
        for (std::size_t y : h) c.push_back(g.mul(x, y));
        std::sort(c.begin(), c.end());
        if (index.emplace(c, cosets.size()).second) cosets.push_back(c);
    }
    ActionTable t(g.order(), std::vector<std::size_t>(cosets.size()));
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t k = 0; k < cosets.size(); ++k) {
            ElementSet c;
            for (std::size_t y : cosets[k]) c.push_back(g.mul(a, y));
            std::sort(c.begin(), c.end());
            t[a][k] = index.at(c);
        }
    return t;
}

bool untwisting_check(const PermGroup& g, const ActionTable& action) {
    validate_action(g, action);
    const std::size_t n = g.order(), m = action.empty() ? 0 : action[0].size();
    auto phi = [&](std::size_t a, std::size_t x) { return std::make_pair(a, action[a][x]); };
    auto psi = [&](std::size_t a, std::size_t x) { return std::make_pair(a, action[g.inv(a)][x]); };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t x = 0; x < m; ++x) {
            auto [b, y] = phi(a, x);
            if (psi(b, y) != std::make_pair(a, x)) return false;
            auto [c, z] = psi(a, x);
            if (phi(c, z) != std::make_pair(a, x)) return false;
            // h.(a, x) = (ha, x) on the left; h.(a, x) = (ha, hx) diagonally
            for (std::size_t h = 0; h < n; ++h) {
                auto lhs = phi(g.mul(h, a), x);
                auto rhs = std::make_pair(g.mul(h, b), action[h][y]);
                if (lhs != rhs) return false;
            }
        }
    return true;
}

}  // namespace dualkit::equi
