#include <fstream>

#include "dualkit/equivariant.hpp"

namespace dualkit::equi {

namespace {

Perm one_based(std::initializer_list<std::uint32_t> images) {
    Perm p;
    for (auto v : images) p.push_back(v - 1);
    return p;
}

// left multiplication by i and j on {+-1, +-i, +-j, +-k}; index = 2 * unit + (negative)
PermGroup quaternion_group() {
    // unit products: u * v = sign * w, units 0=1, 1=i, 2=j, 3=k
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    auto left = [&](int u) {
        Perm p(8);
        for (int x = 0; x < 8; ++x) {
            const int v = x / 2, neg = x % 2;
            const int w = unit[u][v];
            const int sg = sign[u][v] * (neg ? -1 : 1);
            p[x] = static_cast<std::uint32_t>(2 * w + (sg < 0 ? 1 : 0));
        }
        return p;
    };
    return PermGroup(8, {left(1), left(2)});
}

}  // namespace

std::vector<std::string> preset_names() { return {"c2", "c4", "s3", "d4", "q8", "a4", "trivial"}; }

PermGroup preset_group(const std::string& name) {
    if (name == "c2") return PermGroup(2, {one_based({2, 1})});
    if (name == "c4") return PermGroup(4, {one_based({2, 3, 4, 1})});
    if (name == "s3") return PermGroup(3, {one_based({2, 1, 3}), one_based({2, 3, 1})});
    if (name == "d4") return PermGroup(4, {one_based({2, 3, 4, 1}), one_based({4, 3, 2, 1})});
    if (name == "q8") return quaternion_group();
    if (name == "a4") return PermGroup(4, {one_based({2, 3, 1, 4}), one_based({1, 3, 4, 2})});
    if (name == "trivial") return PermGroup(1, {});
    throw std::invalid_argument("unknown group preset '" + name + "'");
}

PermGroup load_group(const std::string& name_or_path) {
    for (const auto& n : preset_names())
        if (n == name_or_path) return preset_group(n);
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("no preset or readable file named '" + name_or_path + "'");
    return PermGroup::from_json(json::parse(in));
}

}  // namespace dualkit::equi
