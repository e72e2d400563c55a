#include <numeric>

#include "dualkit/models.hpp"

namespace dualkit {

SpanMorphism SpanFin::make(std::size_t dom, std::size_t cod, NatMatrix m) {
    if (m.rows() != cod || m.cols() != dom) throw DimensionMismatch("span matrix must be cod x dom");
    return {{dom}, {cod}, std::move(m)};
}

SpanMorphism SpanFin::identity(const Object& x) { return make(x.size, x.size, NatMatrix::identity(x.size)); }

SpanMorphism SpanFin::compose(const Morphism& g, const Morphism& f) {
    if (!(f.cod == g.dom)) throw DimensionMismatch("span compose: codomain/domain differ");
    return make(f.dom.size, g.cod.size, g.matrix * f.matrix);
}

SpanObject SpanFin::tensor(const Object& x, const Object& y) { return {x.size * y.size}; }

SpanMorphism SpanFin::tensor(const Morphism& f, const Morphism& g) {
    return make(f.dom.size * g.dom.size, f.cod.size * g.cod.size, kronecker(f.matrix, g.matrix));
}

SpanMorphism SpanFin::braiding(const Object& x, const Object& y) {
    const std::size_t n = x.size, m = y.size;
    NatMatrix p(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) p(j * n + i, i * m + j) = 1;
    return make(n * m, n * m, std::move(p));
}

SpanMorphism SpanFin::braiding_inverse(const Object& x, const Object& y) {
    auto b = braiding(x, y);
    return make(b.cod.size, b.dom.size, NatMatrix(b.matrix.transpose()));
}

Biproduct<SpanObject, SpanMorphism> SpanFin::biproduct(const Object& x, const Object& y) {
    const std::size_t n = x.size, m = y.size;
    NatMatrix in1(n + m, n), in2(n + m, m);
    for (std::size_t i = 0; i < n; ++i) in1(i, i) = 1;
    for (std::size_t i = 0; i < m; ++i) in2(n + i, i) = 1;
    NatMatrix pr1(in1.transpose()), pr2(in2.transpose());
    return {{n + m}, make(n, n + m, in1), make(m, n + m, in2), make(n + m, n, pr1), make(n + m, m, pr2)};
}

SpanMorphism SpanFin::zero_morphism(const Object& x, const Object& y) { return make(x.size, y.size, NatMatrix(y.size, x.size)); }

SpanMorphism SpanFin::add(const Morphism& f, const Morphism& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw DimensionMismatch("span sum: boundaries differ");
    return make(f.dom.size, f.cod.size, f.matrix + g.matrix);
}

SpanMorphism SpanFin::subtract(const Morphism& f, const Morphism& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw DimensionMismatch("span difference: boundaries differ");
    IntMatrix d = static_cast<const IntMatrix&>(f.matrix) - static_cast<const IntMatrix&>(g.matrix);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (d(i, j) < 0) throw std::domain_error("span hom-monoids have no negatives");
    return make(f.dom.size, f.cod.size, NatMatrix(std::move(d)));
}

SpanMorphism SpanFin::scalar(const Object& x, const Int& n) {
    if (n < 0) throw std::domain_error("span hom-monoids have no negatives");
    return make(x.size, x.size, NatMatrix(IntMatrix::identity(x.size).scaled(n)));
}

DualityData<SpanObject, SpanMorphism> SpanFin::duality(const Object& x) {
    const std::size_t n = x.size;
    NatMatrix eta(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) eta(i * n + i, 0) = 1;
    NatMatrix eps(eta.transpose());
    return {x, make(1, n * n, eta), make(n * n, 1, eps)};
}

std::vector<SpanBlock> classify_span(const SpanMorphism& f) {
    const auto& m = f.matrix;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m(i, j) > 1) throw UnsupportedShape("span with a multiplicity above 1 is outside the handled shapes");
    // union-find over sources [0, cols) and targets [cols, cols + rows)
    std::vector<std::size_t> parent(rows + cols);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m(i, j) == 1) parent[find(j)] = find(cols + i);
    std::map<std::size_t, SpanBlock> comps;
    for (std::size_t j = 0; j < cols; ++j) comps[find(j)].sources.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) comps[find(cols + i)].targets.push_back(i);
    std::vector<SpanBlock> blocks;
    for (auto& [root, b] : comps) {
        const std::size_t s = b.sources.size(), t = b.targets.size();
        if (s == 1 && t == 1)
            b.kind = SpanBlock::Kind::Identity;
        else if (s == 0 && t == 1)
            b.kind = SpanBlock::Kind::Unit;
        else if (s >= 2 && t == 1)
            b.kind = SpanBlock::Kind::Forward;
        else if (s == 1 && t == 0)
            b.kind = SpanBlock::Kind::Counit;
        else if (s == 1 && t >= 2)
            b.kind = SpanBlock::Kind::Backward;
        else
            throw UnsupportedShape("span block with " + std::to_string(s) + " sources and " + std::to_string(t) +
                                   " targets is outside the handled shapes");
        blocks.push_back(std::move(b));
    }
    return blocks;
}

CofiberResult<SpanObject, SpanMorphism> SpanFin::cofiber(const Morphism& f) {
    auto blocks = classify_span(f);
    std::vector<std::size_t> kept;
    std::vector<std::string> prov;
    for (const auto& b : blocks) {
        switch (b.kind) {
            case SpanBlock::Kind::Identity:
                prov.push_back("identity 1->1 => 0");
                break;
            case SpanBlock::Kind::Unit:
                prov.push_back("forward 0->1 => 1");
                kept.push_back(b.targets[0]);
                break;
            case SpanBlock::Kind::Forward:
                prov.push_back("fold " + std::to_string(b.sources.size()) + "->1 => 0");
                break;
            case SpanBlock::Kind::Counit:
                prov.push_back("backward 1<-0 => 0");
                break;
            case SpanBlock::Kind::Backward:
                prov.push_back("backward 1<-" + std::to_string(b.targets.size()) + " => 0");
                break;
        }
    }
    std::sort(kept.begin(), kept.end());
    NatMatrix q(kept.size(), f.cod.size);
    for (std::size_t c = 0; c < kept.size(); ++c) q(c, kept[c]) = 1;
    return {{kept.size()}, make(f.cod.size, kept.size(), q), prov};
}

SpanMorphism SpanFin::factor_through(const Morphism& q, const Morphism& theta) {
    if (!(q.dom == theta.dom)) throw DimensionMismatch("factor_through: domains differ");
    NatMatrix u(theta.matrix * NatMatrix(q.matrix.transpose()));
    auto res = make(q.cod.size, theta.cod.size, u);
    if (!(compose(res, q) == theta)) throw NotFactorizable("morphism does not factor through the quotient");
    return res;
}

std::optional<SpanMorphism> SpanFin::inverse(const Morphism& f) {
    if (f.dom.size != f.cod.size) return std::nullopt;
    const auto& m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j);
        if (row != 1) return std::nullopt;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Int col = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) col += m(i, j);
        if (col != 1) return std::nullopt;
    }
    return make(f.cod.size, f.dom.size, NatMatrix(m.transpose()));
}

SpanObject SpanFin::suspension(const Object& x) { return cofiber(zero_morphism(x, zero_object())).object; }

std::vector<HomBlock> SpanFin::hom_blocks(const Object& x, const Object& y, const std::set<Prime>&) {
    return {HomBlock{HomBlock::Kind::Nat, 0, x.size * y.size}};
}

HomCoords SpanFin::coordinates(const Morphism& f, const std::set<Prime>&) {
    std::vector<Int> v;
    for (std::size_t i = 0; i < f.matrix.rows(); ++i)
        for (std::size_t j = 0; j < f.matrix.cols(); ++j) v.push_back(f.matrix(i, j));
    return {v};
}

SpanMorphism SpanFin::basis_morphism(const Object& x, const Object& y, std::size_t, std::size_t index,
                                     const std::set<Prime>&) {
    NatMatrix m(y.size, x.size);
    m(index / x.size, index % x.size) = 1;
    return make(x.size, y.size, m);
}

json SpanFin::to_json(const Object& x) { return x.size; }

json SpanFin::to_json(const Morphism& f) {
    return json{{"dom", f.dom.size}, {"cod", f.cod.size}, {"matrix", rows_json(f.matrix)}};
}

std::string SpanFin::describe(const Object& x) { return std::to_string(x.size); }

SpanMorphism span_from_shape(const std::string& shape, const std::vector<std::size_t>& sizes) {
    auto need = [&](std::size_t k) {
        if (sizes.size() != k) throw std::invalid_argument("shape '" + shape + "' takes " + std::to_string(k) + " sizes");
    };
    if (shape == "identity") {
        need(1);
        return SpanFin::identity({sizes[0]});
    }
    if (shape == "zero") {
        need(2);
        return SpanFin::zero_morphism({sizes[0]}, {sizes[1]});
    }
    if (shape == "forward" || shape == "backward") {
        // forward a,b: source j lands on target j mod b; backward a,b reverses it (a map b -> a)
        need(2);
        const std::size_t a = sizes[0], b = sizes[1];
        if (b == 0 && a > 0) throw std::invalid_argument("no function from a nonempty set to the empty set");
        NatMatrix m(b, a);
        for (std::size_t j = 0; j < a; ++j) m(j % b, j) = 1;
        if (shape == "forward") return SpanFin::make(a, b, m);
        return SpanFin::make(b, a, NatMatrix(m.transpose()));
    }
    throw std::invalid_argument("unknown span shape '" + shape + "'");
}

}  // namespace dualkit
