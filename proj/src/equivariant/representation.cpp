#include <deque>

#include "dualkit/equivariant.hpp"

namespace dualkit::equi {

namespace {

Rat parse_rational(const json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
    if (!v.is_string()) throw std::invalid_argument("matrix entries must be integers or \"p/q\" strings");
    Rat r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational '" + v.get<std::string>() + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
}

RatMatrix permutation_matrix(const Perm& p) {
    RatMatrix m(p.size(), p.size());
    for (std::size_t x = 0; x < p.size(); ++x) m(p[x], x) = 1;
    return m;
}

RatMatrix regular_matrix(const PermGroup& g, std::size_t s) {
    RatMatrix m(g.order(), g.order());
    for (std::size_t x = 0; x < g.order(); ++x) m(g.mul(s, x), x) = 1;
    return m;
}

// restriction to the sum-zero subspace, basis e_i - e_{n-1}
RatMatrix sum_zero_part(const RatMatrix& p) {
    const std::size_t n = p.rows();
    if (n == 0) return p;
    RatMatrix m(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) m(i, j) = p(i, j) - p(i, n - 1);
    return m;
}

int perm_sign(const Perm& p) {
    int sign = 1;
    std::vector<bool> seen(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x]) continue;
        std::size_t len = 0;
        for (std::size_t y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

}  // namespace

Representation::Representation(const PermGroup& g, std::size_t dim, std::vector<RatMatrix> gens, std::string name)
    : dim_(dim), name_(std::move(name)) {
    if (gens.size() != g.generators().size())
        throw InvalidRepresentation("need one matrix per generator");
    for (const auto& m : gens)
        if (m.rows() != dim_ || m.cols() != dim_) throw InvalidRepresentation("generator matrix has the wrong size");
    images_.assign(g.order(), RatMatrix());
    std::vector<bool> done(g.order());
    images_[g.identity()] = RatMatrix::identity(dim_);
    done[g.identity()] = true;
    // walk the Cayley graph; every edge must agree with the product
    std::deque<std::size_t> todo{g.identity()};
    while (!todo.empty()) {
        std::size_t cur = todo.front();
        todo.pop_front();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::size_t nxt = g.mul(g.generator_indices()[k], cur);
            RatMatrix img = gens[k] * images_[cur];
            if (!done[nxt]) {
                images_[nxt] = std::move(img);
                done[nxt] = true;
                todo.push_back(nxt);
            } else if (images_[nxt] != img) {
                throw InvalidRepresentation("generator matrices do not define a homomorphism");
            }
        }
    }
    for (const auto& m : images_) {
        Rat tr = 0;
        for (std::size_t i = 0; i < dim_; ++i) tr += m(i, i);
        chars_.push_back(tr);
    }
}

Representation Representation::from_json(const PermGroup& g, const json& j) {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<RatMatrix> mats;
    for (const auto& mj : j.at("matrices")) {
        RatMatrix m(dim, dim);
        if (mj.size() != dim) throw InvalidRepresentation("matrix has the wrong number of rows");
        for (std::size_t i = 0; i < dim; ++i) {
            if (mj[i].size() != dim) throw InvalidRepresentation("matrix row has the wrong length");
            for (std::size_t k = 0; k < dim; ++k) m(i, k) = parse_rational(mj[i][k]);
        }
        mats.push_back(std::move(m));
    }
    return Representation(g, dim, std::move(mats), j.value("name", std::string("custom")));
}

Representation trivial_rep(const PermGroup& g) {
    return Representation(g, 1, std::vector<RatMatrix>(g.generators().size(), RatMatrix::identity(1)), "trivial");
}

Representation sign_rep(const PermGroup& g) {
    std::vector<RatMatrix> mats;
    for (const auto& p : g.generators()) mats.push_back(RatMatrix{{Rat(perm_sign(p))}});
    return Representation(g, 1, std::move(mats), "sign");
}

Representation permutation_rep(const PermGroup& g) {
    std::vector<RatMatrix> mats;
    for (const auto& p : g.generators()) mats.push_back(permutation_matrix(p));
    return Representation(g, g.degree(), std::move(mats), "permutation");
}

Representation reduced_permutation_rep(const PermGroup& g) {
    std::vector<RatMatrix> mats;
    for (const auto& p : g.generators()) mats.push_back(sum_zero_part(permutation_matrix(p)));
    return Representation(g, g.degree() - 1, std::move(mats), "reduced-permutation");
}

Representation regular_rep(const PermGroup& g) {
    std::vector<RatMatrix> mats;
    for (std::size_t s : g.generator_indices()) mats.push_back(regular_matrix(g, s));
    return Representation(g, g.order(), std::move(mats), "regular");
}

Representation reduced_regular_rep(const PermGroup& g) {
    std::vector<RatMatrix> mats;
    for (std::size_t s : g.generator_indices()) mats.push_back(sum_zero_part(regular_matrix(g, s)));
    return Representation(g, g.order() - 1, std::move(mats), "reduced-regular");
}

Representation named_rep(const PermGroup& g, const std::string& name) {
    if (name == "trivial") return trivial_rep(g);
    if (name == "sign") return sign_rep(g);
    if (name == "permutation") return permutation_rep(g);
    if (name == "reduced-permutation" || name == "standard") return reduced_permutation_rep(g);
    if (name == "regular") return regular_rep(g);
    if (name == "reduced-regular") return reduced_regular_rep(g);
    throw std::invalid_argument("unknown representation '" + name + "'");
}

std::size_t fixed_dim(const Representation& v, const ElementSet& h) {
    if (h.empty()) throw std::invalid_argument("empty subgroup");
    Rat sum = 0;
    for (std::size_t x : h) sum += v.character(x);
    Rat avg = sum / Rat(static_cast<unsigned long>(h.size()));
    avg.canonicalize();
    if (avg.get_den() != 1 || avg < 0) throw NonIntegralAverage("character average is not a nonnegative integer");
    return avg.get_num().get_ui();
}

}  // namespace dualkit::equi
