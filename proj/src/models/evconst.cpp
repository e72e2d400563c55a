#include <algorithm>
#include <sstream>

#include "dualkit/models.hpp"

namespace dualkit {

namespace {

using PrimeSet = std::set<Prime>;

PrimeSet keys_of(const std::map<Prime, FpMatrix>& m) {
    PrimeSet s;
    for (const auto& [p, _] : m) s.insert(p);
    return s;
}

void merge(PrimeSet& into, const PrimeSet& from) { into.insert(from.begin(), from.end()); }

IntMatrix swap_matrix(std::size_t n, std::size_t m) {
    IntMatrix p(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) p(j * n + i, i * m + j) = 1;
    return p;
}

FpMatrix swap_matrix_fp(Prime p, std::size_t n, std::size_t m) { return FpMatrix::reduce(swap_matrix(n, m), p); }

IntMatrix stack_identity(std::size_t total, std::size_t offset, std::size_t n) {
    IntMatrix m(total, n);
    for (std::size_t i = 0; i < n; ++i) m(offset + i, i) = 1;
    return m;
}

IntMatrix vec_identity(std::size_t n) {
    IntMatrix m(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) m(i * n + i, 0) = 1;
    return m;
}

// Make the first nonzero entry of each row positive.
void normalize_row_signs(IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            if (m(i, j) < 0)
                for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = -m(i, k);
            break;
        }
}

// Some X with X * A = B over the integers; throws NotFactorizable.
IntMatrix solve_left_int(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols() != B.cols()) throw DimensionMismatch("solve_left_int: column counts differ");
    SmithForm s = smith_normal_form(A);
    IntMatrix BV = B * s.V;
    IntMatrix W(B.rows(), A.rows());
    const auto diag = s.diagonal();
    for (std::size_t j = 0; j < A.cols(); ++j) {
        const bool pivot = j < diag.size() && diag[j] != 0;
        for (std::size_t i = 0; i < B.rows(); ++i) {
            if (!pivot) {
                if (BV(i, j) != 0) throw NotFactorizable("no integral solution");
                continue;
            }
            if (BV(i, j) % diag[j] != 0) throw NotFactorizable("no integral solution");
            W(i, j) = BV(i, j) / diag[j];
        }
    }
    return W * s.U;
}

}  // namespace

std::vector<Prime> prime_factors(Int n) {
    std::vector<Prime> ps;
    if (n < 0) n = -n;
    if (n < 2) return ps;
    for (unsigned long d = 2; Int(d) * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (!n.fits_ulong_p()) throw std::overflow_error("prime factor too large");
        ps.push_back(n.get_ui());
    }
    return ps;
}

EvConstObject::EvConstObject(std::size_t free_rank, std::map<Prime, std::size_t> exceptional) : f(free_rank) {
    for (const auto& [p, d] : exceptional) {
        if (!is_prime(p)) throw std::invalid_argument("exceptional key " + std::to_string(p) + " is not prime");
        if (d != f) exc[p] = d;
    }
}

std::size_t EvConstObject::dim_at(Prime p) const {
    auto it = exc.find(p);
    return it == exc.end() ? f : it->second;
}

std::set<Prime> EvConstObject::primes() const {
    std::set<Prime> s;
    for (const auto& [p, _] : exc) s.insert(p);
    return s;
}

FpMatrix EvConstMorphism::component(Prime p) const {
    auto it = explicit_.find(p);
    if (it != explicit_.end()) return it->second;
    if (dom.exc.count(p) || cod.exc.count(p))
        throw std::logic_error("missing explicit component at an exceptional prime");
    return FpMatrix::reduce(free, p);
}

EvConstMorphism EvConst::canonical(Morphism f) {
    for (auto it = f.explicit_.begin(); it != f.explicit_.end();) {
        const Prime p = it->first;
        if (!f.dom.exc.count(p) && !f.cod.exc.count(p) && it->second == FpMatrix::reduce(f.free, p))
            it = f.explicit_.erase(it);
        else
            ++it;
    }
    return f;
}

EvConstMorphism EvConst::make(Object dom, Object cod, IntMatrix free, std::map<Prime, FpMatrix> explicit_) {
    if (free.rows() != cod.f || free.cols() != dom.f) throw DimensionMismatch("free part must be cod.f x dom.f");
    PrimeSet needed = dom.primes();
    merge(needed, cod.primes());
    for (Prime p : needed)
        if (!explicit_.count(p)) {
            if (dom.dim_at(p) == 0 || cod.dim_at(p) == 0)
                explicit_.emplace(p, FpMatrix(p, cod.dim_at(p), dom.dim_at(p)));
            else
                throw std::invalid_argument("missing component at exceptional prime " + std::to_string(p));
        }
    for (const auto& [p, m] : explicit_) {
        if (m.prime() != p) throw std::invalid_argument("component keyed by the wrong prime");
        if (m.rows() != cod.dim_at(p) || m.cols() != dom.dim_at(p))
            throw DimensionMismatch("component at " + std::to_string(p) + " has the wrong shape");
    }
    return canonical(Morphism{std::move(dom), std::move(cod), std::move(free), std::move(explicit_)});
}

EvConstMorphism EvConst::identity(const Object& x) {
    std::map<Prime, FpMatrix> e;
    for (Prime p : x.primes()) e.emplace(p, FpMatrix::identity(p, x.dim_at(p)));
    return make(x, x, IntMatrix::identity(x.f), e);
}

EvConstMorphism EvConst::compose(const Morphism& g, const Morphism& f) {
    if (!(f.cod == g.dom)) throw DimensionMismatch("evconst compose: codomain/domain differ");
    PrimeSet ps = keys_of(f.explicit_);
    merge(ps, keys_of(g.explicit_));
    merge(ps, f.dom.primes());
    merge(ps, f.cod.primes());
    merge(ps, g.cod.primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) e.emplace(p, g.component(p) * f.component(p));
    return make(f.dom, g.cod, g.free * f.free, e);
}

EvConstObject EvConst::tensor(const Object& x, const Object& y) {
    std::map<Prime, std::size_t> exc;
    PrimeSet ps = x.primes();
    merge(ps, y.primes());
    for (Prime p : ps) exc[p] = x.dim_at(p) * y.dim_at(p);
    return Object(x.f * y.f, exc);
}

EvConstMorphism EvConst::tensor(const Morphism& f, const Morphism& g) {
    PrimeSet ps = keys_of(f.explicit_);
    merge(ps, keys_of(g.explicit_));
    for (const auto* o : {&f.dom, &f.cod, &g.dom, &g.cod}) merge(ps, o->primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) e.emplace(p, kronecker(f.component(p), g.component(p)));
    return make(tensor(f.dom, g.dom), tensor(f.cod, g.cod), kronecker(f.free, g.free), e);
}

EvConstMorphism EvConst::braiding(const Object& x, const Object& y) {
    PrimeSet ps = x.primes();
    merge(ps, y.primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) e.emplace(p, swap_matrix_fp(p, x.dim_at(p), y.dim_at(p)));
    return make(tensor(x, y), tensor(y, x), swap_matrix(x.f, y.f), e);
}

EvConstMorphism EvConst::braiding_inverse(const Object& x, const Object& y) { return braiding(y, x); }

Biproduct<EvConstObject, EvConstMorphism> EvConst::biproduct(const Object& x, const Object& y) {
    PrimeSet ps = x.primes();
    merge(ps, y.primes());
    std::map<Prime, std::size_t> exc;
    for (Prime p : ps) exc[p] = x.dim_at(p) + y.dim_at(p);
    Object s(x.f + y.f, exc);
    std::map<Prime, FpMatrix> in1, in2, pr1, pr2;
    for (Prime p : ps) {
        const std::size_t dx = x.dim_at(p), dy = y.dim_at(p);
        auto i1 = FpMatrix::reduce(stack_identity(dx + dy, 0, dx), p);
        auto i2 = FpMatrix::reduce(stack_identity(dx + dy, dx, dy), p);
        in1.emplace(p, i1);
        in2.emplace(p, i2);
        pr1.emplace(p, i1.transpose());
        pr2.emplace(p, i2.transpose());
    }
    IntMatrix fi1 = stack_identity(x.f + y.f, 0, x.f), fi2 = stack_identity(x.f + y.f, x.f, y.f);
    return {s, make(x, s, fi1, in1), make(y, s, fi2, in2), make(s, x, fi1.transpose(), pr1),
            make(s, y, fi2.transpose(), pr2)};
}

EvConstMorphism EvConst::zero_morphism(const Object& x, const Object& y) {
    PrimeSet ps = x.primes();
    merge(ps, y.primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) e.emplace(p, FpMatrix(p, y.dim_at(p), x.dim_at(p)));
    return make(x, y, IntMatrix(y.f, x.f), e);
}

EvConstMorphism EvConst::add(const Morphism& f, const Morphism& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw DimensionMismatch("evconst sum: boundaries differ");
    PrimeSet ps = keys_of(f.explicit_);
    merge(ps, keys_of(g.explicit_));
    merge(ps, f.dom.primes());
    merge(ps, f.cod.primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) e.emplace(p, f.component(p) + g.component(p));
    return make(f.dom, f.cod, f.free + g.free, e);
}

EvConstMorphism EvConst::subtract(const Morphism& f, const Morphism& g) {
    return add(f, compose(scalar(g.cod, -1), g));
}

EvConstMorphism EvConst::scalar(const Object& x, const Int& n) {
    std::map<Prime, FpMatrix> e;
    for (Prime p : x.primes()) {
        FpMatrix m(p, x.dim_at(p), x.dim_at(p));
        Int r = n % Int(static_cast<unsigned long>(p));
        for (std::size_t i = 0; i < x.dim_at(p); ++i) m.set(i, i, r.get_si());
        e.emplace(p, m);
    }
    return make(x, x, IntMatrix::identity(x.f).scaled(n), e);
}

DualityData<EvConstObject, EvConstMorphism> EvConst::duality(const Object& x) {
    std::map<Prime, FpMatrix> eta, eps;
    for (Prime p : x.primes()) {
        auto v = FpMatrix::reduce(vec_identity(x.dim_at(p)), p);
        eta.emplace(p, v);
        eps.emplace(p, v.transpose());
    }
    Object xx = tensor(x, x);
    IntMatrix v = vec_identity(x.f);
    return {x, make(unit(), xx, v, eta), make(xx, unit(), v.transpose(), eps)};
}

CofiberResult<EvConstObject, EvConstMorphism> EvConst::cofiber(const Morphism& phi) {
    const Object& Y = phi.cod;
    SmithForm s = smith_normal_form(phi.free);
    const std::size_t r = s.rank();
    const std::size_t F = Y.f - r;
    IntMatrix q0 = s.U.submatrix(r, Y.f, 0, Y.f);
    normalize_row_signs(q0);

    PrimeSet ps = keys_of(phi.explicit_);
    merge(ps, phi.dom.primes());
    merge(ps, Y.primes());
    std::vector<std::string> prov;
    std::ostringstream free_note;
    free_note << "free: coker rank " << F << ", invariant factors [";
    bool first = true;
    for (const auto& d : s.diagonal()) {
        if (d == 0) continue;
        if (!first) free_note << ", ";
        free_note << d.get_str();
        first = false;
        if (d > 1)
            for (Prime p : prime_factors(d)) ps.insert(p);
    }
    free_note << "]";
    prov.push_back(free_note.str());

    std::map<Prime, std::size_t> exc;
    std::map<Prime, FpMatrix> qe;
    for (Prime p : ps) {
        FpMatrix phip = phi.component(p);
        const std::size_t rk = phip.rank();
        const std::size_t dc = Y.dim_at(p) - rk;
        exc[p] = dc;
        prov.push_back("p=" + std::to_string(p) + ": dim " + std::to_string(Y.dim_at(p)) + " - rank " +
                       std::to_string(rk) + " = " + std::to_string(dc));
        if (dc == F && Y.dim_at(p) == Y.f) {
            FpMatrix cand = FpMatrix::reduce(q0, p);
            if ((cand * phip).is_zero() && cand.rank() == F) {
                qe.emplace(p, cand);
                continue;
            }
        }
        qe.emplace(p, phip.left_kernel());
    }
    Object C(F, exc);
    return {C, make(Y, C, q0, qe), prov};
}

EvConstMorphism EvConst::factor_through(const Morphism& q, const Morphism& theta) {
    if (!(q.dom == theta.dom)) throw DimensionMismatch("factor_through: domains differ");
    IntMatrix u0 = solve_left_int(q.free, theta.free);
    PrimeSet ps = keys_of(q.explicit_);
    merge(ps, keys_of(theta.explicit_));
    merge(ps, q.dom.primes());
    merge(ps, q.cod.primes());
    merge(ps, theta.cod.primes());
    std::map<Prime, FpMatrix> e;
    for (Prime p : ps) {
        try {
            e.emplace(p, q.component(p).transpose().solve_right(theta.component(p).transpose()).transpose());
        } catch (const NotInvertible&) {
            throw NotFactorizable("component at " + std::to_string(p) + " does not factor");
        }
    }
    auto u = make(q.cod, theta.cod, u0, e);
    if (!(compose(u, q) == theta)) throw NotFactorizable("morphism does not factor through the quotient");
    return u;
}

std::optional<EvConstMorphism> EvConst::inverse(const Morphism& f) {
    try {
        IntMatrix fi = invert_or_fail(f.free);
        PrimeSet ps = keys_of(f.explicit_);
        merge(ps, f.dom.primes());
        merge(ps, f.cod.primes());
        std::map<Prime, FpMatrix> e;
        for (Prime p : ps) e.emplace(p, invert_or_fail(f.component(p)));
        return make(f.cod, f.dom, fi, e);
    } catch (const NotInvertible&) {
        return std::nullopt;
    }
}

std::vector<HomBlock> EvConst::hom_blocks(const Object& x, const Object& y, const std::set<Prime>& ctx) {
    std::vector<HomBlock> blocks;
    blocks.push_back({HomBlock::Kind::Free, 0, x.f * y.f});
    PrimeSet ps = ctx;
    merge(ps, x.primes());
    merge(ps, y.primes());
    for (Prime p : ps) blocks.push_back({HomBlock::Kind::Fp, p, x.dim_at(p) * y.dim_at(p)});
    return blocks;
}

HomCoords EvConst::coordinates(const Morphism& f, const std::set<Prime>& ctx) {
    HomCoords c;
    std::vector<Int> fr;
    for (std::size_t i = 0; i < f.free.rows(); ++i)
        for (std::size_t j = 0; j < f.free.cols(); ++j) fr.push_back(f.free(i, j));
    c.push_back(fr);
    PrimeSet ps = ctx;
    merge(ps, f.dom.primes());
    merge(ps, f.cod.primes());
    for (Prime p : ps) {
        FpMatrix comp = f.component(p);
        // away from the exceptional primes a coordinate is the deviation from the free part
        if (!f.dom.exc.count(p) && !f.cod.exc.count(p)) comp = comp - FpMatrix::reduce(f.free, p);
        std::vector<Int> v;
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j) v.push_back(Int(static_cast<unsigned long>(comp(i, j))));
        c.push_back(v);
    }
    return c;
}

EvConstMorphism EvConst::basis_morphism(const Object& x, const Object& y, std::size_t block, std::size_t index,
                                        const std::set<Prime>& ctx) {
    PrimeSet ps = ctx;
    merge(ps, x.primes());
    merge(ps, y.primes());
    std::vector<Prime> order(ps.begin(), ps.end());
    IntMatrix free(y.f, x.f);
    if (block == 0) free(index / x.f, index % x.f) = 1;
    std::map<Prime, FpMatrix> e;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Prime p = order[k];
        const bool exceptional = x.exc.count(p) || y.exc.count(p);
        FpMatrix m = exceptional ? FpMatrix(p, y.dim_at(p), x.dim_at(p)) : FpMatrix::reduce(free, p);
        if (block == k + 1) m.set(index / x.dim_at(p), index % x.dim_at(p), (m(index / x.dim_at(p), index % x.dim_at(p)) + 1) % p);
        e.emplace(p, m);
    }
    return make(x, y, free, e);
}

std::optional<Int> EvConst::hom_size(const Object& x, const Object& y) {
    if (x.f * y.f != 0) return std::nullopt;
    PrimeSet ps = x.primes();
    merge(ps, y.primes());
    Int n = 1;
    for (Prime p : ps) {
        Int pp(static_cast<unsigned long>(p));
        for (std::size_t k = 0; k < x.dim_at(p) * y.dim_at(p); ++k) n *= pp;
    }
    return n;
}

json EvConst::to_json(const Object& x) {
    json exc = json::object();
    for (const auto& [p, d] : x.exc) exc[std::to_string(p)] = d;
    return json{{"f", x.f}, {"exc", exc}};
}

json EvConst::to_json(const Morphism& f) {
    json ex = json::object();
    for (const auto& [p, m] : f.explicit_) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(row);
        }
        ex[std::to_string(p)] = rows;
    }
    return json{{"dom", to_json(f.dom)}, {"cod", to_json(f.cod)}, {"free", rows_json(f.free)}, {"explicit", ex}};
}

EvConstObject EvConst::object_from_json(const json& j) {
    std::map<Prime, std::size_t> exc;
    if (j.contains("exc"))
        for (const auto& [k, v] : j.at("exc").items()) exc[std::stoull(k)] = v.get<std::size_t>();
    return Object(j.at("f").get<std::size_t>(), exc);
}

EvConstMorphism EvConst::morphism_from_json(const json& j, const Object* dom, const Object* cod) {
    IntMatrix free = int_matrix_from_json(j.at("free"));
    std::map<Prime, IntMatrix> raws;
    std::map<Prime, std::size_t> dexc, cexc;
    if (j.contains("explicit"))
        for (const auto& [k, v] : j.at("explicit").items()) {
            Prime p = std::stoull(k);
            if (!is_prime(p)) throw std::invalid_argument("explicit key " + k + " is not prime");
            IntMatrix raw = int_matrix_from_json(v);
            dexc[p] = raw.cols();
            cexc[p] = raw.rows();
            raws.emplace(p, std::move(raw));
        }
    // a 1x0 / 0x1 free part cannot be told apart from JSON alone; zero rows mean zero cols too
    std::size_t fr = free.rows(), fc = free.cols();
    Object d = dom ? *dom : j.contains("dom") ? object_from_json(j.at("dom")) : Object(fc, dexc);
    Object c = cod ? *cod : j.contains("cod") ? object_from_json(j.at("cod")) : Object(fr, cexc);
    if (free.rows() != c.f || free.cols() != d.f) {
        if (free.rows() == 0 || free.cols() == 0)
            free = IntMatrix(c.f, d.f);
        else
            throw DimensionMismatch("free part does not match the declared objects");
    }
    std::map<Prime, FpMatrix> e;
    for (auto& [p, raw] : raws) {
        // empty blocks carry no shape in JSON
        if (raw.rows() == 0 || raw.cols() == 0) raw = IntMatrix(c.dim_at(p), d.dim_at(p));
        e.emplace(p, FpMatrix::reduce(raw, p));
    }
    return make(d, c, free, e);
}

std::string EvConst::describe(const Object& x) {
    std::ostringstream os;
    os << "(f=" << x.f << ", {";
    bool first = true;
    for (const auto& [p, d] : x.exc) {
        if (!first) os << ", ";
        os << p << ":" << d;
        first = false;
    }
    os << "})";
    return os.str();
}

EvConstObject EvConst::local_away(std::vector<Prime> ps) {
    std::map<Prime, std::size_t> exc;
    for (Prime p : ps) exc[p] = 0;
    return Object(1, exc);
}

EvConstObject EvConst::parse_object(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (!t.empty() && t[0] == '{') return object_from_json(json::parse(t));
    Object acc = zero_object();
    std::size_t pos = 0;
    while (pos <= t.size()) {
        std::size_t end = t.find('+', pos);
        if (end == std::string::npos) end = t.size();
        std::string term = t.substr(pos, end - pos);
        if (term.empty()) throw std::invalid_argument("empty summand in '" + text + "'");
        std::size_t mult = 1;
        if (auto star = term.find('*'); star != std::string::npos) {
            mult = std::stoull(term.substr(0, star));
            term = term.substr(star + 1);
        }
        Object piece;
        if (term == "0") {
            piece = zero_object();
        } else if (term == "S") {
            piece = unit();
        } else if (term.rfind("S/", 0) == 0) {
            piece = cofiber(scalar(unit(), Int(term.substr(2)))).object;
        } else if (term.rfind("S(", 0) == 0 && term.back() == ')') {
            piece = local_away(prime_factors(Int(term.substr(2, term.size() - 3))));
        } else {
            throw std::invalid_argument("cannot parse object '" + term + "'");
        }
        for (std::size_t k = 0; k < mult; ++k) acc = biproduct(acc, piece).object;
        pos = end + 1;
    }
    return acc;
}

}  // namespace dualkit
