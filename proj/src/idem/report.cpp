#include <cstdlib>

#include "dualkit/idem.hpp"

namespace dualkit::idem {

json Report::to_json() const { return json{{"check", check}, {"verdict", verdict}, {"witnesses", witnesses}}; }

CharSplit char_split(const Int& m, const EvConstObject& X) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    auto q = EvConst::cofiber(EvConst::scalar(EvConst::unit(), m));
    auto clopen = clopen_from_closed<EvConst>(q.object, q.quotient);
    auto comp = complement_of_retract<EvConst>(clopen.E, clopen.r, clopen.i);
    CharSplit out{EvConst::tensor(clopen.E, X), EvConst::tensor(comp.C, X), clopen, comp, false};
    out.reassembly_iso = reassembles<EvConst>(X, clopen.r, comp.r);
    return out;
}

EvConstObject sample_evconst_object(std::mt19937_64& rng, bool torsion_only, std::size_t max_summands) {
    static const Prime primes[] = {2, 3, 5};
    std::uniform_int_distribution<std::size_t> count(1, max_summands);
    std::uniform_int_distribution<int> prime(0, 2), kind(0, 2);
    EvConstObject acc = EvConst::zero_object();
    const std::size_t n = count(rng);
    for (std::size_t k = 0; k < n; ++k) {
        const Prime p = primes[prime(rng)];
        const int kd = torsion_only ? 0 : kind(rng);
        EvConstObject piece = kd == 0 ? EvConst::torsion(p) : kd == 1 ? EvConst::local_away({p}) : EvConst::unit();
        acc = EvConst::biproduct(acc, piece).object;
    }
    return acc;
}

SpanObject sample_span_object(std::mt19937_64& rng, std::size_t max_size) {
    return {std::uniform_int_distribution<std::size_t>(0, max_size)(rng)};
}

std::uint64_t seed_from_env() {
    const char* s = std::getenv("DUALKIT_SEED");
    if (!s || !*s) return 0;
    return std::strtoull(s, nullptr, 10);
}

}  // namespace dualkit::idem
