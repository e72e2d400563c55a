#include "dualkit/models.hpp"

namespace dualkit {

SpanMorphism span_morphism_from_json(const json& j) {
    NatMatrix m = nat_matrix_from_json(j.at("matrix"));
    const std::size_t dom = j.contains("dom") ? j.at("dom").get<std::size_t>() : m.cols();
    const std::size_t cod = j.contains("cod") ? j.at("cod").get<std::size_t>() : m.rows();
    if (m.rows() == 0 || m.cols() == 0) m = NatMatrix(cod, dom);
    return SpanFin::make(dom, cod, std::move(m));
}

}  // namespace dualkit
