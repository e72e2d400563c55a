#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualkit/json.hpp"
#include "dualkit/models.hpp"

namespace dualkit::diagram {

struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoMatchAtLocation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingAssignment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Letter {
    std::string object;
    bool dual = false;
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
    std::string text() const { return dual ? object + "*" : object; }
    static Letter parse(const std::string& s);
};

using Word = std::vector<Letter>;
std::string word_text(const Word& w);
Word word_from_json(const json& j);
json word_to_json(const Word& w);

enum class Flavor { Braided, Symmetric };

struct Generator {
    std::string name;
    Word dom, cod;
};

struct DualPair {
    std::string object, unit, counit;
};

struct Signature {
    std::vector<std::string> objects;
    std::map<std::string, Generator> generators;
    std::map<std::string, DualPair> dual_pairs;  // keyed by object
    std::map<std::string, std::string> twists;   // generator -> object
    std::set<std::string> invertible;
    Flavor flavor = Flavor::Braided;

    void validate() const;  // throws SignatureError
    static Signature from_json(const json& j);
    json to_json() const;
    const Generator& generator(const std::string& name) const;
    bool has_object(const std::string& o) const;
};

enum class CellKind { BraidPos, BraidNeg, Cup, Cap, Gen, GenInv };

struct Cell {
    CellKind kind;
    std::string name;  // object for cup/cap, generator otherwise
    bool operator==(const Cell&) const = default;
    std::string text() const;
    static Cell parse(const std::string& s);  // "B+", "B-", "cup:T", "cap:T", "gen:g", "inv:g"
};

// One non-identity cell acting at a wire offset.
struct Layer {
    std::size_t offset = 0;
    Cell cell;
    bool operator==(const Layer&) const = default;
};

struct Diagram {
    Word domain;
    std::vector<Layer> layers;
    bool operator==(const Diagram&) const = default;

    // Slices are refined left to right into one layer per non-identity cell; trailing identities are implicit.
    static Diagram from_json(const Signature& sig, const json& j);
    json to_json() const;
};

std::size_t input_arity(const Signature& sig, const Cell& c);
// Outputs of c applied to the given input letters; throws TypeError.
Word cell_output(const Signature& sig, const Cell& c, const Word& inputs);
// Word before each layer plus the final codomain; throws TypeError.
std::vector<Word> boundaries(const Signature& sig, const Diagram& d);
Word codomain(const Signature& sig, const Diagram& d);

Diagram identity(const Word& w);
Diagram compose(const Signature& sig, const Diagram& first, const Diagram& second);  // first, then second
Diagram tensor(const Signature& sig, const Diagram& left, const Diagram& right);
Diagram cell_diagram(const Signature& sig, const Cell& c, const Word& inputs);

// ---------------------------------------------------------------- rewriting

enum class Direction { Forward, Backward };

struct Location {
    std::size_t slice = 0;
    std::size_t offset = 0;
};

struct RewriteRule {
    std::string id;
    std::string kind = "hypothesis";  // axiom | hypothesis | definition
    Diagram lhs, rhs;
    void validate(const Signature& sig) const;  // matching boundaries
};

// Concrete built-in rules: snake-L:X, snake-R:X, inv-L:g, inv-R:g.
std::optional<RewriteRule> builtin_rule(const Signature& sig, const std::string& id);
// Schemas: interchange-l/r, nat-L+/-, nat-R+/-, cancel+-, cancel-+.
bool is_schema(const std::string& id);
std::vector<std::string> schema_ids();

Diagram apply_rule(const Signature& sig, const Diagram& d, const RewriteRule& rule, Direction dir, Location loc);
// Resolves `id` against user rules, concrete built-ins, then schemas.
Diagram apply_rule(const Signature& sig, const Diagram& d, const std::string& id,
                   const std::map<std::string, RewriteRule>& rules, Direction dir, Location loc);

struct TraceStep {
    std::string rule;
    Direction dir = Direction::Forward;
    Location loc;
    std::string group;
};

struct RewriteTrace {
    std::string name;
    Signature sig;
    std::map<std::string, RewriteRule> rules;
    std::vector<std::string> rule_order;
    Diagram start, end;
    std::vector<TraceStep> steps;

    static RewriteTrace from_json(const json& j);
    json to_json() const;
};

struct TraceReport {
    bool valid = false;
    std::optional<std::size_t> failing_step;  // == steps.size() when only the end comparison fails
    std::string reason;
    json to_json() const;
};

TraceReport validate_trace(const RewriteTrace& t);

// ---------------------------------------------------------------- symmetric normal form

struct PortRef {
    // node == npos: boundary; output=false means domain side
    std::size_t node;
    bool output;
    std::size_t index;
    bool operator==(const PortRef&) const = default;
    auto operator<=>(const PortRef&) const = default;
};

struct OpenGraph {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    Word domain, codomain;
    std::vector<std::string> nodes;  // generator names
    std::vector<std::size_t> n_in, n_out;
    std::map<PortRef, PortRef> mate;
    std::vector<std::string> loops;  // sorted object names

    std::string canonical() const;
    bool isomorphic(const OpenGraph& o) const { return canonical() == o.canonical(); }
};

OpenGraph normalize_symmetric(const Signature& sig, const Diagram& d);

// ---------------------------------------------------------------- semantics

template <ModelCategory M>
struct Interpretation {
    std::map<std::string, typename M::Object> objects;
    std::map<std::string, typename M::Morphism> generators;
};

template <ModelCategory M>
typename M::Object interpret_word(const Interpretation<M>& f, const Word& w) {
    auto acc = M::unit();
    for (const auto& l : w) {
        auto it = f.objects.find(l.object);
        if (it == f.objects.end()) throw MissingAssignment("no object assigned to " + l.object);
        acc = M::tensor(acc, l.dual ? M::duality(it->second).dual : it->second);
    }
    return acc;
}

template <ModelCategory M>
typename M::Morphism evaluate(const Signature& sig, const Diagram& d, const Interpretation<M>& f) {
    auto bounds = boundaries(sig, d);
    auto result = M::identity(interpret_word(f, d.domain));
    for (std::size_t k = 0; k < d.layers.size(); ++k) {
        const auto& layer = d.layers[k];
        const Word& w = bounds[k];
        const std::size_t ar = input_arity(sig, layer.cell);
        Word left(w.begin(), w.begin() + layer.offset);
        Word in(w.begin() + layer.offset, w.begin() + layer.offset + ar);
        Word right(w.begin() + layer.offset + ar, w.end());
        typename M::Morphism mid = M::identity(M::unit());
        switch (layer.cell.kind) {
            case CellKind::BraidPos:
                mid = M::braiding(interpret_word(f, {in[0]}), interpret_word(f, {in[1]}));
                break;
            case CellKind::BraidNeg:
                mid = M::braiding_inverse(interpret_word(f, {in[1]}), interpret_word(f, {in[0]}));
                break;
            case CellKind::Cup:
                mid = M::duality(interpret_word(f, {Letter{layer.cell.name, false}})).eta;
                break;
            case CellKind::Cap:
                mid = M::duality(interpret_word(f, {Letter{layer.cell.name, false}})).eps;
                break;
            case CellKind::Gen:
            case CellKind::GenInv: {
                auto it = f.generators.find(layer.cell.name);
                if (it == f.generators.end()) throw MissingAssignment("no morphism assigned to " + layer.cell.name);
                if (layer.cell.kind == CellKind::Gen) {
                    mid = it->second;
                } else {
                    auto inv = M::inverse(it->second);
                    if (!inv) throw MissingAssignment("assigned morphism for " + layer.cell.name + " is not invertible");
                    mid = *inv;
                }
                break;
            }
        }
        auto whole = M::tensor(M::tensor(M::identity(interpret_word(f, left)), mid), M::identity(interpret_word(f, right)));
        result = M::compose(whole, result);
    }
    return result;
}

// ---------------------------------------------------------------- corpus

std::string data_dir();
std::vector<std::string> corpus_files();  // sorted paths under data/traces
RewriteTrace load_trace(const std::string& path);

}  // namespace dualkit::diagram
