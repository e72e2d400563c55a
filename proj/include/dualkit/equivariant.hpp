#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualkit/exactlin.hpp"
#include "dualkit/json.hpp"

namespace dualkit::equi {

struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotADownset : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonIntegralAverage : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidRepresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// images of 0..n-1
using Perm = std::vector<std::uint32_t>;
// sorted element indices
using ElementSet = std::vector<std::size_t>;

constexpr std::size_t default_order_bound = 60;

class PermGroup {
public:
    // Generators use 0-based images. Throws GroupTooLarge past `bound`.
    PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t bound = default_order_bound);
    // {"degree": n, "generators": [[1-based images], ...]}
    static PermGroup from_json(const json& j, std::size_t bound = default_order_bound);
    json to_json() const;

    std::size_t degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }
    const Perm& element(std::size_t k) const { return elements_[k]; }
    std::size_t index_of(const Perm& p) const;
    std::size_t identity() const { return id_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }  // a after b
    std::size_t inv(std::size_t a) const { return inv_[a]; }

    ElementSet generated(const ElementSet& gens) const;
    ElementSet conjugate(std::size_t g, const ElementSet& h) const;  // g H g^-1
    // All subgroups: cyclic subgroups closed under pairwise joins.
    std::vector<ElementSet> subgroups() const;

private:
    std::size_t degree_;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;  // sorted
    std::vector<std::size_t> gen_idx_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inv_;
    std::size_t id_ = 0;
};

struct ConjugacyClass {
    std::vector<ElementSet> members;  // sorted
    ElementSet representative() const { return members.front(); }
    std::size_t order() const { return members.front().size(); }
};

class ConjugacyPoset {
public:
    explicit ConjugacyPoset(const PermGroup& g);

    std::size_t size() const { return classes_.size(); }
    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    // a <= b: a subconjugate to b
    bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
    std::size_t weyl_order(std::size_t c) const { return weyl_[c]; }
    std::size_t class_of(const ElementSet& h) const;
    std::vector<std::size_t> orders() const;
    std::string label(std::size_t c) const;

    std::set<std::size_t> down(std::size_t c) const;
    std::set<std::size_t> up(std::size_t c) const;
    std::set<std::size_t> all() const;
    bool is_upset(const std::set<std::size_t>& s) const;
    bool is_downset(const std::set<std::size_t>& s) const;
    bool is_convex(const std::set<std::size_t>& s) const;
    // minimal elements, in (order, element set) order
    std::vector<std::size_t> minimal(const std::set<std::size_t>& s) const;

private:
    std::vector<ConjugacyClass> classes_;
    std::vector<bool> leq_;
    std::vector<std::size_t> weyl_;
};

ConjugacyPoset enumerate_subgroup_classes(const PermGroup& g);

struct WeylGroup {
    std::size_t order;
    std::vector<std::size_t> coset_representatives;  // element indices, one per coset of H in N(H)
};
WeylGroup weyl_group(const PermGroup& g, const ConjugacyPoset& poset, std::size_t cls);

class Representation {
public:
    // one matrix per group generator; verified to extend to a homomorphism
    Representation(const PermGroup& g, std::size_t dim, std::vector<RatMatrix> generator_matrices,
                   std::string name = "");
    // {"dim": d, "matrices": [[["p/q", ...], ...], ...]}
    static Representation from_json(const PermGroup& g, const json& j);

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const RatMatrix& matrix(std::size_t element) const { return images_[element]; }
    const Rat& character(std::size_t element) const { return chars_[element]; }

private:
    std::size_t dim_;
    std::string name_;
    std::vector<RatMatrix> images_;
    std::vector<Rat> chars_;
};

Representation trivial_rep(const PermGroup& g);
Representation sign_rep(const PermGroup& g);
Representation permutation_rep(const PermGroup& g);
Representation reduced_permutation_rep(const PermGroup& g);
Representation regular_rep(const PermGroup& g);
Representation reduced_regular_rep(const PermGroup& g);
Representation named_rep(const PermGroup& g, const std::string& name);

std::size_t fixed_dim(const Representation& v, const ElementSet& h);

class IntervalSphere {
public:
    IntervalSphere(const ConjugacyPoset& poset, std::set<std::size_t> classes);  // throws if not order-convex
    const std::set<std::size_t>& classes() const { return classes_; }
    bool operator==(const IntervalSphere& o) const { return classes_ == o.classes_; }

private:
    std::set<std::size_t> classes_;
};

IntervalSphere interval_smash(const ConjugacyPoset& poset, const IntervalSphere& a, const IntervalSphere& b);

struct CofiberSequence {
    std::set<std::size_t> downset, whole, upset;
};
CofiberSequence cofiber_upset_sequence(const ConjugacyPoset& poset, const std::set<std::size_t>& downset);

// action[g][x] = g.x for every element index g
using ActionTable = std::vector<std::vector<std::size_t>>;
void validate_action(const PermGroup& g, const ActionTable& action);
ActionTable coset_action(const PermGroup& g, const ElementSet& h);  // G/H
bool untwisting_check(const PermGroup& g, const ActionTable& action);

// ---------------------------------------------------------------- certificates

enum class Rule { SingletonKill, CofiberLocal, SmashRemove };
std::string rule_name(Rule r);
Rule rule_from_name(const std::string& s);

struct CertStep {
    Rule rule;
    std::size_t cls;                 // the class H
    std::set<std::size_t> upset;     // current U before removal
    std::vector<std::string> premises;
    std::string conclusion;
};

struct CollapseCertificate {
    std::string group, representation;
    std::vector<std::string> axioms;
    std::vector<CertStep> steps;
    std::string final_fact;
    std::size_t removal_count() const;
    json to_json(const ConjugacyPoset& poset) const;
    static CollapseCertificate from_json(const json& j);
};

namespace fact {
std::string axiom();
std::string zero(const std::set<std::size_t>& s);
std::string local(const std::set<std::size_t>& s);
std::string equivalence(const std::set<std::size_t>& from, const std::set<std::size_t>& to);
std::string final_fact();
}  // namespace fact

CollapseCertificate generate_collapse_certificate(const PermGroup& g, const ConjugacyPoset& poset,
                                                  const Representation& v, const std::string& group_name = "");

struct CertificateCheck {
    bool valid = false;
    std::optional<std::size_t> failing_step;
    std::string reason;
};
CertificateCheck validate_certificate(const CollapseCertificate& cert, const ConjugacyPoset& poset);

// ---------------------------------------------------------------- presets

std::vector<std::string> preset_names();  // c2 c4 s3 d4 q8 a4 trivial
PermGroup preset_group(const std::string& name);
// preset name, or a path to a group JSON file
PermGroup load_group(const std::string& name_or_path);

}  // namespace dualkit::equi
