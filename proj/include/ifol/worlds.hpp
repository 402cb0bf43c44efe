#pragma once

// Worlds are immutable, time-stamped extensionalization snapshots. Atomic
// extensions are derived from per-predicate fact tables; composite ones are
// computed homomorphically from the concept structure.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ifol/prp.hpp"
#include "ifol/relalg.hpp"

namespace ifol::worlds {

/// Memory-backed predicate; never has a fact table of its own.
inline const syntax::Predicate kKnowPredicate{"Know", 3};

class World {
public:
    explicit World(std::int64_t timestamp = 0);

    std::int64_t timestamp() const;
    World at_time(std::int64_t timestamp) const;

    /// Full-arity relation of every predicate that has an extension here.
    const std::map<syntax::Predicate, relalg::Relation>& facts() const;
    const relalg::Relation* facts_for(const syntax::Predicate& p) const;
    /// Know and identity always have one; others once facts were set.
    bool has_extension(const syntax::Predicate& p) const;

    World with_facts(const syntax::Predicate& p, relalg::Relation r) const;
    World with_fact(const syntax::Predicate& p, relalg::Tuple t) const;
    World with_particular(prp::Concept particular) const;
    /// Arity-3 (time, subject, content) table mirrored from epistemic memory.
    World with_knowledge(relalg::Relation know) const;

    const std::vector<prp::Concept>& declared_particulars() const;
    const relalg::Relation& knowledge() const;
    /// Declared particulars plus every element of every fact and Know tuple.
    const relalg::ActiveDomain& active_domain() const;

    std::optional<relalg::Relation> cached(prp::Concept c) const;
    void remember(prp::Concept c, const relalg::Relation& r) const;

private:
    struct State;
    explicit World(std::shared_ptr<State> s);
    std::shared_ptr<State> clone() const;

    std::shared_ptr<State> state_;
};

/// h(u). Throws MissingExtension when an atomic leaf has no extension.
relalg::Relation extension(prp::Domain& d, const World& w, prp::Concept u, bool memoize = true);

/// Fixes h on an atomic concept by rewriting the facts its pattern covers.
World set_base_extension(prp::Domain& d, const World& w, prp::Concept u, const relalg::Relation& r);

/// h(I(f)) collapsed to a truth value; f must be a sentence.
bool eval_sentence(prp::Domain& d, const World& w, const syntax::Formula& f);

/// One assignment per tuple of h(I(f)); alpha must list exactly the free variables.
std::vector<prp::Assignment> satisfying_assignments(prp::Domain& d, const World& w, const syntax::Formula& f,
                                                    const std::vector<syntax::Variable>& alpha);

/// Whether the ground tuple is an instance of the atomic concept's pattern.
bool matches_atom(prp::Domain& d, const World& w, prp::Concept atom, const relalg::Tuple& fact);

}  // namespace ifol::worlds
