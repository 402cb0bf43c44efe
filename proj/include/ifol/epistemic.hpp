#pragma once

// Autoepistemic deduction over a reified Know(time, subject, content)
// predicate: experience assertion, the T/4/K axiom rules, bounded forward
// chaining with derivation traces, consolidation into permanent memory and
// yes/no/unknown answering.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifol/prp.hpp"
#include "ifol/worlds.hpp"

namespace ifol::epistemic {

using prp::Concept;

enum class Rule { Experience, T_a, T_b, Ax4, AxK, Loaded };

std::string_view rule_name(Rule r);

struct KnowAtom {
    int id = -1;
    Concept time;
    Concept subject;
    /// g*-image of an abstracted term; a concept of arity >= 0.
    Concept content;
    Rule rule = Rule::Experience;
    std::vector<int> parents;
    /// Introspection nesting added by Ax4.
    int depth = 0;
    /// Set by T_b: the instance sentences whose conjunction is the content.
    std::vector<Concept> conjuncts;
    bool consolidated = false;
    std::int64_t tau = 0;

    bool same_fact(const KnowAtom& o) const {
        return time == o.time && subject == o.subject && content == o.content;
    }
};

/// Stored rule `A => B` used by axiom K.
struct Implication {
    int id = -1;
    Concept time;
    Concept subject;
    Concept antecedent;
    Concept consequent;
};

struct TraceStep {
    Rule rule;
    std::vector<int> inputs;
    int output;
    std::string sentence;
};

class Memory {
public:
    const std::vector<KnowAtom>& temporary() const { return temporary_; }
    const std::vector<KnowAtom>& permanent() const { return permanent_; }
    const std::vector<Implication>& rules() const { return rules_; }

    bool contains(const KnowAtom& a) const;
    const KnowAtom* find(int id) const;

    /// Assigns a fresh id; returns nullopt when the fact is already held.
    std::optional<KnowAtom> add_temporary(KnowAtom a);
    std::optional<KnowAtom> add_permanent(KnowAtom a);
    Implication add_rule(Implication r);

    /// Moves every temporary atom through fn into permanent memory.
    template <class Fn>
    void drain_temporary(Fn&& fn) {
        auto moved = std::move(temporary_);
        temporary_.clear();
        for (auto& a : moved) {
            KnowAtom b = fn(std::move(a));
            bool dup = false;
            for (const auto& p : permanent_) dup = dup || p.same_fact(b);
            if (!dup) permanent_.push_back(std::move(b));
        }
    }

    /// (time, subject, content) over both stores.
    relalg::Relation know_relation() const;

    friend bool operator==(const Memory& a, const Memory& b);

private:
    std::vector<KnowAtom> temporary_;
    std::vector<KnowAtom> permanent_;
    std::vector<Implication> rules_;
    int next_id_ = 1;
};

/// Know(time, subject, <<content>>) as a ground atom.
syntax::Formula know_formula(const prp::Domain& d, const KnowAtom& a);

/// Records Know(in_present, me, g*(t)) in temporary memory.
std::pair<Memory, KnowAtom> assert_experience(prp::Domain& d, Memory mem, const syntax::AbstractedTerm& t,
                                              const prp::Assignment& g);

/// T, ground case: the sentence whose meaning is the content.
std::optional<syntax::Formula> apply_T_ground(const prp::Domain& d, const KnowAtom& a);

/// T, open case: knowledge of the conjunction of all satisfying instances.
/// nullopt for propositions and for empty extensions.
std::optional<KnowAtom> apply_T_open(prp::Domain& d, const KnowAtom& a, const worlds::World& w);

/// Positive introspection.
KnowAtom apply_4(prp::Domain& d, const KnowAtom& a);

/// Distribution: fires iff the antecedent, time and subject match.
std::optional<KnowAtom> apply_K(const KnowAtom& a, const Implication& impl);

struct ChainResult {
    Memory memory;
    std::vector<TraceStep> trace;
    std::vector<int> derived;
};

/// Closes memory under T_b, T_a (conjunct re-assertion), AxK and Ax4 in that
/// order. Ax4 only fires below `budget` nesting.
ChainResult forward_chain(prp::Domain& d, const Memory& mem, const worlds::World& w, int budget);

/// Inserts tau as the leading argument of every non-Know atom and shifts
/// in_present to in_past; Know contents are stamped recursively.
Concept stamp(prp::Domain& d, Concept content, std::int64_t tau);
/// Inverse of stamp for contents that held no in_past arguments before.
Concept unstamp(prp::Domain& d, Concept content, std::int64_t tau);

/// Moves temporary atoms to permanent memory with stamped contents.
Memory consolidate(prp::Domain& d, const Memory& mem, std::int64_t tau);

/// Operands of nested empty-join conjunctions between sentences.
std::vector<syntax::Formula> conjuncts_of(const syntax::Formula& sentence);

/// Ground non-Know atoms reachable through conjunctions of a sentence.
std::vector<syntax::Formula> ground_facts_of(const syntax::Formula& sentence);

enum class Answer { Yes, No, Unknown };
std::string_view answer_name(Answer a);

/// Yes when the sentence is held (or all its conjuncts are) or true in w; no
/// when its negation is held or it is false in w; unknown when neither
/// memory nor w can decide it.
Answer answer(prp::Domain& d, const Memory& mem, const worlds::World& w, const syntax::Formula& q);

/// One line-delimited JSON record.
std::string trace_record(const TraceStep& step, std::size_t index);

}  // namespace ifol::epistemic
