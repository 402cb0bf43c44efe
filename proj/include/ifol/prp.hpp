#pragma once

// The PRP domain: interned particulars (arity -1) and concepts (arity >= 0),
// the intensional algebra over them, and the intensional interpretation of
// formulas as a homomorphism into that algebra.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ifol/handle.hpp"
#include "ifol/syntax.hpp"

namespace ifol::prp {

using Concept = Handle;

enum class ConceptOp { Particular, Truth, Atom, Conj, Neg, Exists };

/// One argument slot of an interned atom.
struct AtomArg {
    enum class Kind { Var, Element, OpenAbstraction };
    Kind kind = Kind::Var;
    std::string var;                 // Var
    Concept element;                 // Element
    Concept body;                    // OpenAbstraction: concept of the open body
    std::vector<std::string> alpha;  // OpenAbstraction
    std::vector<std::string> beta;   // OpenAbstraction

    friend auto operator<=>(const AtomArg&, const AtomArg&) = default;
};

struct ConceptNode {
    ConceptOp op = ConceptOp::Truth;
    int arity = 0;
    std::string name;                // Particular
    syntax::Predicate pred;          // Atom
    std::vector<AtomArg> args;       // Atom
    std::vector<std::string> vars;   // Atom: canonical free tuple
    syntax::JoinPairs pairs;         // Conj
    bool pairs_valid = true;         // Conj: false selects the D_{k+j} fallback
    int n = 0;                       // Exists
    Concept a;                       // Conj lhs / Neg / Exists operand
    Concept b;                       // Conj rhs
};

using Assignment = std::map<std::string, Concept>;

/// Append-only interning table. Handles stay valid for the lifetime of the
/// domain; identical construction arguments always yield the same handle.
class Domain {
public:
    Domain();

    // Signature of the atoms this domain can interpret.
    void declare(const syntax::Predicate& p) { signature_.declare(p); }
    bool declared(const syntax::Predicate& p) const { return signature_.declared(p); }
    const syntax::Signature& signature() const { return signature_; }

    Concept particular(const std::string& name);
    std::optional<Concept> find_particular(const std::string& name) const;
    Concept tense(syntax::Tense t) { return particular(std::string(syntax::tense_name(t))); }
    /// The empty tuple, itself an individual.
    Concept empty_tuple() const { return empty_tuple_; }

    Concept truth() const { return truth_; }
    /// I(?x = ?y)
    Concept identity() const { return identity_; }

    Concept intern_atom(const syntax::Predicate& pred, const std::vector<AtomArg>& args);
    Concept conj(Concept u, Concept v, syntax::JoinPairs pairs);
    Concept neg(Concept u);
    /// Identity on u when n is outside 1..arity(u).
    Concept exists(int n, Concept u);
    /// Derived union: neg(conj_S(neg(u1), conj_S(neg(u2), ...))) with S the diagonal.
    Concept union_of(const std::vector<Concept>& members);

    /// Intensional interpretation I. Throws SignatureError for undeclared predicates.
    Concept interpret(const syntax::Formula& f);
    /// g*(t)
    Concept extend_assignment(const Assignment& g, const syntax::Term& t);

    /// Formula whose interpretation is c. Throws when c is a particular or was
    /// built by an algebra-only fallback with no syntactic counterpart.
    syntax::Formula recover(Concept c) const;
    /// Ground term denoting the element: a constant, a tense, or a fully
    /// abstracted term.
    syntax::Term term_of(Concept c) const;

    const ConceptNode& node(Concept c) const { return nodes_.at(c.value); }
    int arity(Concept c) const { return node(c).arity; }
    bool is_particular(Concept c) const { return node(c).op == ConceptOp::Particular; }
    std::size_t size() const { return nodes_.size(); }
    /// Name of a particular; "#<id>" for concepts.
    std::string name_of(Concept c) const;

private:
    Concept intern(ConceptNode node);
    AtomArg arg_of(const syntax::Term& t);

    syntax::Signature signature_;
    std::vector<ConceptNode> nodes_;
    std::map<std::string, Concept> keys_;
    std::unordered_map<std::string, Concept> particulars_;
    Concept empty_tuple_;
    Concept truth_;
    Concept identity_;
};

}  // namespace ifol::prp
