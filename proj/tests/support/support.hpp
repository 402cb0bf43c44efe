#pragma once

// Random generators and brute-force oracles shared by the unit tests, the
// acceptance binary and `ifol check`. The oracles deliberately avoid the
// relalg operators so they can be compared against them.

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ifol/prp.hpp"
#include "ifol/relalg.hpp"
#include "ifol/worlds.hpp"

namespace ifol::testing {

using relalg::Relation;

// --- oracles ---------------------------------------------------------------

/// Nested-loop join: r1's columns, then r2's columns not named in pairs.
/// Invalid pairs (out of range or reused columns) give the product.
Relation oracle_join(const Relation& r1, const Relation& r2, const syntax::JoinPairs& pairs);
Relation oracle_complement(const Relation& r, const relalg::ActiveDomain& ad);
/// Drops column n; unary relations collapse to a truth value; other n keep r.
Relation oracle_project(const Relation& r, int n);
Relation oracle_union(const std::vector<Relation>& rs);

/// Tarski-style evaluation by substitution of domain elements for variables.
bool oracle_eval(prp::Domain& d, const worlds::World& w, const syntax::Formula& sentence);

// --- generators ------------------------------------------------------------

struct Universe {
    std::vector<syntax::Predicate> preds;
    std::vector<prp::Concept> elems;
    std::vector<std::string> names;
    worlds::World world;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    /// Declares P/1, Q/2, R/3, S/2 and B/0, 1..max_elems particulars, and up
    /// to max_tuples random facts per predicate.
    Universe universe(prp::Domain& d, int max_elems = 5, int max_tuples = 16);

    /// Random concept built with the algebra operations, arity <= max_arity.
    prp::Concept concept_tree(prp::Domain& d, const Universe& u, int depth, int max_arity = 3);

    /// Random formula with at most `connectives` conj/neg nodes; closed by
    /// existential quantifiers when `sentence` is set.
    syntax::Formula formula(const Universe& u, int connectives, bool sentence);

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64& rng() { return rng_; }

private:
    syntax::Formula open_formula(const Universe& u, int connectives);
    syntax::Formula atom(const Universe& u);
    std::mt19937_64 rng_;
};

/// Conjunction that joins every shared variable.
syntax::Formula join_shared(const syntax::Formula& l, const syntax::Formula& r);

// --- suites ----------------------------------------------------------------

struct SuiteResult {
    int cases = 0;
    int failures = 0;
    double seconds = 0;
    std::string first_failure;
    bool ok() const { return cases > 0 && failures == 0; }
};

/// Checks the four homomorphism laws node by node on random concept trees.
SuiteResult homomorphism_suite(int trees, std::uint64_t seed);
/// Compares eval_sentence with oracle_eval on random sentences.
SuiteResult tarski_suite(int sentences, std::uint64_t seed);
/// Union of 1..3 concepts of each arity 0..3 against set union.
SuiteResult union_suite(int rounds, std::uint64_t seed);

}  // namespace ifol::testing
