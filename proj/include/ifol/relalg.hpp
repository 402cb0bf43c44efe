#pragma once

// Finite relations over domain elements and the extensional algebra:
// positional natural join, active-domain complement, column elimination.

#include <set>
#include <string>
#include <vector>

#include "ifol/handle.hpp"
#include "ifol/syntax.hpp"

namespace ifol::relalg {

using Tuple = std::vector<Handle>;

class Relation {
public:
    explicit Relation(int arity = 0) : arity_(arity) {}
    Relation(int arity, std::set<Tuple> tuples);

    /// Arity-0 truth values: f is the empty set, t is {<>}.
    static Relation truth(bool value);

    int arity() const { return arity_; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }
    bool is_true() const { return !tuples_.empty(); }

    void insert(Tuple t);
    void erase(const Tuple& t) { tuples_.erase(t); }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    int arity_;
    std::set<Tuple> tuples_;
};

using ActiveDomain = std::set<Handle>;

/// Columns of r1 followed by the unjoined columns of r2. Empty pairs give the
/// Cartesian product. Throws ConstructionError on out-of-range or reused columns.
Relation natural_join(const Relation& r1, const Relation& r2, const syntax::JoinPairs& pairs);
Relation cartesian_product(const Relation& r1, const Relation& r2);

/// ad^k minus r; for arity 0 flips t and f.
Relation complement(const Relation& r, const ActiveDomain& ad);

/// Drops column n when 1 <= n <= k and k >= 2; collapses to a truth value when
/// n == k == 1; otherwise returns r.
Relation project_out(const Relation& r, int n);

/// t when r is nonempty, f otherwise.
Relation truth_collapse(const Relation& r);

Relation set_union(const Relation& a, const Relation& b);

/// All k-tuples over ad.
Relation full(int arity, const ActiveDomain& ad);

}  // namespace ifol::relalg
