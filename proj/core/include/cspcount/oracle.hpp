#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cspcount/errors.hpp"
#include "cspcount/exactmat.hpp"
#include "cspcount/model.hpp"

namespace cspcount {

/// Z(I) = sum of F_I over all d^n assignments, exactly.
Rat partition_function(const Instance& instance, const EnumLimits& limits = {});

/// The support relation R = { x : F_I(x) > 0 } by enumeration.
RelationTable relation_of(const Instance& instance, const EnumLimits& limits = {});

/// The d^a x d^(b-a) matrix M(u,v) = sum over w of F(u,v,w); when b == n,
/// M(u,v) = F(u,v). Requires 1 <= a < b <= n.
RationalMatrix marginal_matrix(const Instance& instance, int a, int b,
                               const EnumLimits& limits = {});

/// The integer-valued d^a x d^(b-a) matrix
///   M(u,v) = |{ w in D^(c-b) : exists z in D^(n-c) with (u,v,w,z) in R }|.
/// c == b gives the 0/1 existence matrix; c == n counts all extensions.
RationalMatrix existential_matrix(const Instance& instance, int a, int b, int c,
                                  const EnumLimits& limits = {});
RationalMatrix existential_matrix(const RelationTable& r, int a, int b, int c);

/// pr_i R together with, per element, the lexicographically least member
/// tuple of R taking that value at coordinate i.
struct ProjectionResult {
    std::vector<int> elements;    // sorted
    std::vector<Tuple> members;   // members[k] in R, members[k][i-1] == elements[k]
};
ProjectionResult projection(const RelationTable& r, int i);

/// Partition of pr_i R under a ~_i b (some shared prefix extends both).
/// When ~_i is not transitive, `violation` holds (a, b, c) with a ~ b and
/// b ~ c but not a ~ c, and `classes` is empty.
struct EquivClasses {
    std::vector<std::vector<int>> classes;        // each sorted; ordered by least element
    std::optional<std::array<int, 3>> violation;
    bool ok() const { return !violation.has_value(); }
};
EquivClasses equivalence_classes(const RelationTable& r, int i);

/// Per class E_{i,k}: one prefix u in D^(i-1) and one suffix per element a
/// such that (u, a, suffix_a) is in R for every a in the class. Choices are
/// deterministic: least qualifying prefix, then least suffixes.
struct WitnessBundle {
    int coord = 0;
    std::vector<std::vector<int>> classes;
    struct ClassWitness {
        Tuple prefix;                 // length i-1
        std::vector<Tuple> suffixes;  // aligned with the class elements, each length n-i
    };
    std::vector<ClassWitness> witnesses;
    // failure modes
    std::optional<std::array<int, 3>> not_equivalence;
    std::optional<int> no_uniform_prefix_class;  // index of the class lacking a shared prefix
    bool ok() const { return !not_equivalence && !no_uniform_prefix_class; }
};
WitnessBundle witnesses(const RelationTable& r, int i);

/// Balance verdicts carry a reproducible counterexample on violation.
struct BalanceViolation {
    int a = 0, b = 0;
    int c = -1;  // set for strong balance only
    RationalMatrix matrix;
    BlockRank1Check check;
};
struct BalanceVerdict {
    bool balanced = true;
    std::optional<BalanceViolation> violation;
};

/// All splits 1 <= a < b <= n of the marginal matrices.
BalanceVerdict test_balance(const Instance& instance, const EnumLimits& limits = {});
/// Splits with a single-coordinate column part (b == a + 1).
BalanceVerdict test_weak_balance(const Instance& instance, const EnumLimits& limits = {});
/// The single split (a, b) = (1, 2); vacuous for n < 2.
BalanceVerdict test_primitive_balance(const Instance& instance, const EnumLimits& limits = {});
/// All splits 1 <= a < b <= c <= n of the existential matrices.
BalanceVerdict test_strong_balance(const Instance& instance, const EnumLimits& limits = {});

}  // namespace cspcount
