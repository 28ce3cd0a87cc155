#pragma once

#include <optional>
#include <random>
#include <vector>

#include "cspcount/errors.hpp"
#include "cspcount/model.hpp"

namespace cspcount {

/// Per-position unary weight functions s_1..s_r with
/// f(x) = s_1(x_1) * ... * s_r(x_r) at every support point of f. Holes
/// (positive product off the support) are permitted.
struct VectorRepresentation {
    int domain_size = 0;
    std::vector<std::vector<Rat>> s;  // s[j][a-1] for position j+1, element a

    int arity() const { return static_cast<int>(s.size()); }
    const Rat& at(int position, int element) const {  // 1-based position and element
        return s[static_cast<std::size_t>(position - 1)][static_cast<std::size_t>(element - 1)];
    }
};

/// Result of the inductive construction; on failure records the smallest
/// marginal level whose matrix is not block-rank-1.
struct FunctionVecrep {
    std::optional<VectorRepresentation> rep;
    int not_block_rank_1_level = 0;
    bool ok() const { return rep.has_value(); }
};

/// Builds a vector representation of f, or reports the failing level.
/// The representative row of each block is the lexicographically least one.
FunctionVecrep function_vecrep(const FunctionTable& f);

/// Same construction with the block representative drawn at random;
/// exercises the freedom in the choice (any row yields a valid result).
FunctionVecrep function_vecrep_randomized(const FunctionTable& f, std::mt19937_64& rng);

/// Immutable per-language cache of function representations.
struct LanguageVecreps {
    std::vector<FunctionVecrep> per_function;
    bool all_ok = true;
    std::size_t first_failed_function = 0;  // valid when !all_ok
};
LanguageVecreps language_vecreps(const Language& language);

/// Result of composing per-function representations along an instance.
struct InstanceVecrep {
    std::optional<VectorRepresentation> rep;  // arity n
    std::size_t failed_function = 0;          // valid when !ok()
    int not_block_rank_1_level = 0;
    bool ok() const { return rep.has_value(); }
};

/// Pointwise product of the per-function unary factors over the instance's
/// applications, starting from all-ones.
InstanceVecrep instance_vecrep(const Instance& instance, const LanguageVecreps& cache);
InstanceVecrep instance_vecrep(const Instance& instance);

/// Checks the defining property by enumeration over the support. Holes are
/// not flagged.
bool verify_vecrep(const FunctionTable& f, const VectorRepresentation& rep);
bool verify_vecrep(const Instance& instance, const VectorRepresentation& rep,
                   const EnumLimits& limits = {});

}  // namespace cspcount
