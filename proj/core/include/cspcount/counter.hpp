#pragma once

#include <vector>

#include "cspcount/dichotomy.hpp"
#include "cspcount/errors.hpp"
#include "cspcount/model.hpp"
#include "cspcount/vecrep.hpp"

namespace cspcount {

/// Witness functions t_2..t_n. Each t_j vanishes off pr_j R and restricts
/// to a normalized distribution on every equivalence class of ~_j.
struct TFunctions {
    int domain_size = 0;
    int num_vars = 0;
    std::vector<std::vector<Rat>> t;  // 1-indexed by variable; t[0], t[1] unused

    const Rat& at(int var, int element) const {
        return t[static_cast<std::size_t>(var)][static_cast<std::size_t>(element - 1)];
    }
};

/// Builds t_n, ..., t_2 downward. t_n normalizes s_n over its class; deeper
/// levels divide class sums of the concise product form evaluated along the
/// stored witness tuples. Throws NotApplicableError when the relation-side
/// services fail (the support is not strongly rectangular).
TFunctions t_functions(const Instance& instance, const VectorRepresentation& s,
                       const EnumLimits& limits = {});

/// The closed-form partition sum over pr_1 R. Refuses (NotApplicableError)
/// unless the verdict certifies the instance's language Tractable; never
/// returns an unverified number.
Rat structured_count(const Instance& instance, const Verdict& verdict,
                     const EnumLimits& limits = {});

/// The same pipeline without the certification gate. Intended for callers
/// that establish balance by other means (tests, corpora known balanced by
/// construction); still refuses when the pipeline itself fails.
Rat structured_count_uncertified(const Instance& instance, const EnumLimits& limits = {});

}  // namespace cspcount
