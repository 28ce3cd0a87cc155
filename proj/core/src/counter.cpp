#include "cspcount/counter.hpp"

#include <stdexcept>

#include "cspcount/oracle.hpp"

namespace cspcount {

namespace {

// The concise product form of the class-sum matrix entry
// M(u, v) = prod_{j<i} s_j(u_j) * s_i(v) * prod_{j>i} s_j(w_j) / t_j(w_j),
// evaluated along a witness suffix w with (u, v, w) in R. Exactness of the
// ratio is what makes t-function construction cheap.
Rat concise_entry(const VectorRepresentation& s, const TFunctions& t, const Tuple& prefix, int v,
                  const Tuple& suffix, int i) {
    Rat value(1);
    for (int j = 1; j < i; ++j) value *= s.at(j, prefix[static_cast<std::size_t>(j - 1)]);
    value *= s.at(i, v);
    for (int j = i + 1; j <= t.num_vars; ++j) {
        const int w = suffix[static_cast<std::size_t>(j - i - 1)];
        value *= s.at(j, w) / t.at(j, w);
    }
    return value;
}

}  // namespace

TFunctions t_functions(const Instance& instance, const VectorRepresentation& s,
                       const EnumLimits& limits) {
    const int n = instance.num_vars();
    const int d = instance.language().domain().size;
    if (s.arity() != n || s.domain_size != d)
        throw std::invalid_argument("t_functions: vector representation shape mismatch");

    TFunctions t;
    t.domain_size = d;
    t.num_vars = n;
    t.t.assign(static_cast<std::size_t>(n) + 1, std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
    if (n == 1) return t;

    const RelationTable r = relation_of(instance, limits);
    for (int i = n; i >= 2; --i) {
        WitnessBundle bundle = witnesses(r, i);
        if (!bundle.ok())
            throw NotApplicableError(
                "relation services failed at coordinate " + std::to_string(i) +
                (bundle.not_equivalence ? " (the shared-prefix relation is not an equivalence)"
                                        : " (no uniform prefix covers a class)"));
        for (std::size_t k = 0; k < bundle.classes.size(); ++k) {
            const auto& cls = bundle.classes[k];
            const auto& witness = bundle.witnesses[k];
            if (i == n) {
                Rat denom(0);
                for (int b : cls) denom += s.at(n, b);
                for (int b : cls) t.t[static_cast<std::size_t>(n)][static_cast<std::size_t>(b - 1)] = s.at(n, b) / denom;
            } else {
                Rat denom(0);
                std::vector<Rat> numerators;
                numerators.reserve(cls.size());
                for (std::size_t idx = 0; idx < cls.size(); ++idx) {
                    Rat m = concise_entry(s, t, witness.prefix, cls[idx], witness.suffixes[idx], i);
                    denom += m;
                    numerators.push_back(std::move(m));
                }
                for (std::size_t idx = 0; idx < cls.size(); ++idx)
                    t.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cls[idx] - 1)] =
                        numerators[idx] / denom;
            }
        }
    }
    return t;
}

namespace {

Rat closed_form_sum(const Instance& instance, const EnumLimits& limits) {
    const int n = instance.num_vars();

    InstanceVecrep vec = instance_vecrep(instance);
    if (!vec.ok())
        throw NotApplicableError(
            "function '" + instance.language().function(vec.failed_function).name() +
            "' has no vector representation (marginal level " +
            std::to_string(vec.not_block_rank_1_level) + " is not block-rank-1)");
    const VectorRepresentation& s = *vec.rep;

    TFunctions t = t_functions(instance, s, limits);

    const RelationTable r = relation_of(instance, limits);
    ProjectionResult pr1 = projection(r, 1);
    Rat z(0);
    for (std::size_t k = 0; k < pr1.elements.size(); ++k) {
        const Tuple& member = pr1.members[k];
        Rat term = s.at(1, pr1.elements[k]);
        for (int j = 2; j <= n; ++j) {
            const int u = member[static_cast<std::size_t>(j - 1)];
            term *= s.at(j, u) / t.at(j, u);
        }
        z += term;
    }
    return z;
}

}  // namespace

Rat structured_count(const Instance& instance, const Verdict& verdict, const EnumLimits& limits) {
    if (verdict.language_fingerprint != instance.language().fingerprint())
        throw NotApplicableError("verdict does not certify this instance's language");
    if (!verdict.tractable())
        throw NotApplicableError("language is not certified tractable; use the brute-force oracle");
    return closed_form_sum(instance, limits);
}

Rat structured_count_uncertified(const Instance& instance, const EnumLimits& limits) {
    return closed_form_sum(instance, limits);
}

}  // namespace cspcount
