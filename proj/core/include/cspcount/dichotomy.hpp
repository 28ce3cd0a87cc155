#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cspcount/errors.hpp"
#include "cspcount/exactmat.hpp"
#include "cspcount/model.hpp"
#include "cspcount/oracle.hpp"

namespace cspcount {

/// Ternary operation m : D^3 -> D as a dense table (last index fastest).
struct TernaryOperation {
    int domain_size = 0;
    std::vector<int> table;  // size d^3, values in [1, d]

    int at(int a, int b, int c) const {
        const std::size_t d = static_cast<std::size_t>(domain_size);
        return table[((static_cast<std::size_t>(a - 1) * d) + static_cast<std::size_t>(b - 1)) * d +
                     static_cast<std::size_t>(c - 1)];
    }
    /// m(a,b,b) == m(b,b,a) == a for all a, b.
    bool satisfies_maltsev_identity() const;
};

/// Closure check of one relation under a ternary operation applied
/// coordinatewise. On failure carries the violating triple and its image.
struct PolymorphismCheck {
    bool ok = true;
    std::array<Tuple, 3> violating{};
    Tuple image;
};
PolymorphismCheck is_polymorphism(const TernaryOperation& op, const RelationTable& relation);

struct MaltsevFailure {
    TernaryOperation op;
    std::size_t relation = 0;
    PolymorphismCheck check;
};

/// Complete backtracking search over the free entries of the Mal'tsev
/// identity, lexicographic, first hit returned.
struct MaltsevSearch {
    std::optional<TernaryOperation> op;
    std::uint64_t nodes = 0;
    /// When the search fails and the candidate space is small, one closure
    /// violation per complete candidate (certificate for the None verdict).
    std::vector<MaltsevFailure> failures;
};
MaltsevSearch find_maltsev(const std::vector<RelationTable>& relations,
                           const SearchLimits& limits = {});

/// The 6th power (D^6, {g_i}) of a language: g_i multiplies f_i across the
/// six coordinate slots. Tables are computed exactly at construction and
/// value-interned for the automorphism search.
class PowerLanguage {
  public:
    explicit PowerLanguage(std::shared_ptr<const Language> base, const SearchLimits& limits = {});

    const Language& base() const { return *base_; }
    std::shared_ptr<const Language> base_ptr() const { return base_; }
    std::size_t domain_size() const { return elements_.size(); }  // d^6
    std::size_t num_functions() const { return tables_.size(); }
    int arity(std::size_t fn) const { return base_->function(fn).arity(); }
    const Tuple& element(std::size_t e) const { return elements_[e]; }

    const Rat& g_value(std::size_t fn, std::span<const std::size_t> elems) const;
    const std::vector<std::int32_t>& table(std::size_t fn) const { return tables_[fn]; }
    const Rat& palette(std::int32_t id) const { return palette_[static_cast<std::size_t>(id)]; }

    /// Materializes the power pair as an ordinary language over a domain of
    /// size d^6 (element e of the power domain becomes e+1).
    std::shared_ptr<const Language> to_language() const;

  private:
    std::shared_ptr<const Language> base_;
    std::vector<Tuple> elements_;                    // decoded 6-tuples
    std::vector<std::vector<std::int32_t>> tables_;  // per function, dense over the power domain
    std::vector<Rat> palette_;                       // value id -> exact value
};

/// The distinguished power-domain elements for a quadruple (alpha, beta,
/// kappa, lambda); 0-based indices into the power domain.
struct SpecialElements {
    std::size_t a, b, c;
};
SpecialElements special_elements(const PowerLanguage& power, int alpha, int beta, int kappa,
                                 int lambda);

/// Backtracking over a color-refined partition of the power domain for a
/// bijection pi with pi(a) = a, pi(b) = c preserving every g. Complete
/// within the node budget; exceeding it raises ResourceError.
struct AutomorphismResult {
    std::optional<std::vector<std::size_t>> pi;
    std::uint64_t nodes = 0;
};
AutomorphismResult find_automorphism(const PowerLanguage& power, const SpecialElements& pinned,
                                     const SearchLimits& limits = {});

/// Re-checks a returned bijection: pins plus g(y_1..y_r) == g(pi y_1..pi y_r)
/// exhaustively for every function.
bool verify_automorphism(const PowerLanguage& power, std::span<const std::size_t> pi,
                         const SpecialElements& pinned);

/// Sum of G(a, s, y_3, ..., y_n) over all / over injective assignments of a
/// power-language instance whose first two variables are pinned.
Rat hom_value(const Instance& power_instance, std::size_t a_elem, std::size_t s_elem,
              const EnumLimits& limits = {});
Rat mon_value(const Instance& power_instance, std::size_t a_elem, std::size_t s_elem,
              const EnumLimits& limits = {});

/// Rebuilds a base-language instance over the materialized power language
/// (same applications, function i becomes g_i).
Instance lift_instance(const Instance& base_instance,
                       std::shared_ptr<const Language> power_language);

/// Positive integers N_1..N_k such that products q_1^N_1 ... q_k^N_k over Q
/// collide only for equal factor tuples. Minimal exponents satisfying the
/// growth inequality, brute-force verified, bumped on collision.
std::vector<std::uint64_t> multiplicity_sequence(const std::vector<Rat>& q_values, int k);

/// A concrete instance whose marginal matrix at some split fails
/// block-rank-1, searched over all instances within the bounds. nullopt
/// within bounds is inconclusive, not a tractability proof.
struct UnbalancedWitness {
    Instance instance;
    int a = 0, b = 0;
    RationalMatrix matrix;
    BlockRank1Check check;
};
struct WitnessBounds {
    int max_vars = 3;
    int max_apps = 3;
    EnumLimits enumeration = {};
};
std::optional<UnbalancedWitness> find_unbalanced_witness(std::shared_ptr<const Language> language,
                                                         const WitnessBounds& bounds = {});

enum class Outcome { Tractable, SharpPHard };
enum class HardReason { None, NoMaltsev, NoAutomorphism, UnbalancedInstance };

struct AutomorphismCert {
    int alpha = 0, beta = 0, kappa = 0, lambda = 0;
    std::vector<std::size_t> pi;
};

/// Classification outcome with a machine-checkable certificate (Tractable)
/// or counterexample (SharpPHard).
struct Verdict {
    Outcome outcome = Outcome::SharpPHard;
    HardReason reason = HardReason::None;
    std::size_t language_fingerprint = 0;

    // Tractable certificate
    std::optional<TernaryOperation> maltsev;
    std::vector<AutomorphismCert> automorphisms;

    // SharpPHard counterexamples
    std::optional<std::array<int, 4>> failed_quadruple;  // (alpha, beta, kappa, lambda)
    std::vector<MaltsevFailure> maltsev_failures;
    std::uint64_t maltsev_nodes = 0;
    std::optional<UnbalancedWitness> unbalanced;

    bool tractable() const { return outcome == Outcome::Tractable; }
};

/// The full pipeline: Mal'tsev polymorphism for the support language, then
/// an automorphism of the 6th power for every quadruple (alpha != beta,
/// kappa != lambda), scanned in lexicographic order. Any failure yields
/// SharpPHard with the first failing stage as the reason.
Verdict classify(std::shared_ptr<const Language> language, const SearchLimits& limits = {});

}  // namespace cspcount
