#pragma once

#include <memory>
#include <random>

#include "cspcount/model.hpp"
#include "cspcount/reductions.hpp"
#include "cspcount/textio.hpp"

namespace cspcount {

/// Deterministic fixture generation. Everything here is driven by a caller
/// seeded std::mt19937_64, so corpora are reproducible byte for byte.

struct BalancedLanguageOptions {
    int domain = 2;
    int num_functions = 2;
    int max_arity = 2;
    int max_numerator = 4;    // positive factor numerators in [1, max]
    int max_denominator = 2;  // denominators in [1, max]
};

/// A language of group-diagonal product tables: the domain is partitioned
/// into groups shared by all functions; a function vanishes unless all
/// arguments fall in one group, and restricted to a group it is a product
/// of positive per-position unary factors. Such languages are balanced.
Language random_balanced_language(std::mt19937_64& rng, const BalancedLanguageOptions& options);

struct ArbitraryLanguageOptions {
    int domain = 2;
    int num_functions = 1;
    int max_arity = 2;
    int max_value = 3;  // cells drawn uniformly from {0, ..., max_value}
};

/// Unconstrained small-palette tables; typically not balanced.
Language random_language(std::mt19937_64& rng, const ArbitraryLanguageOptions& options);

/// Uniformly random applications over a random variable count in
/// [min_vars, max_vars] and application count in [min_apps, max_apps].
Instance random_instance(std::mt19937_64& rng, std::shared_ptr<const Language> language,
                         int max_vars, int max_apps, int min_vars = 1, int min_apps = 0);

/// Random undirected graph; self-loops and parallel edges possible.
Graph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges);

struct CorpusOptions {
    bool balanced = true;
    BalancedLanguageOptions balanced_language;
    ArbitraryLanguageOptions arbitrary_language;
    int instances = 4;
    int max_vars = 4;
    int max_apps = 3;
    int graphs = 0;
    int max_vertices = 4;
    int max_edges = 5;
};

/// A full problem file (language + instances + graphs) from one seed.
ProblemFile random_problem(std::uint64_t seed, const CorpusOptions& options);

}  // namespace cspcount
