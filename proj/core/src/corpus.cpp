#include "cspcount/corpus.hpp"

#include <algorithm>
#include <string>

namespace cspcount {

namespace {

// Bounded sampling; the slight modulo bias is irrelevant for fixtures and
// keeps the draw sequence platform independent.
int draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<int> random_partition(std::mt19937_64& rng, int d) {
    // group id per element, every group in [1, g] nonempty
    const int g = draw(rng, 1, d);
    std::vector<int> group(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) group[static_cast<std::size_t>(i)] = (i % g) + 1;
    for (int i = d - 1; i > 0; --i)
        std::swap(group[static_cast<std::size_t>(i)], group[static_cast<std::size_t>(draw(rng, 0, i))]);
    return group;
}

}  // namespace

Language random_balanced_language(std::mt19937_64& rng, const BalancedLanguageOptions& options) {
    const int d = options.domain;
    const std::vector<int> group = random_partition(rng, d);
    std::vector<FunctionTable> functions;
    for (int fn = 0; fn < options.num_functions; ++fn) {
        const int arity = draw(rng, 1, options.max_arity);
        // positive factor per (position, element); group membership decides support
        std::vector<std::vector<Rat>> factor(static_cast<std::size_t>(arity));
        for (auto& column : factor) {
            column.reserve(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a)
                column.push_back(make_rat(draw(rng, 1, options.max_numerator),
                                          draw(rng, 1, options.max_denominator)));
        }
        const std::size_t cells = tuple_count(d, arity);
        std::vector<Rat> values;
        values.reserve(cells);
        Tuple x(static_cast<std::size_t>(arity), 1);
        for (std::size_t i = 0; i < cells; ++i) {
            bool same_group = true;
            for (int j = 1; j < arity; ++j)
                if (group[static_cast<std::size_t>(x[static_cast<std::size_t>(j)] - 1)] !=
                    group[static_cast<std::size_t>(x[0] - 1)])
                    same_group = false;
            if (same_group) {
                Rat v(1);
                for (int j = 0; j < arity; ++j)
                    v *= factor[static_cast<std::size_t>(j)]
                               [static_cast<std::size_t>(x[static_cast<std::size_t>(j)] - 1)];
                values.push_back(std::move(v));
            } else {
                values.emplace_back(0);
            }
            next_tuple(x, d);
        }
        functions.emplace_back("f" + std::to_string(fn + 1), d, arity, std::move(values));
    }
    return Language(Domain{d}, std::move(functions));
}

Language random_language(std::mt19937_64& rng, const ArbitraryLanguageOptions& options) {
    const int d = options.domain;
    std::vector<FunctionTable> functions;
    for (int fn = 0; fn < options.num_functions; ++fn) {
        const int arity = draw(rng, 1, options.max_arity);
        const std::size_t cells = tuple_count(d, arity);
        std::vector<Rat> values;
        values.reserve(cells);
        for (std::size_t i = 0; i < cells; ++i) values.push_back(Rat(draw(rng, 0, options.max_value)));
        functions.emplace_back("f" + std::to_string(fn + 1), d, arity, std::move(values));
    }
    return Language(Domain{d}, std::move(functions));
}

Instance random_instance(std::mt19937_64& rng, std::shared_ptr<const Language> language,
                         int max_vars, int max_apps, int min_vars, int min_apps) {
    const int n = draw(rng, min_vars, max_vars);
    const int m = draw(rng, min_apps, max_apps);
    std::vector<Application> apps;
    apps.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const std::size_t fn =
            static_cast<std::size_t>(draw(rng, 0, static_cast<int>(language->functions().size()) - 1));
        Application app{fn, {}};
        const int arity = language->function(fn).arity();
        for (int j = 0; j < arity; ++j) app.vars.push_back(draw(rng, 1, n));
        apps.push_back(std::move(app));
    }
    return Instance(std::move(language), n, std::move(apps));
}

Graph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges) {
    Graph g;
    g.num_vertices = draw(rng, 1, max_vertices);
    const int edges = draw(rng, 0, max_edges);
    for (int e = 0; e < edges; ++e)
        g.edges.emplace_back(draw(rng, 1, g.num_vertices), draw(rng, 1, g.num_vertices));
    return g;
}

ProblemFile random_problem(std::uint64_t seed, const CorpusOptions& options) {
    std::mt19937_64 rng(seed);
    ProblemFile problem;
    problem.language = std::make_shared<Language>(
        options.balanced ? random_balanced_language(rng, options.balanced_language)
                         : random_language(rng, options.arbitrary_language));
    for (int i = 0; i < options.instances; ++i)
        problem.instances.emplace_back(
            "i" + std::to_string(i + 1),
            random_instance(rng, problem.language, options.max_vars, options.max_apps));
    for (int i = 0; i < options.graphs; ++i)
        problem.graphs.emplace_back("g" + std::to_string(i + 1),
                                    random_graph(rng, options.max_vertices, options.max_edges));
    return problem;
}

}  // namespace cspcount
