#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cspcount/corpus.hpp"
#include "cspcount/oracle.hpp"
#include "cspcount/reductions.hpp"
#include "testutil.hpp"

using namespace cspcount;
using namespace cspcount::testing;

TEST_CASE("replicate worked cases") {
    CHECK(partition_function(replicate(one2_single(), 2)) == Rat(7));  // 1+1+1+4
    CHECK(partition_function(replicate(eqw_chain(), 2)) == Rat(97));   // 16+81
    Instance same = replicate(eqw_chain(), 1);
    CHECK(same.applications().size() == eqw_chain().applications().size());
    CHECK(partition_function(same) == Rat(13));
    CHECK_THROWS_AS(replicate(eqw_chain(), 0), std::invalid_argument);
}

TEST_CASE("replicate obeys the pointwise power law") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 2, 2, 3}));
        Instance instance = random_instance(rng, lang, 3, 2, 2, 1);
        Instance cubed = replicate(instance, 3);
        Tuple x(static_cast<std::size_t>(instance.num_vars()), 1);
        do {
            const Rat base = evaluate(instance, x);
            CHECK(evaluate(cubed, x) == base * base * base);
        } while (next_tuple(x, 2));
    }
}

TEST_CASE("value sets by product closure") {
    const Language& eqw = *eqw_language();
    CHECK(value_set(eqw, 0).values == std::vector<Rat>{Rat(1)});
    CHECK(value_set(eqw, 1).values == std::vector<Rat>{Rat(2), Rat(3)});
    CHECK(value_set(eqw, 2).values == std::vector<Rat>{Rat(4), Rat(6), Rat(9)});
    CHECK(value_set(*zero_language(), 2).values.empty());
}

TEST_CASE("count_support recovers the worked example") {
    Instance single_eq(eqw_language(), 2, {Application{0, {1, 2}}});
    CHECK(partition_function(single_eq) == Rat(5));
    CHECK(partition_function(replicate(single_eq, 2)) == Rat(13));
    CHECK(count_support(single_eq) == 2);
    CHECK(count_support(single_eq) == relation_of(single_eq).size());
}

TEST_CASE("count_support special cases") {
    // constant value on the support: a single-entry Vandermonde
    auto lang = std::make_shared<Language>(
        Domain{2}, std::vector<FunctionTable>{FunctionTable("c", 2, 2, rats({2, 2, 0, 2}))});
    Instance instance(lang, 2, {Application{0, {1, 2}}});
    CHECK(count_support(instance) == 3);

    Instance zeroed(zero_language(), 2, {Application{0, {1, 2}}});
    CHECK(count_support(zeroed) == 0);

    Instance empty(eqw_language(), 2, {});
    CHECK(count_support(empty) == 4);  // d^n
}

TEST_CASE("count_support equals the enumerated support size on random instances") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 25; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 2, 2, 3}));
        Instance instance = random_instance(rng, lang, 4, 3, 2, 1);
        CHECK(count_support(instance) == relation_of(instance).size());
    }
}

TEST_CASE("count_support accepts an external oracle") {
    Instance single_eq(eqw_language(), 2, {Application{0, {1, 2}}});
    int queries = 0;
    const std::uint64_t n = count_support(single_eq, [&queries](const Instance& i) {
        ++queries;
        return partition_function(i);
    });
    CHECK(n == 2);
    CHECK(queries == 2);  // |Value_1| = 2
}

TEST_CASE("hardness gadget worked cases") {
    Graph single_edge{2, {{1, 2}}};
    Instance gadget = hardness_gadget(one2_single(), 1, 2, single_edge);
    CHECK(gadget.num_vars() == 3);  // two vertex blocks of 1, one shared middle
    CHECK(partition_function(gadget) == Rat(13));

    RationalMatrix m = marginal_matrix(one2_single(), 1, 2);
    RationalMatrix a = multiply(m, transpose(m));
    CHECK(a == matrix_from({{2, 3}, {3, 5}}));
    CHECK(graph_partition_function(a, single_edge) == Rat(13));

    Graph no_edges{2, {}};
    CHECK(partition_function(hardness_gadget(one2_single(), 1, 2, no_edges)) == Rat(4));

    Graph self_loop{1, {{1, 1}}};
    CHECK(partition_function(hardness_gadget(one2_single(), 1, 2, self_loop)) == Rat(7));
    CHECK(graph_partition_function(a, self_loop) == Rat(7));
}

TEST_CASE("graph partition function worked cases") {
    RationalMatrix a = matrix_from({{2, 3}, {3, 5}});
    CHECK(graph_partition_function(a, Graph{2, {{1, 2}}}) == Rat(13));
    CHECK(graph_partition_function(a, Graph{3, {}}) == Rat(8));  // rows^vertices
    RationalMatrix identity = matrix_from({{1, 0}, {0, 1}});
    CHECK(graph_partition_function(identity, Graph{3, {{1, 2}, {2, 3}, {1, 3}}}) == Rat(2));
    RationalMatrix asym = matrix_from({{1, 2}, {3, 4}});
    CHECK_THROWS_AS(graph_partition_function(asym, Graph{2, {{1, 2}}}), std::invalid_argument);
}

TEST_CASE("the gadget identity holds on a randomized corpus") {
    std::mt19937_64 rng(89);
    int checked = 0;
    while (checked < 20) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 1, 2, 3}));
        Instance instance = random_instance(rng, lang, 3, 2, 2, 1);
        const int n = instance.num_vars();
        if (n < 2) continue;
        const int a = 1, b = 2;
        Graph graph = random_graph(rng, 3, 3);
        Instance gadget = hardness_gadget(instance, a, b, graph);
        if (tuple_count(2, gadget.num_vars()) > 1u << 15) continue;
        RationalMatrix m = marginal_matrix(instance, a, b);
        RationalMatrix am = multiply(m, transpose(m));
        CHECK(graph_partition_function(am, graph) == partition_function(gadget));
        ++checked;
    }
}

TEST_CASE("shared prefix power worked cases") {
    Instance doubled = shared_prefix_power(eqw_chain(), 2, 2);
    CHECK(doubled.num_vars() == 4);
    CHECK(relation_of(doubled).tuples() == std::vector<Tuple>{{1, 1, 1, 1}, {2, 2, 2, 2}});

    Instance same = shared_prefix_power(eqw_chain(), 2, 1);
    CHECK(relation_of(same).tuples() == relation_of(eqw_chain()).tuples());

    // c == n: k interleaved copies over the same variables
    Instance interleaved = shared_prefix_power(eqw_chain(), 3, 2);
    CHECK(interleaved.num_vars() == 3);
    CHECK(partition_function(interleaved) == partition_function(replicate(eqw_chain(), 2)));
}

TEST_CASE("prefix doubling realizes the M^T M marginal") {
    Instance doubled = prefix_doubling(eqw_chain(), 1);
    CHECK(doubled.num_vars() == 5);  // 2n - a
    CHECK(marginal_matrix(doubled, 1, 2) == matrix_from({{16, 0}, {0, 81}}));

    Instance one2_doubled = prefix_doubling(one2_single(), 1);
    CHECK(marginal_matrix(one2_doubled, 1, 2) == matrix_from({{2, 3}, {3, 5}}));

    Instance zeroed(zero_language(), 2, {Application{0, {1, 2}}});
    RationalMatrix z = marginal_matrix(prefix_doubling(zeroed, 1), 1, 2);
    for (const Rat& v : z.entries()) CHECK(sgn(v) == 0);
}

TEST_CASE("prefix doubling matches M^T M on random instances") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 15; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 1, 2, 3}));
        Instance instance = random_instance(rng, lang, 3, 2, 2, 1);
        for (int a = 1; a < instance.num_vars(); ++a) {
            RationalMatrix m = marginal_matrix(instance, a, a + 1);
            CHECK(marginal_matrix(prefix_doubling(instance, a), 1, 2) ==
                  multiply(transpose(m), m));
        }
    }
}

TEST_CASE("shared prefix powers of balanced instances stabilize in block structure") {
    // the counting analogue of the existential matrix stays block-rank-1 and
    // keeps its support across replication depth, and the W-set counts are
    // multiplicative across the block
    std::mt19937_64 rng(101);
    auto lang = std::make_shared<Language>(random_balanced_language(rng, {2, 1, 2, 3, 2}));
    Instance instance = random_instance(rng, lang, 4, 2, 4, 1);
    const int n = instance.num_vars();
    const int a = 1, b = 2, c = 3;
    REQUIRE(n >= 3);

    std::vector<RationalMatrix> counts;
    for (int k = 1; k <= 3; ++k) {
        Instance powered = shared_prefix_power(instance, c, k);
        counts.push_back(existential_matrix(powered, a, b, powered.num_vars()));
        CHECK(is_block_rank_1(counts.back()).ok);
    }
    for (std::size_t k = 1; k < counts.size(); ++k)
        for (std::size_t r = 0; r < counts[0].rows(); ++r)
            for (std::size_t col = 0; col < counts[0].cols(); ++col)
                CHECK((sgn(counts[0].at(r, col)) > 0) == (sgn(counts[k].at(r, col)) > 0));

    // |W11| |W22| == |W12| |W21| for block-mates, by enumeration of W sets
    RelationTable r = relation_of(instance);
    BlockDecomposeResult blocks = block_decompose(counts[0]);
    REQUIRE(blocks.rectangular());
    for (const auto& block : blocks.decomposition->blocks) {
        if (block.rows.size() < 2 || block.cols.size() < 2) continue;
        auto w_count = [&](std::size_t row, std::size_t col) {
            std::set<Tuple> seen;
            for (const Tuple& t : r.tuples()) {
                if (encode_tuple(std::span<const int>(t.data(), static_cast<std::size_t>(a)), 2) != row)
                    continue;
                if (encode_tuple(std::span<const int>(t.data() + a, static_cast<std::size_t>(b - a)),
                                 2) != col)
                    continue;
                seen.insert(Tuple(t.begin() + b, t.begin() + c));
            }
            return seen.size();
        };
        const std::size_t r1 = block.rows[0], r2 = block.rows[1];
        const std::size_t c1 = block.cols[0], c2 = block.cols[1];
        CHECK(w_count(r1, c1) * w_count(r2, c2) == w_count(r1, c2) * w_count(r2, c1));
    }
}
