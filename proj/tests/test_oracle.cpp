#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cspcount/corpus.hpp"
#include "cspcount/oracle.hpp"
#include "testutil.hpp"

using namespace cspcount;
using namespace cspcount::testing;

TEST_CASE("partition function worked cases") {
    CHECK(partition_function(eqw_chain()) == Rat(13));
    CHECK(partition_function(one2_single()) == Rat(5));
    CHECK(partition_function(Instance(eqw_language(), 2, {})) == Rat(4));  // d^n empty products
}

TEST_CASE("partition function respects the enumeration bound") {
    EnumLimits tight{4, 1};
    CHECK_THROWS_AS(partition_function(eqw_chain(), tight), ResourceError);
    CHECK_NOTHROW(partition_function(Instance(eqw_language(), 2, {}), tight));
}

TEST_CASE("partition function is thread-count independent") {
    auto lang = eqw_language();
    std::vector<Application> apps;
    for (int i = 1; i < 11; ++i) apps.push_back(Application{0, {i, i + 1}});
    Instance long_chain(lang, 11, apps);
    const Rat seq = partition_function(long_chain, EnumLimits{10'000'000, 1});
    const Rat par = partition_function(long_chain, EnumLimits{10'000'000, 4});
    CHECK(seq == par);
    CHECK(seq == Rat(1024) + Rat(59049));  // 2^10 + 3^10 over the ten applications
}

TEST_CASE("relation_of worked cases") {
    CHECK(relation_of(eqw_chain()).tuples() == std::vector<Tuple>{{1, 1, 1}, {2, 2, 2}});
    CHECK(relation_of(one2_single()).size() == 4);
    Instance zeroed(zero_language(), 2, {Application{0, {1, 2}}});
    CHECK(relation_of(zeroed).empty());
}

TEST_CASE("marginal matrix worked cases") {
    RationalMatrix m12 = marginal_matrix(eqw_chain(), 1, 2);
    CHECK(m12 == matrix_from({{4, 0}, {0, 9}}));

    RationalMatrix m13 = marginal_matrix(eqw_chain(), 1, 3);  // b == n: entries are F itself
    CHECK(m13.rows() == 2);
    CHECK(m13.cols() == 4);
    CHECK(m13.at(0, 0) == Rat(4));   // (1,(1,1))
    CHECK(m13.at(1, 3) == Rat(9));   // (2,(2,2))
    Rat off(0);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (!(r == 0 && c == 0) && !(r == 1 && c == 3)) off += m13.at(r, c);
    CHECK(off == Rat(0));

    CHECK(marginal_matrix(one2_single(), 1, 2) == matrix_from({{1, 1}, {1, 2}}));
    CHECK_THROWS_AS(marginal_matrix(eqw_chain(), 2, 2), std::invalid_argument);
}

TEST_CASE("existential matrix worked cases") {
    CHECK(existential_matrix(eqw_chain(), 1, 2, 3) == matrix_from({{1, 0}, {0, 1}}));
    CHECK(existential_matrix(eqw_chain(), 1, 2, 2) == matrix_from({{1, 0}, {0, 1}}));
    CHECK(existential_matrix(one2_single(), 1, 2, 2) == matrix_from({{1, 1}, {1, 1}}));
}

TEST_CASE("projection returns least members") {
    ProjectionResult p = projection(relation_of(eqw_chain()), 1);
    CHECK(p.elements == std::vector<int>{1, 2});
    CHECK(p.members == std::vector<Tuple>{{1, 1, 1}, {2, 2, 2}});

    RelationTable empty(2, 2, {});
    CHECK(projection(empty, 1).elements.empty());

    ProjectionResult full = projection(relation_of(one2_single()), 2);
    CHECK(full.elements == std::vector<int>{1, 2});
    CHECK(full.members[0] == Tuple{1, 1});
}

TEST_CASE("equivalence classes by shared prefix") {
    EquivClasses chain = equivalence_classes(relation_of(eqw_chain()), 3);
    REQUIRE(chain.ok());
    CHECK(chain.classes == std::vector<std::vector<int>>{{1}, {2}});

    EquivClasses full = equivalence_classes(relation_of(one2_single()), 2);
    REQUIRE(full.ok());
    CHECK(full.classes == std::vector<std::vector<int>>{{1, 2}});

    RelationTable broken(3, 2, {{1, 1}, {1, 2}, {2, 2}, {2, 3}});
    EquivClasses bad = equivalence_classes(broken, 2);
    REQUIRE_FALSE(bad.ok());
    CHECK(*bad.violation == std::array<int, 3>{1, 2, 3});
}

TEST_CASE("witness bundles are deterministic") {
    WitnessBundle chain = witnesses(relation_of(eqw_chain()), 2);
    REQUIRE(chain.ok());
    REQUIRE(chain.classes.size() == 2);
    CHECK(chain.witnesses[0].prefix == Tuple{1});
    CHECK(chain.witnesses[0].suffixes == std::vector<Tuple>{{1}});
    CHECK(chain.witnesses[1].prefix == Tuple{2});
    CHECK(chain.witnesses[1].suffixes == std::vector<Tuple>{{2}});

    WitnessBundle full = witnesses(relation_of(one2_single()), 2);
    REQUIRE(full.ok());
    CHECK(full.witnesses[0].prefix == Tuple{1});
    CHECK(full.witnesses[0].suffixes == std::vector<Tuple>{{}, {}});  // n - i == 0

    WitnessBundle empty = witnesses(RelationTable(2, 2, {}), 2);
    CHECK(empty.ok());
    CHECK(empty.classes.empty());
}

TEST_CASE("witness bundle failure modes") {
    RelationTable broken(3, 2, {{1, 1}, {1, 2}, {2, 2}, {2, 3}});
    WitnessBundle bad = witnesses(broken, 2);
    CHECK_FALSE(bad.ok());
    CHECK(bad.not_equivalence.has_value());

    // ~_2 is an equivalence (every pair shares some prefix) but no single
    // prefix covers the whole class {1,2,3}.
    RelationTable cyclic(3, 2, {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 1}, {3, 3}});
    WitnessBundle uncovered = witnesses(cyclic, 2);
    CHECK_FALSE(uncovered.ok());
    CHECK(uncovered.no_uniform_prefix_class == 0);
}

TEST_CASE("balance test battery on worked instances") {
    CHECK(test_balance(eqw_chain()).balanced);
    CHECK(test_weak_balance(eqw_chain()).balanced);
    CHECK(test_primitive_balance(eqw_chain()).balanced);
    CHECK(test_strong_balance(eqw_chain()).balanced);

    BalanceVerdict one2 = test_primitive_balance(one2_single());
    REQUIRE_FALSE(one2.balanced);
    CHECK(one2.violation->a == 1);
    CHECK(one2.violation->b == 2);

    Instance single_var(eqw_language(), 1, {});
    CHECK(test_balance(single_var).balanced);  // no valid splits
}

TEST_CASE("Z equals the total mass of every marginal matrix") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 2, 2, 3}));
        Instance instance = random_instance(rng, lang, 4, 3, 2, 1);
        const Rat z = partition_function(instance);
        for (int a = 1; a < instance.num_vars(); ++a)
            for (int b = a + 1; b <= instance.num_vars(); ++b) {
                RationalMatrix m = marginal_matrix(instance, a, b);
                Rat mass(0);
                for (const Rat& v : m.entries()) mass += v;
                CHECK(mass == z);
            }
    }
}

TEST_CASE("relation_of is exactly the support of evaluate") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 1, 2, 2}));
        Instance instance = random_instance(rng, lang, 3, 3, 2, 1);
        RelationTable r = relation_of(instance);
        Tuple x(static_cast<std::size_t>(instance.num_vars()), 1);
        do {
            CHECK(r.contains(x) == (sgn(evaluate(instance, x)) > 0));
        } while (next_tuple(x, 2));
    }
}

TEST_CASE("balance implies weak and primitive balance") {
    std::mt19937_64 rng(41);
    int balanced_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto lang = std::make_shared<Language>(random_language(rng, {2, 1, 2, 2}));
        Instance instance = random_instance(rng, lang, 3, 2, 2, 1);
        if (test_balance(instance).balanced) {
            ++balanced_seen;
            CHECK(test_weak_balance(instance).balanced);
            CHECK(test_primitive_balance(instance).balanced);
        }
    }
    CHECK(balanced_seen > 0);
}
