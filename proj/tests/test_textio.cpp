#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cspcount/corpus.hpp"
#include "cspcount/oracle.hpp"
#include "cspcount/textio.hpp"
#include "testutil.hpp"

using namespace cspcount;
using namespace cspcount::testing;

namespace {

const char* kSample = R"(# weighted equality plus extras
domain 2

function f 2
2 0
0 3

function half 1
1/2 3

instance chain 3
apply f 1 2
apply f 2 3
end

graph path 3
edge 1 2
edge 2 3
end
)";

}  // namespace

TEST_CASE("parses a full problem file") {
    ProblemFile problem = parse_problem_text(kSample);
    CHECK(problem.language->domain().size == 2);
    CHECK(problem.language->functions().size() == 2);
    CHECK(problem.language->function(1).at_index(0) == make_rat(1, 2));
    CHECK(partition_function(problem.instance("chain")) == Rat(13));
    CHECK(problem.graph("path").edges.size() == 2);
    CHECK_THROWS_AS(problem.instance("missing"), std::invalid_argument);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_problem_text(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("domain 2\nfunction f 2\n1 2 3 oops\n") == 3);
    CHECK(line_of("domain 0\n") == 1);
    CHECK(line_of("domain 2\ndomain 2\n") == 2);
    CHECK(line_of("function f 1\n1 1\n") == 1);                       // function before domain
    CHECK(line_of("domain 2\nfunction f 1\n1 -2\n") == 3);            // negative weight
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ninstance i 2\napply g 1\nend\n") == 5);
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ninstance i 2\napply f 3\nend\n") == 6);
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ninstance i 2\nnonsense\n") == 5);
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ninstance i 1\napply f 1\n") > 0);  // missing end
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ninstance i 1\nend\nfunction g 1\n1 1\n") == 6);
    CHECK(line_of("domain 2\nfunction f 1\n1 1\ngraph g 2\nedge 1 3\nend\n") == 5);
}

TEST_CASE("missing file reports a parse error") {
    CHECK_THROWS_AS(load_problem("/nonexistent/path.csp"), ParseError);
}

TEST_CASE("writer output re-parses to identical bytes") {
    for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
        CorpusOptions options;
        options.graphs = 2;
        ProblemFile problem = random_problem(seed, options);
        const std::string first = problem_text(problem);
        ProblemFile reparsed = parse_problem_text(first);
        CHECK(problem_text(reparsed) == first);
        CHECK(reparsed.language->fingerprint() == problem.language->fingerprint());
        for (std::size_t i = 0; i < problem.instances.size(); ++i)
            CHECK(partition_function(reparsed.instances[i].second) ==
                  partition_function(problem.instances[i].second));
    }
}

TEST_CASE("rationals print in lowest terms, integers bare by default") {
    ProblemFile problem = parse_problem_text("domain 2\nfunction f 1\n2/4 6/2\n");
    const std::string text = problem_text(problem);
    CHECK(text.find("1/2 3") != std::string::npos);
    const std::string strict = problem_text(problem, true);
    CHECK(strict.find("1/2 3/1") != std::string::npos);
}
