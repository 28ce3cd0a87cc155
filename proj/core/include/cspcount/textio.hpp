#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cspcount/model.hpp"
#include "cspcount/reductions.hpp"

namespace cspcount {

/// Parsed problem file: one language, named instances and graphs.
///
/// Format (line oriented, '#' starts a comment):
///   domain <d>
///   function <name> <arity>
///   <d^arity rationals, row-major, last index fastest, any line breaks>
///   instance <name> <num-vars>
///     apply <function> <i1> ... <ir>
///   end
///   graph <name> <num-vertices>
///     edge <u> <v>
///   end
///
/// All function definitions precede the first instance.
struct ProblemFile {
    std::shared_ptr<const Language> language;
    std::vector<std::pair<std::string, Instance>> instances;
    std::vector<std::pair<std::string, Graph>> graphs;

    const Instance& instance(const std::string& name) const;
    const Graph& graph(const std::string& name) const;
};

ProblemFile parse_problem(std::istream& input);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem(const std::string& path);

void write_problem(std::ostream& output, const ProblemFile& problem,
                   bool always_fraction = false);
std::string problem_text(const ProblemFile& problem, bool always_fraction = false);

}  // namespace cspcount
