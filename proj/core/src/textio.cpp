#include "cspcount/textio.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "cspcount/errors.hpp"

namespace cspcount {

const Instance& ProblemFile::instance(const std::string& name) const {
    for (const auto& [n, inst] : instances)
        if (n == name) return inst;
    throw std::invalid_argument("no instance named '" + name + "'");
}

const Graph& ProblemFile::graph(const std::string& name) const {
    for (const auto& [n, g] : graphs)
        if (n == name) return g;
    throw std::invalid_argument("no graph named '" + name + "'");
}

namespace {

struct Tokenizer {
    std::istream& input;
    std::string line;
    std::vector<std::string> tokens;
    std::size_t next = 0;
    int line_number = 0;

    explicit Tokenizer(std::istream& in) : input(in) {}

    // Refills from the next non-empty line; returns false at end of input.
    bool refill() {
        while (next >= tokens.size()) {
            if (!std::getline(input, line)) return false;
            ++line_number;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            tokens.clear();
            next = 0;
            std::istringstream split(line);
            std::string token;
            while (split >> token) tokens.push_back(token);
        }
        return true;
    }

    bool at_line_end() const { return next >= tokens.size(); }

    std::string take(const char* what) {
        if (!refill()) throw ParseError(std::string("unexpected end of input, expected ") + what,
                                        line_number);
        return tokens[next++];
    }

    int take_int(const char* what) {
        const std::string token = take(what);
        try {
            std::size_t used = 0;
            const int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            return value;
        } catch (const std::exception&) {
            throw ParseError("expected an integer for " + std::string(what) + ", got '" + token +
                                 "'",
                             line_number);
        }
    }

    Rat take_rat(const char* what) {
        const std::string token = take(what);
        try {
            return parse_rat(token);
        } catch (const std::exception&) {
            throw ParseError("expected a rational for " + std::string(what) + ", got '" + token +
                                 "'",
                             line_number);
        }
    }

    void expect_line_end(const char* context) {
        if (!at_line_end())
            throw ParseError(std::string("trailing tokens after ") + context, line_number);
    }
};

}  // namespace

ProblemFile parse_problem(std::istream& input) {
    Tokenizer in(input);
    int domain_size = 0;
    std::vector<FunctionTable> functions;
    std::shared_ptr<const Language> language;
    ProblemFile problem;

    auto finalize_language = [&] {
        if (language) return;
        if (domain_size == 0) throw ParseError("no 'domain' declaration", in.line_number);
        if (functions.empty()) throw ParseError("no functions declared", in.line_number);
        language = std::make_shared<Language>(Domain{domain_size}, std::move(functions));
        problem.language = language;
    };

    while (in.refill()) {
        const std::string keyword = in.take("a directive");
        if (keyword == "domain") {
            if (domain_size != 0) throw ParseError("duplicate 'domain' declaration", in.line_number);
            domain_size = in.take_int("the domain size");
            if (domain_size < 1) throw ParseError("domain size must be >= 1", in.line_number);
            in.expect_line_end("'domain'");
        } else if (keyword == "function") {
            if (language)
                throw ParseError("function declared after an instance or graph", in.line_number);
            if (domain_size == 0)
                throw ParseError("'function' before 'domain'", in.line_number);
            const std::string name = in.take("the function name");
            const int arity = in.take_int("the arity");
            if (arity < 1) throw ParseError("arity must be >= 1", in.line_number);
            in.expect_line_end("the function header");
            const std::size_t count = tuple_count(domain_size, arity);
            std::vector<Rat> values;
            values.reserve(count);
            for (std::size_t i = 0; i < count; ++i) values.push_back(in.take_rat("a function value"));
            const int header_line = in.line_number;
            try {
                functions.emplace_back(name, domain_size, arity, std::move(values));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), header_line);
            }
        } else if (keyword == "instance") {
            finalize_language();
            const std::string name = in.take("the instance name");
            const int num_vars = in.take_int("the variable count");
            in.expect_line_end("the instance header");
            std::vector<Application> apps;
            for (;;) {
                const std::string directive = in.take("'apply' or 'end'");
                if (directive == "end") break;
                if (directive != "apply")
                    throw ParseError("expected 'apply' or 'end', got '" + directive + "'",
                                     in.line_number);
                const std::string fn = in.take("the applied function name");
                std::size_t index;
                try {
                    index = language->function_index(fn);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), in.line_number);
                }
                const int arity = language->function(index).arity();
                Application app{index, {}};
                for (int i = 0; i < arity; ++i) app.vars.push_back(in.take_int("a variable index"));
                in.expect_line_end("'apply'");
                apps.push_back(std::move(app));
            }
            try {
                problem.instances.emplace_back(name, Instance(language, num_vars, std::move(apps)));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), in.line_number);
            }
        } else if (keyword == "graph") {
            finalize_language();
            const std::string name = in.take("the graph name");
            Graph g;
            g.num_vertices = in.take_int("the vertex count");
            if (g.num_vertices < 1) throw ParseError("graph needs at least one vertex", in.line_number);
            in.expect_line_end("the graph header");
            for (;;) {
                const std::string directive = in.take("'edge' or 'end'");
                if (directive == "end") break;
                if (directive != "edge")
                    throw ParseError("expected 'edge' or 'end', got '" + directive + "'",
                                     in.line_number);
                const int u = in.take_int("an edge endpoint");
                const int v = in.take_int("an edge endpoint");
                if (u < 1 || u > g.num_vertices || v < 1 || v > g.num_vertices)
                    throw ParseError("edge endpoint out of range", in.line_number);
                in.expect_line_end("'edge'");
                g.edges.emplace_back(u, v);
            }
            problem.graphs.emplace_back(name, std::move(g));
        } else {
            throw ParseError("unknown directive '" + keyword + "'", in.line_number);
        }
    }
    finalize_language();
    return problem;
}

ProblemFile parse_problem_text(const std::string& text) {
    std::istringstream stream(text);
    return parse_problem(stream);
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw ParseError("cannot open '" + path + "'");
    return parse_problem(stream);
}

void write_problem(std::ostream& output, const ProblemFile& problem, bool always_fraction) {
    const Language& lang = *problem.language;
    const int d = lang.domain().size;
    output << "domain " << d << "\n";
    for (const FunctionTable& f : lang.functions()) {
        output << "\nfunction " << f.name() << " " << f.arity() << "\n";
        const std::size_t row = static_cast<std::size_t>(d);
        for (std::size_t i = 0; i < f.values().size(); i += row) {
            for (std::size_t j = 0; j < row; ++j)
                output << (j ? " " : "") << rat_str(f.values()[i + j], always_fraction);
            output << "\n";
        }
    }
    for (const auto& [name, inst] : problem.instances) {
        output << "\ninstance " << name << " " << inst.num_vars() << "\n";
        for (const Application& app : inst.applications()) {
            output << "apply " << lang.function(app.function).name();
            for (int v : app.vars) output << " " << v;
            output << "\n";
        }
        output << "end\n";
    }
    for (const auto& [name, g] : problem.graphs) {
        output << "\ngraph " << name << " " << g.num_vertices << "\n";
        for (const auto& [u, v] : g.edges) output << "edge " << u << " " << v << "\n";
        output << "end\n";
    }
}

std::string problem_text(const ProblemFile& problem, bool always_fraction) {
    std::ostringstream stream;
    write_problem(stream, problem, always_fraction);
    return stream.str();
}

}  // namespace cspcount
