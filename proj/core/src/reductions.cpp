#include "cspcount/reductions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cspcount/oracle.hpp"

namespace cspcount {

ValueSet value_set(const Language& language, int m) {
    if (m < 0) throw std::invalid_argument("value_set: m must be >= 0");
    std::set<Rat> cells;
    for (const FunctionTable& f : language.functions())
        for (const Rat& v : f.values())
            if (sgn(v) > 0) cells.insert(v);

    std::set<Rat> reachable{Rat(1)};
    for (int round = 0; round < m; ++round) {
        std::set<Rat> next;
        for (const Rat& partial : reachable)
            for (const Rat& cell : cells) next.insert(partial * cell);
        reachable = std::move(next);
    }
    ValueSet result;
    result.m = m;
    result.values.assign(reachable.begin(), reachable.end());
    return result;
}

Instance replicate(const Instance& instance, int k) {
    if (k < 1) throw std::invalid_argument("replicate: k must be >= 1");
    std::vector<Application> apps;
    apps.reserve(instance.applications().size() * static_cast<std::size_t>(k));
    for (const Application& app : instance.applications())
        for (int copy = 0; copy < k; ++copy) apps.push_back(app);
    return Instance(instance.language_ptr(), instance.num_vars(), std::move(apps));
}

namespace {

// Exact Gaussian elimination with first-nonzero pivoting; the Vandermonde
// systems here are square and nonsingular by construction.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
        if (pivot == n) throw std::logic_error("singular linear system");
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || sgn(m[row][col]) == 0) continue;
            const Rat factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Rat> solution(n);
    for (std::size_t i = 0; i < n; ++i) solution[i] = rhs[i] / m[i][i];
    return solution;
}

}  // namespace

std::uint64_t count_support(const Instance& instance,
                            const std::function<Rat(const Instance&)>& z_oracle) {
    const int m = static_cast<int>(instance.applications().size());
    const ValueSet values = value_set(instance.language(), m);
    const std::size_t k_max = values.values.size();
    if (k_max == 0) return 0;  // no positive cell anywhere, so F vanishes

    std::vector<Rat> z;
    z.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k)
        z.push_back(z_oracle(replicate(instance, static_cast<int>(k))));

    // Z(I_k) = sum_c N_c c^k for k = 1..K: a Vandermonde system in the N_c.
    std::vector<std::vector<Rat>> matrix(k_max, std::vector<Rat>(k_max));
    for (std::size_t k = 0; k < k_max; ++k)
        for (std::size_t c = 0; c < k_max; ++c)
            matrix[k][c] = pow_rat(values.values[c], static_cast<std::uint64_t>(k) + 1);
    std::vector<Rat> counts = solve_linear(std::move(matrix), std::move(z));

    std::uint64_t support = 0;
    for (const Rat& n_c : counts) {
        if (!is_integer(n_c) || sgn(n_c) < 0)
            throw std::logic_error("Vandermonde solve produced a non-integral or negative count");
        if (!n_c.get_num().fits_ulong_p())
            throw std::logic_error("support count does not fit in 64 bits");
        support += n_c.get_num().get_ui();
    }
    return support;
}

std::uint64_t count_support(const Instance& instance, const EnumLimits& limits) {
    return count_support(instance,
                         [&limits](const Instance& i) { return partition_function(i, limits); });
}

Instance hardness_gadget(const Instance& instance, int a, int b, const Graph& graph) {
    const int n = instance.num_vars();
    if (!(1 <= a && a < b && b <= n)) throw std::invalid_argument("hardness_gadget: bad split");
    if (graph.num_vertices < 1) throw std::invalid_argument("hardness_gadget: empty graph");
    for (const auto& [u, v] : graph.edges)
        if (u < 1 || u > graph.num_vertices || v < 1 || v > graph.num_vertices)
            throw std::invalid_argument("hardness_gadget: edge endpoint out of range");

    const int ny = b - a;       // shared middle block per edge
    const int nz = n - b;       // private tail per instance copy
    const int per_edge = ny + 2 * nz;
    const int vertex_base = graph.num_vertices * a;
    const int total_vars = vertex_base + static_cast<int>(graph.edges.size()) * per_edge;

    std::vector<Application> apps;
    auto add_copy = [&](int vertex, int edge_index, bool second_tail) {
        const int edge_base = vertex_base + edge_index * per_edge;
        for (const Application& app : instance.applications()) {
            Application mapped{app.function, {}};
            mapped.vars.reserve(app.vars.size());
            for (int v : app.vars) {
                int target;
                if (v <= a)
                    target = (vertex - 1) * a + v;
                else if (v <= b)
                    target = edge_base + (v - a);
                else
                    target = edge_base + ny + (second_tail ? nz : 0) + (v - b);
                mapped.vars.push_back(target);
            }
            apps.push_back(std::move(mapped));
        }
    };
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        add_copy(graph.edges[e].first, static_cast<int>(e), false);
        add_copy(graph.edges[e].second, static_cast<int>(e), true);
    }
    return Instance(instance.language_ptr(), total_vars, std::move(apps));
}

Rat graph_partition_function(const RationalMatrix& a, const Graph& graph,
                             const EnumLimits& limits) {
    if (a.rows() != a.cols()) throw std::invalid_argument("graph partition function: matrix not square");
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r + 1; c < a.cols(); ++c)
            if (a.at(r, c) != a.at(c, r))
                throw std::invalid_argument("graph partition function: matrix not symmetric");

    const int q = static_cast<int>(a.rows());
    const std::size_t total = tuple_count(q, graph.num_vertices);
    if (total > limits.max_points)
        throw ResourceError("vertex-map enumeration exceeds the configured bound");

    Rat z(0);
    Tuple map(static_cast<std::size_t>(graph.num_vertices), 1);
    for (std::size_t index = 0; index < total; ++index) {
        Rat product(1);
        for (const auto& [u, v] : graph.edges) {
            product *= a.at(static_cast<std::size_t>(map[static_cast<std::size_t>(u - 1)] - 1),
                            static_cast<std::size_t>(map[static_cast<std::size_t>(v - 1)] - 1));
            if (sgn(product) == 0) break;
        }
        z += product;
        next_tuple(map, q);
    }
    return z;
}

Instance shared_prefix_power(const Instance& instance, int c, int k) {
    const int n = instance.num_vars();
    if (c < 1 || c > n) throw std::invalid_argument("shared_prefix_power: bad prefix length");
    if (k < 1) throw std::invalid_argument("shared_prefix_power: k must be >= 1");
    const int total_vars = c + k * (n - c);
    std::vector<Application> apps;
    for (int copy = 0; copy < k; ++copy) {
        const int tail_base = c + copy * (n - c);
        for (const Application& app : instance.applications()) {
            Application mapped{app.function, {}};
            mapped.vars.reserve(app.vars.size());
            for (int v : app.vars) mapped.vars.push_back(v <= c ? v : tail_base + (v - c));
            apps.push_back(std::move(mapped));
        }
    }
    return Instance(instance.language_ptr(), total_vars, std::move(apps));
}

Instance prefix_doubling(const Instance& instance, int a) {
    const int n = instance.num_vars();
    if (a < 1 || a >= n) throw std::invalid_argument("prefix_doubling: bad split");
    // Variables in order: x1, x2, y_1..y_a, z_1..z_{n-a-1}, w_1..w_{n-a-1}.
    const int tail = n - a - 1;
    std::vector<Application> apps;
    auto add_copy = [&](int distinguished, int tail_base) {
        for (const Application& app : instance.applications()) {
            Application mapped{app.function, {}};
            mapped.vars.reserve(app.vars.size());
            for (int v : app.vars) {
                int target;
                if (v <= a)
                    target = 2 + v;
                else if (v == a + 1)
                    target = distinguished;
                else
                    target = tail_base + (v - a - 1);
                mapped.vars.push_back(target);
            }
            apps.push_back(std::move(mapped));
        }
    };
    add_copy(1, 2 + a);
    add_copy(2, 2 + a + tail);
    return Instance(instance.language_ptr(), 2 * n - a, std::move(apps));
}

}  // namespace cspcount
