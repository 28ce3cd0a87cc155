#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cspcount/errors.hpp"
#include "cspcount/exactmat.hpp"
#include "cspcount/model.hpp"

namespace cspcount {

/// All distinct positive values achievable as a product of m function cell
/// values of a language, built by dynamic programming over partial products.
struct ValueSet {
    int m = 0;
    std::vector<Rat> values;  // sorted ascending, distinct
};
ValueSet value_set(const Language& language, int m);

/// Undirected graph; self-loops and parallel edges allowed. 1-based
/// endpoints.
struct Graph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// k copies of every application over the same variables, so that
/// F_k = (F_1)^k pointwise.
Instance replicate(const Instance& instance, int k);

/// |support(F_I)| recovered from Z(I_1), ..., Z(I_K) via an exact
/// Vandermonde solve over the value set, K = |Value_m|. The solution is
/// asserted to consist of non-negative integers. `z_oracle` supplies the
/// partition-function values (queries are independent per k).
std::uint64_t count_support(const Instance& instance,
                            const std::function<Rat(const Instance&)>& z_oracle);

/// Convenience overload backed by the brute-force oracle.
std::uint64_t count_support(const Instance& instance, const EnumLimits& limits = {});

/// The graph gadget: per vertex a block of `a` variables, per edge a shared
/// middle block plus two private tails, wired as two copies of the base
/// instance. Satisfies Z(gadget) = Z_A(G) with A = M M^T for
/// M = marginal_matrix(instance, a, b).
Instance hardness_gadget(const Instance& instance, int a, int b, const Graph& graph);

/// Z_A(G): sum over all vertex maps into A's row set of the edge-weight
/// product. A must be square and symmetric.
Rat graph_partition_function(const RationalMatrix& a, const Graph& graph,
                             const EnumLimits& limits = {});

/// k copies of the instance sharing variables x_1..x_c, with fresh tails
/// per copy. k = 1 reproduces the instance.
Instance shared_prefix_power(const Instance& instance, int c, int k);

/// Two copies of the instance sharing the first `a` original variables
/// (renamed y), with separate distinguished variables x_1, x_2 and separate
/// tails. The (1,2) marginal of the result equals M^T M for
/// M = marginal_matrix(instance, a, a+1).
Instance prefix_doubling(const Instance& instance, int a);

}  // namespace cspcount
