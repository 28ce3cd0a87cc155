#include "cspcount/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace cspcount {

namespace {

std::size_t checked_space(const Instance& instance, const EnumLimits& limits) {
    const std::size_t total =
        tuple_count(instance.language().domain().size, instance.num_vars());
    if (total > limits.max_points)
        throw ResourceError("enumeration of " + std::to_string(total) +
                            " assignments exceeds the configured bound of " +
                            std::to_string(limits.max_points));
    return total;
}

Rat sum_range(const Instance& instance, std::size_t begin, std::size_t end) {
    const int d = instance.language().domain().size;
    Rat sum(0);
    if (begin >= end) return sum;
    Tuple x = decode_tuple(begin, d, instance.num_vars());
    for (std::size_t index = begin; index < end; ++index) {
        if (evaluates_positive(instance, x)) sum += evaluate(instance, x);
        next_tuple(x, d);
    }
    return sum;
}

}  // namespace

Rat partition_function(const Instance& instance, const EnumLimits& limits) {
    const std::size_t total = checked_space(instance, limits);
    const int threads = std::max(1, limits.threads);
    if (threads == 1 || total < 1024) return sum_range(instance, 0, total);

    // Disjoint assignment ranges; exact addition is associative, so the
    // split does not affect the result.
    std::vector<Rat> partial(static_cast<std::size_t>(threads), Rat(0));
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        pool.emplace_back([&instance, &partial, t, begin, end] {
            partial[static_cast<std::size_t>(t)] = sum_range(instance, begin, end);
        });
    }
    for (auto& th : pool) th.join();
    Rat sum(0);
    for (const Rat& p : partial) sum += p;
    return sum;
}

RelationTable relation_of(const Instance& instance, const EnumLimits& limits) {
    const std::size_t total = checked_space(instance, limits);
    const int d = instance.language().domain().size;
    std::vector<Tuple> tuples;
    Tuple x(static_cast<std::size_t>(instance.num_vars()), 1);
    for (std::size_t index = 0; index < total; ++index) {
        if (evaluates_positive(instance, x)) tuples.push_back(x);
        next_tuple(x, d);
    }
    return RelationTable(d, instance.num_vars(), std::move(tuples));
}

namespace {

std::vector<Tuple> tuple_labels(int d, int len) {
    const std::size_t count = tuple_count(d, len);
    std::vector<Tuple> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) labels.push_back(decode_tuple(i, d, len));
    return labels;
}

}  // namespace

RationalMatrix marginal_matrix(const Instance& instance, int a, int b, const EnumLimits& limits) {
    const int n = instance.num_vars();
    if (!(1 <= a && a < b && b <= n)) throw std::invalid_argument("marginal_matrix: bad split");
    const std::size_t total = checked_space(instance, limits);
    const int d = instance.language().domain().size;
    const std::size_t rows = tuple_count(d, a);
    const std::size_t cols = tuple_count(d, b - a);
    std::vector<Rat> entries(rows * cols, Rat(0));
    Tuple x(static_cast<std::size_t>(n), 1);
    for (std::size_t index = 0; index < total; ++index) {
        if (evaluates_positive(instance, x)) {
            const std::size_t row = encode_tuple(std::span<const int>(x.data(), static_cast<std::size_t>(a)), d);
            const std::size_t col = encode_tuple(
                std::span<const int>(x.data() + a, static_cast<std::size_t>(b - a)), d);
            entries[row * cols + col] += evaluate(instance, x);
        }
        next_tuple(x, d);
    }
    return RationalMatrix(tuple_labels(d, a), tuple_labels(d, b - a), std::move(entries));
}

RationalMatrix existential_matrix(const RelationTable& r, int a, int b, int c) {
    const int n = r.arity();
    if (!(1 <= a && a < b && b <= c && c <= n))
        throw std::invalid_argument("existential_matrix: bad split");
    const int d = r.domain_size();
    const std::size_t cols = tuple_count(d, b - a);
    // Distinct (u, v, w) seen among members of R; z is existential.
    std::set<Tuple> seen;
    std::vector<Rat> entries(tuple_count(d, a) * cols, Rat(0));
    for (const Tuple& t : r.tuples()) {
        Tuple uvw(t.begin(), t.begin() + c);
        if (seen.insert(std::move(uvw)).second) {
            const std::size_t row = encode_tuple(std::span<const int>(t.data(), static_cast<std::size_t>(a)), d);
            const std::size_t col = encode_tuple(
                std::span<const int>(t.data() + a, static_cast<std::size_t>(b - a)), d);
            entries[row * cols + col] += 1;
        }
    }
    return RationalMatrix(tuple_labels(d, a), tuple_labels(d, b - a), std::move(entries));
}

RationalMatrix existential_matrix(const Instance& instance, int a, int b, int c,
                                  const EnumLimits& limits) {
    return existential_matrix(relation_of(instance, limits), a, b, c);
}

ProjectionResult projection(const RelationTable& r, int i) {
    if (i < 1 || i > r.arity()) throw std::invalid_argument("projection: coordinate out of range");
    ProjectionResult result;
    std::map<int, Tuple> first_member;
    for (const Tuple& t : r.tuples())
        first_member.try_emplace(t[static_cast<std::size_t>(i - 1)], t);  // tuples are sorted, so first is least
    for (auto& [element, member] : first_member) {
        result.elements.push_back(element);
        result.members.push_back(std::move(member));
    }
    return result;
}

namespace {

// a ~_i b adjacency over domain values, from grouping R by (i-1)-prefix.
std::vector<std::vector<bool>> prefix_adjacency(const RelationTable& r, int i,
                                                std::map<Tuple, std::vector<int>>& groups) {
    const int d = r.domain_size();
    for (const Tuple& t : r.tuples()) {
        Tuple prefix(t.begin(), t.begin() + (i - 1));
        auto& group = groups[prefix];
        const int a = t[static_cast<std::size_t>(i - 1)];
        if (group.empty() || group.back() != a) group.push_back(a);  // sorted input keeps groups sorted
    }
    std::vector<std::vector<bool>> related(static_cast<std::size_t>(d),
                                           std::vector<bool>(static_cast<std::size_t>(d), false));
    for (const auto& [prefix, group] : groups)
        for (int a : group)
            for (int b : group) related[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = true;
    return related;
}

}  // namespace

EquivClasses equivalence_classes(const RelationTable& r, int i) {
    if (i < 1 || i > r.arity())
        throw std::invalid_argument("equivalence_classes: coordinate out of range");
    EquivClasses result;
    std::map<Tuple, std::vector<int>> groups;
    const auto related = prefix_adjacency(r, i, groups);
    const int d = r.domain_size();

    // Transitivity check over at most d elements.
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            if (a == b || !related[a - 1][b - 1]) continue;
            for (int c = 1; c <= d; ++c)
                if (c != a && related[b - 1][c - 1] && !related[a - 1][c - 1]) {
                    result.violation = std::array<int, 3>{a, b, c};
                    return result;
                }
        }

    std::vector<bool> assigned(static_cast<std::size_t>(d), false);
    for (int a = 1; a <= d; ++a) {
        if (assigned[a - 1] || !related[a - 1][a - 1]) continue;  // not in pr_i R
        std::vector<int> cls;
        for (int b = a; b <= d; ++b)
            if (related[a - 1][b - 1]) {
                cls.push_back(b);
                assigned[b - 1] = true;
            }
        result.classes.push_back(std::move(cls));
    }
    return result;
}

WitnessBundle witnesses(const RelationTable& r, int i) {
    WitnessBundle bundle;
    bundle.coord = i;
    EquivClasses classes = equivalence_classes(r, i);
    if (!classes.ok()) {
        bundle.not_equivalence = classes.violation;
        return bundle;
    }
    bundle.classes = classes.classes;

    std::map<Tuple, std::vector<int>> groups;
    prefix_adjacency(r, i, groups);
    for (std::size_t k = 0; k < bundle.classes.size(); ++k) {
        const auto& cls = bundle.classes[k];
        // Least prefix whose group covers the whole class. Groups iterate in
        // lexicographic prefix order.
        const Tuple* chosen = nullptr;
        for (const auto& [prefix, group] : groups) {
            if (std::includes(group.begin(), group.end(), cls.begin(), cls.end())) {
                chosen = &prefix;
                break;
            }
        }
        if (chosen == nullptr) {
            bundle.no_uniform_prefix_class = static_cast<int>(k);
            return bundle;
        }
        WitnessBundle::ClassWitness witness;
        witness.prefix = *chosen;
        for (int a : cls) {
            // Least suffix: R is sorted, take the first match.
            for (const Tuple& t : r.tuples()) {
                if (!std::equal(chosen->begin(), chosen->end(), t.begin())) continue;
                if (t[static_cast<std::size_t>(i - 1)] != a) continue;
                witness.suffixes.emplace_back(t.begin() + i, t.end());
                break;
            }
        }
        bundle.witnesses.push_back(std::move(witness));
    }
    return bundle;
}

namespace {

BalanceVerdict scan_marginals(const Instance& instance, const EnumLimits& limits,
                              bool weak_only, bool primitive_only) {
    const int n = instance.num_vars();
    for (int a = 1; a < n; ++a) {
        if (primitive_only && a != 1) break;
        for (int b = a + 1; b <= n; ++b) {
            if (weak_only && b != a + 1) continue;
            if (primitive_only && b != 2) break;
            RationalMatrix m = marginal_matrix(instance, a, b, limits);
            BlockRank1Check check = is_block_rank_1(m);
            if (!check.ok)
                return BalanceVerdict{false, BalanceViolation{a, b, -1, std::move(m), std::move(check)}};
        }
    }
    return BalanceVerdict{};
}

}  // namespace

BalanceVerdict test_balance(const Instance& instance, const EnumLimits& limits) {
    return scan_marginals(instance, limits, false, false);
}

BalanceVerdict test_weak_balance(const Instance& instance, const EnumLimits& limits) {
    return scan_marginals(instance, limits, true, false);
}

BalanceVerdict test_primitive_balance(const Instance& instance, const EnumLimits& limits) {
    return scan_marginals(instance, limits, false, true);
}

BalanceVerdict test_strong_balance(const Instance& instance, const EnumLimits& limits) {
    const int n = instance.num_vars();
    if (n < 2) return BalanceVerdict{};
    RelationTable r = relation_of(instance, limits);
    for (int a = 1; a < n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b; c <= n; ++c) {
                RationalMatrix m = existential_matrix(r, a, b, c);
                BlockRank1Check check = is_block_rank_1(m);
                if (!check.ok)
                    return BalanceVerdict{false,
                                          BalanceViolation{a, b, c, std::move(m), std::move(check)}};
            }
    return BalanceVerdict{};
}

}  // namespace cspcount
