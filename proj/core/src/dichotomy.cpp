#include "cspcount/dichotomy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cspcount {

bool TernaryOperation::satisfies_maltsev_identity() const {
    for (int a = 1; a <= domain_size; ++a)
        for (int b = 1; b <= domain_size; ++b)
            if (at(a, b, b) != a || at(b, b, a) != a) return false;
    return true;
}

PolymorphismCheck is_polymorphism(const TernaryOperation& op, const RelationTable& relation) {
    PolymorphismCheck check;
    const int r = relation.arity();
    for (const Tuple& p : relation.tuples())
        for (const Tuple& q : relation.tuples())
            for (const Tuple& s : relation.tuples()) {
                Tuple image(static_cast<std::size_t>(r));
                for (int j = 0; j < r; ++j)
                    image[static_cast<std::size_t>(j)] =
                        op.at(p[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j)],
                              s[static_cast<std::size_t>(j)]);
                if (!relation.contains(image)) {
                    check.ok = false;
                    check.violating = {p, q, s};
                    check.image = std::move(image);
                    return check;
                }
            }
    return check;
}

namespace {

std::size_t cell_index(int a, int b, int c, int d) {
    return (static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(d) +
            static_cast<std::size_t>(b - 1)) *
               static_cast<std::size_t>(d) +
           static_cast<std::size_t>(c - 1);
}

// Returns the table with the identity-constrained cells filled in and 0
// (unassigned) elsewhere.
std::vector<int> constrained_table(int d) {
    std::vector<int> table(static_cast<std::size_t>(d) * static_cast<std::size_t>(d) *
                               static_cast<std::size_t>(d),
                           0);
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            table[cell_index(a, b, b, d)] = a;
            table[cell_index(b, b, a, d)] = a;
        }
    return table;
}

struct ClosureConstraint {
    std::size_t relation;
    std::vector<std::size_t> cells;  // one per coordinate of the image tuple
};

}  // namespace

MaltsevSearch find_maltsev(const std::vector<RelationTable>& relations,
                           const SearchLimits& limits) {
    if (relations.empty()) throw std::invalid_argument("find_maltsev: empty language");
    const int d = relations.front().domain_size();
    for (const RelationTable& r : relations)
        if (r.domain_size() != d) throw std::invalid_argument("find_maltsev: mixed domains");
    if (d > limits.max_maltsev_domain)
        throw ResourceError("Mal'tsev search domain " + std::to_string(d) +
                            " exceeds the configured bound of " +
                            std::to_string(limits.max_maltsev_domain));

    MaltsevSearch result;
    std::vector<int> table = constrained_table(d);
    std::vector<std::size_t> free_cells;
    std::vector<std::ptrdiff_t> free_position(table.size(), -1);
    for (std::size_t cell = 0; cell < table.size(); ++cell)
        if (table[cell] == 0) {
            free_position[cell] = static_cast<std::ptrdiff_t>(free_cells.size());
            free_cells.push_back(cell);
        }

    // Bucket each closure constraint by the last free cell it needs, so it
    // is checked exactly when it becomes fully determined.
    std::vector<std::vector<ClosureConstraint>> buckets(free_cells.size() + 1);
    std::vector<std::vector<bool>> membership;
    for (std::size_t ri = 0; ri < relations.size(); ++ri) {
        const RelationTable& rel = relations[ri];
        std::vector<bool> bits(tuple_count(d, rel.arity()), false);
        for (const Tuple& t : rel.tuples()) bits[encode_tuple(t, d)] = true;
        membership.push_back(std::move(bits));
        for (const Tuple& p : rel.tuples())
            for (const Tuple& q : rel.tuples())
                for (const Tuple& s : rel.tuples()) {
                    ClosureConstraint constraint{ri, {}};
                    std::ptrdiff_t last = -1;
                    for (int j = 0; j < rel.arity(); ++j) {
                        const std::size_t cell =
                            cell_index(p[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j)],
                                       s[static_cast<std::size_t>(j)], d);
                        constraint.cells.push_back(cell);
                        last = std::max(last, free_position[cell]);
                    }
                    buckets[static_cast<std::size_t>(last + 1)].push_back(std::move(constraint));
                }
    }

    auto satisfied = [&](const ClosureConstraint& constraint) {
        std::size_t image = 0;
        for (std::size_t cell : constraint.cells)
            image = image * static_cast<std::size_t>(d) + static_cast<std::size_t>(table[cell] - 1);
        return static_cast<bool>(membership[constraint.relation][image]);
    };

    // On a failed search, record one closure violation per complete
    // candidate as the counterexample (small spaces only).
    auto census = [&] {
        std::size_t space = 1;
        for (std::size_t i = 0; i < free_cells.size() && space <= 256; ++i)
            space *= static_cast<std::size_t>(d);
        if (space > 256) return;
        std::vector<int> assignment(free_cells.size(), 1);
        while (true) {
            for (std::size_t i = 0; i < free_cells.size(); ++i) table[free_cells[i]] = assignment[i];
            TernaryOperation op{d, table};
            for (std::size_t ri = 0; ri < relations.size(); ++ri) {
                PolymorphismCheck check = is_polymorphism(op, relations[ri]);
                if (!check.ok) {
                    result.failures.push_back(MaltsevFailure{op, ri, std::move(check)});
                    break;
                }
            }
            std::size_t k = free_cells.size();
            while (k > 0 && assignment[k - 1] == d) assignment[--k] = 1;
            if (k == 0) break;
            ++assignment[k - 1];
        }
    };

    for (const ClosureConstraint& constraint : buckets[0])
        if (!satisfied(constraint)) {  // constrained entries alone already violate
            census();
            return result;
        }

    // Depth-first over free cells, values ascending: the first complete
    // table is the lexicographically least one.
    std::vector<int> choice(free_cells.size() + 1, 0);
    std::size_t depth = 0;
    while (true) {
        if (result.nodes > limits.max_search_nodes)
            throw ResourceError("Mal'tsev search exceeded the node budget");
        if (depth == free_cells.size()) {
            result.op = TernaryOperation{d, table};
            return result;
        }
        int next = ++choice[depth];
        if (next > d) {
            if (depth == 0) break;
            choice[depth] = 0;
            --depth;
            continue;
        }
        ++result.nodes;
        table[free_cells[depth]] = next;
        bool ok = true;
        for (const ClosureConstraint& constraint : buckets[depth + 1])
            if (!satisfied(constraint)) {
                ok = false;
                break;
            }
        if (ok) ++depth;
    }

    census();
    return result;
}

PowerLanguage::PowerLanguage(std::shared_ptr<const Language> base, const SearchLimits& limits)
    : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("power language without base");
    const int d = base_->domain().size;
    const std::size_t pd = tuple_count(d, 6);
    if (pd > limits.max_power_domain)
        throw ResourceError("power domain size " + std::to_string(pd) +
                            " exceeds the configured bound of " +
                            std::to_string(limits.max_power_domain));
    elements_.reserve(pd);
    for (std::size_t e = 0; e < pd; ++e) elements_.push_back(decode_tuple(e, d, 6));

    std::size_t total_cells = 0;
    for (const FunctionTable& f : base_->functions()) {
        std::size_t cells = 1;
        for (int i = 0; i < f.arity(); ++i) {
            if (cells > limits.max_power_table_cells / pd)
                throw ResourceError("power tables exceed the configured cell budget");
            cells *= pd;
        }
        total_cells += cells;
        if (total_cells > limits.max_power_table_cells)
            throw ResourceError("power tables exceed the configured cell budget");
    }

    std::map<Rat, std::int32_t> intern;
    auto intern_value = [&](const Rat& v) {
        auto [it, inserted] = intern.try_emplace(v, static_cast<std::int32_t>(palette_.size()));
        if (inserted) palette_.push_back(v);
        return it->second;
    };

    for (const FunctionTable& f : base_->functions()) {
        const int r = f.arity();
        const std::size_t cells = [&] {
            std::size_t n = 1;
            for (int i = 0; i < r; ++i) n *= pd;
            return n;
        }();
        std::vector<std::int32_t> table(cells);
        std::vector<std::size_t> elems(static_cast<std::size_t>(r), 0);
        std::vector<int> args(static_cast<std::size_t>(r));
        for (std::size_t index = 0;; ++index) {
            Rat product(1);
            for (int j = 0; j < 6 && sgn(product) > 0; ++j) {
                for (int i = 0; i < r; ++i)
                    args[static_cast<std::size_t>(i)] = elements_[elems[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
                product *= f.at_index(encode_tuple(args, d));
            }
            table[index] = intern_value(product);
            // odometer over the r power-domain slots, last fastest
            std::size_t k = elems.size();
            while (k > 0 && elems[k - 1] == pd - 1) elems[--k] = 0;
            if (k == 0) break;
            ++elems[k - 1];
        }
        tables_.push_back(std::move(table));
    }
}

const Rat& PowerLanguage::g_value(std::size_t fn, std::span<const std::size_t> elems) const {
    const std::size_t pd = domain_size();
    std::size_t index = 0;
    for (std::size_t e : elems) index = index * pd + e;
    return palette_[static_cast<std::size_t>(tables_[fn][index])];
}

std::shared_ptr<const Language> PowerLanguage::to_language() const {
    const int pd = static_cast<int>(domain_size());
    std::vector<FunctionTable> functions;
    for (std::size_t fn = 0; fn < num_functions(); ++fn) {
        std::vector<Rat> values;
        values.reserve(tables_[fn].size());
        for (std::int32_t id : tables_[fn]) values.push_back(palette_[static_cast<std::size_t>(id)]);
        functions.emplace_back("g_" + base_->function(fn).name(), pd, arity(fn), std::move(values));
    }
    return std::make_shared<Language>(Domain{pd}, std::move(functions));
}

SpecialElements special_elements(const PowerLanguage& power, int alpha, int beta, int kappa,
                                 int lambda) {
    const int d = power.base().domain().size;
    auto in_domain = [d](int x) { return 1 <= x && x <= d; };
    if (!in_domain(alpha) || !in_domain(beta) || !in_domain(kappa) || !in_domain(lambda))
        throw std::invalid_argument("special_elements: value out of domain");
    if (alpha == beta || kappa == lambda)
        throw std::invalid_argument("special_elements: requires alpha != beta and kappa != lambda");
    const Tuple a{alpha, alpha, alpha, beta, beta, beta};
    const Tuple b{kappa, kappa, lambda, lambda, lambda, kappa};
    const Tuple c{lambda, lambda, kappa, kappa, kappa, lambda};
    return SpecialElements{encode_tuple(a, d), encode_tuple(b, d), encode_tuple(c, d)};
}

namespace {

// Weighted 1-WL: iterated partition refinement by interned g-values against
// current colors. Stable colors are invariant under every automorphism.
std::vector<std::int32_t> refine_colors(const PowerLanguage& power) {
    const std::size_t P = power.domain_size();
    std::vector<std::int32_t> colors(P, 0);
    std::size_t ncolors = 1;
    for (;;) {
        std::map<std::vector<std::int64_t>, std::int32_t> dictionary;
        std::vector<std::int32_t> next(P);
        for (std::size_t e = 0; e < P; ++e) {
            std::vector<std::int64_t> sig{colors[e]};
            for (std::size_t fn = 0; fn < power.num_functions(); ++fn) {
                const auto& tbl = power.table(fn);
                switch (power.arity(fn)) {
                    case 1:
                        sig.push_back(tbl[e]);
                        break;
                    case 2: {
                        std::vector<std::int64_t> items;
                        items.reserve(P);
                        for (std::size_t t = 0; t < P; ++t)
                            items.push_back((static_cast<std::int64_t>(colors[t]) << 42) |
                                            (static_cast<std::int64_t>(tbl[e * P + t]) << 21) |
                                            static_cast<std::int64_t>(tbl[t * P + e]));
                        std::sort(items.begin(), items.end());
                        sig.insert(sig.end(), items.begin(), items.end());
                        break;
                    }
                    case 3: {
                        std::vector<std::array<std::int64_t, 5>> items;
                        items.reserve(P * P);
                        for (std::size_t t1 = 0; t1 < P; ++t1)
                            for (std::size_t t2 = 0; t2 < P; ++t2)
                                items.push_back({colors[t1], colors[t2],
                                                 tbl[(e * P + t1) * P + t2],
                                                 tbl[(t1 * P + e) * P + t2],
                                                 tbl[(t1 * P + t2) * P + e]});
                        std::sort(items.begin(), items.end());
                        for (const auto& item : items)
                            sig.insert(sig.end(), item.begin(), item.end());
                        break;
                    }
                    default:
                        throw ResourceError("automorphism search supports arity <= 3");
                }
            }
            auto [it, inserted] =
                dictionary.try_emplace(std::move(sig), static_cast<std::int32_t>(dictionary.size()));
            next[e] = it->second;
        }
        if (dictionary.size() == ncolors) return colors;
        ncolors = dictionary.size();
        colors = std::move(next);
    }
}

struct AutomorphismSearch {
    const PowerLanguage& power;
    const SearchLimits& limits;
    std::size_t P;
    std::vector<std::int32_t> colors;
    std::vector<std::size_t> pi;        // SIZE_MAX == unassigned
    std::vector<bool> used;             // target taken
    std::vector<std::size_t> assigned;  // sources in assignment order
    std::uint64_t nodes = 0;

    AutomorphismSearch(const PowerLanguage& pw, const SearchLimits& lim)
        : power(pw), limits(lim), P(pw.domain_size()), colors(refine_colors(pw)),
          pi(P, SIZE_MAX), used(P, false) {}

    bool consistent(std::size_t u, std::size_t v) const {
        for (std::size_t fn = 0; fn < power.num_functions(); ++fn) {
            const auto& tbl = power.table(fn);
            switch (power.arity(fn)) {
                case 1:
                    if (tbl[u] != tbl[v]) return false;
                    break;
                case 2: {
                    if (tbl[u * P + u] != tbl[v * P + v]) return false;
                    for (std::size_t w : assigned) {
                        const std::size_t pw = pi[w];
                        if (tbl[u * P + w] != tbl[v * P + pw]) return false;
                        if (tbl[w * P + u] != tbl[pw * P + v]) return false;
                    }
                    break;
                }
                case 3: {
                    // All triples whose latest element is u, over assigned
                    // sources extended by u itself.
                    auto img = [&](std::size_t x) { return x == u ? v : pi[x]; };
                    auto check = [&](std::size_t x, std::size_t y, std::size_t z) {
                        return tbl[(x * P + y) * P + z] == tbl[(img(x) * P + img(y)) * P + img(z)];
                    };
                    std::vector<std::size_t> scope = assigned;
                    scope.push_back(u);
                    for (std::size_t x : scope)
                        for (std::size_t y : scope)
                            for (std::size_t z : scope) {
                                if (x != u && y != u && z != u) continue;
                                if (!check(x, y, z)) return false;
                            }
                    break;
                }
                default:
                    return false;
            }
        }
        return true;
    }

    bool assign(std::size_t u, std::size_t v) {
        if (used[v] || colors[u] != colors[v] || !consistent(u, v)) return false;
        pi[u] = v;
        used[v] = true;
        assigned.push_back(u);
        return true;
    }

    void unassign(std::size_t u) {
        used[pi[u]] = false;
        pi[u] = SIZE_MAX;
        assigned.pop_back();
    }

    bool extend(const std::vector<std::size_t>& order, std::size_t k) {
        if (k == order.size()) return true;
        const std::size_t u = order[k];
        for (std::size_t v = 0; v < P; ++v) {
            if (++nodes > limits.max_search_nodes)
                throw ResourceError("automorphism search exceeded the node budget");
            if (!assign(u, v)) continue;
            if (extend(order, k + 1)) return true;
            unassign(u);
        }
        return false;
    }
};

}  // namespace

AutomorphismResult find_automorphism(const PowerLanguage& power, const SpecialElements& pinned,
                                     const SearchLimits& limits) {
    AutomorphismSearch search(power, limits);
    AutomorphismResult result;

    if (search.colors[pinned.b] != search.colors[pinned.c]) return result;  // b and c not even WL-equivalent
    if (!search.assign(pinned.a, pinned.a)) return result;
    if (!search.assign(pinned.b, pinned.c)) {
        result.nodes = search.nodes;
        return result;
    }

    // Most-constrained first: small color classes early, then by index for
    // determinism.
    std::vector<std::size_t> class_size(search.P, 0);
    for (std::size_t e = 0; e < search.P; ++e)
        ++class_size[static_cast<std::size_t>(search.colors[e])];
    std::vector<std::size_t> order;
    for (std::size_t e = 0; e < search.P; ++e)
        if (e != pinned.a && e != pinned.b) order.push_back(e);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return class_size[static_cast<std::size_t>(search.colors[x])] <
               class_size[static_cast<std::size_t>(search.colors[y])];
    });

    if (search.extend(order, 0)) result.pi = search.pi;
    result.nodes = search.nodes;
    return result;
}

bool verify_automorphism(const PowerLanguage& power, std::span<const std::size_t> pi,
                         const SpecialElements& pinned) {
    const std::size_t P = power.domain_size();
    if (pi.size() != P) return false;
    std::vector<bool> hit(P, false);
    for (std::size_t v : pi) {
        if (v >= P || hit[v]) return false;
        hit[v] = true;
    }
    if (pi[pinned.a] != pinned.a || pi[pinned.b] != pinned.c) return false;
    for (std::size_t fn = 0; fn < power.num_functions(); ++fn) {
        const auto& tbl = power.table(fn);
        switch (power.arity(fn)) {
            case 1:
                for (std::size_t x = 0; x < P; ++x)
                    if (tbl[x] != tbl[pi[x]]) return false;
                break;
            case 2:
                for (std::size_t x = 0; x < P; ++x)
                    for (std::size_t y = 0; y < P; ++y)
                        if (tbl[x * P + y] != tbl[pi[x] * P + pi[y]]) return false;
                break;
            case 3:
                for (std::size_t x = 0; x < P; ++x)
                    for (std::size_t y = 0; y < P; ++y)
                        for (std::size_t z = 0; z < P; ++z)
                            if (tbl[(x * P + y) * P + z] != tbl[(pi[x] * P + pi[y]) * P + pi[z]])
                                return false;
                break;
            default:
                return false;
        }
    }
    return true;
}

namespace {

Rat pinned_sum(const Instance& power_instance, std::size_t a_elem, std::size_t s_elem,
               const EnumLimits& limits, bool injective_only) {
    const int n = power_instance.num_vars();
    if (n < 2) throw std::invalid_argument("power instance needs at least two variables");
    const int P = power_instance.language().domain().size;
    if (a_elem >= static_cast<std::size_t>(P) || s_elem >= static_cast<std::size_t>(P))
        throw std::invalid_argument("power element out of range");
    const std::size_t tail = tuple_count(P, n - 2);
    if (tail > limits.max_points)
        throw ResourceError("power-instance enumeration exceeds the configured bound");
    if (injective_only && a_elem == s_elem) return Rat(0);

    Tuple x(static_cast<std::size_t>(n), 1);
    x[0] = static_cast<int>(a_elem) + 1;
    x[1] = static_cast<int>(s_elem) + 1;
    Rat sum(0);
    for (std::size_t index = 0;; ++index) {
        bool include = true;
        if (injective_only) {
            for (std::size_t i = 0; include && i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j)
                    if (x[i] == x[j]) {
                        include = false;
                        break;
                    }
        }
        if (include && evaluates_positive(power_instance, x)) sum += evaluate(power_instance, x);
        // odometer over coordinates 3..n
        std::size_t k = x.size();
        while (k > 2 && x[k - 1] == P) x[--k] = 1;
        if (k == 2) break;
        ++x[k - 1];
    }
    return sum;
}

}  // namespace

Rat hom_value(const Instance& power_instance, std::size_t a_elem, std::size_t s_elem,
              const EnumLimits& limits) {
    return pinned_sum(power_instance, a_elem, s_elem, limits, false);
}

Rat mon_value(const Instance& power_instance, std::size_t a_elem, std::size_t s_elem,
              const EnumLimits& limits) {
    return pinned_sum(power_instance, a_elem, s_elem, limits, true);
}

Instance lift_instance(const Instance& base_instance,
                       std::shared_ptr<const Language> power_language) {
    return Instance(std::move(power_language), base_instance.num_vars(),
                    base_instance.applications());
}

namespace {

bool multiplicity_property_holds(const std::vector<Rat>& q, const std::vector<std::uint64_t>& n) {
    // Products of |Q|^k exponentiated tuples must be pairwise distinct
    // unless the tuples agree.
    std::size_t total = 1;
    for (std::size_t i = 0; i < n.size(); ++i) {
        total *= q.size();
        if (total > 1'000'000)
            throw ResourceError("multiplicity verification space too large");
    }
    std::map<Rat, std::vector<std::size_t>> seen;
    std::vector<std::size_t> pick(n.size(), 0);
    for (std::size_t index = 0; index < total; ++index) {
        Rat product(1);
        for (std::size_t i = 0; i < n.size(); ++i) product *= pow_rat(q[pick[i]], n[i]);
        auto [it, inserted] = seen.try_emplace(product, pick);
        if (!inserted && it->second != pick) return false;
        std::size_t k = pick.size();
        while (k > 0 && pick[k - 1] == q.size() - 1) pick[--k] = 0;
        if (k > 0) ++pick[k - 1];
    }
    return true;
}

}  // namespace

std::vector<std::uint64_t> multiplicity_sequence(const std::vector<Rat>& q_values, int k) {
    if (k < 1) throw std::invalid_argument("multiplicity_sequence: k must be >= 1");
    std::vector<Rat> q = q_values;
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    if (q.empty()) throw std::invalid_argument("multiplicity_sequence: empty value set");
    for (const Rat& v : q)
        if (sgn(v) <= 0) throw std::invalid_argument("multiplicity_sequence: values must be positive");

    std::vector<std::uint64_t> n{1};
    if (q.size() == 1) {
        n.assign(static_cast<std::size_t>(k), 1);
        return n;
    }

    Rat c_min(0), c_max(0);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const Rat ratio = q[i] / q[j];  // q sorted ascending, so ratio > 1
            if (sgn(c_min) == 0 || ratio < c_min) c_min = ratio;
            if (ratio > c_max) c_max = ratio;
        }

    std::uint64_t exponent_sum = 1;
    for (int i = 2; i <= k; ++i) {
        const Rat rhs = pow_rat(c_max, exponent_sum);
        std::uint64_t next = 1;
        Rat lhs = c_min;
        while (lhs <= rhs) {
            lhs *= c_min;
            if (++next > 1'000'000)
                throw ResourceError("multiplicity exponent overflow");
        }
        n.push_back(next);
        while (!multiplicity_property_holds(q, n)) ++n.back();
        exponent_sum += n.back();
    }
    return n;
}

std::optional<UnbalancedWitness> find_unbalanced_witness(std::shared_ptr<const Language> language,
                                                         const WitnessBounds& bounds) {
    for (int n = 2; n <= bounds.max_vars; ++n) {
        // Application pool in (function, index tuple) lexicographic order.
        std::vector<Application> pool;
        for (std::size_t fn = 0; fn < language->functions().size(); ++fn) {
            const int r = language->function(fn).arity();
            Tuple vars(static_cast<std::size_t>(r), 1);
            do {
                pool.push_back(Application{fn, vars});
            } while (next_tuple(vars, n));
        }

        for (int m = 1; m <= bounds.max_apps; ++m) {
            // Multisets of m pool entries as non-decreasing index sequences.
            std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
            for (;;) {
                std::vector<Application> apps;
                apps.reserve(pick.size());
                for (std::size_t p : pick) apps.push_back(pool[p]);
                Instance candidate(language, n, std::move(apps));
                for (int a = 1; a < n; ++a)
                    for (int b = a + 1; b <= n; ++b) {
                        RationalMatrix matrix =
                            marginal_matrix(candidate, a, b, bounds.enumeration);
                        BlockRank1Check check = is_block_rank_1(matrix);
                        if (!check.ok)
                            return UnbalancedWitness{std::move(candidate), a, b, std::move(matrix),
                                                     std::move(check)};
                    }
                std::size_t k = pick.size();
                while (k > 0 && pick[k - 1] == pool.size() - 1) --k;
                if (k == 0) break;
                const std::size_t value = pick[k - 1] + 1;
                for (std::size_t i = k - 1; i < pick.size(); ++i) pick[i] = value;
            }
        }
    }
    return std::nullopt;
}

Verdict classify(std::shared_ptr<const Language> language, const SearchLimits& limits) {
    Verdict verdict;
    verdict.language_fingerprint = language->fingerprint();

    MaltsevSearch maltsev = find_maltsev(support_language(*language), limits);
    verdict.maltsev_nodes = maltsev.nodes;
    if (!maltsev.op) {
        verdict.outcome = Outcome::SharpPHard;
        verdict.reason = HardReason::NoMaltsev;
        verdict.maltsev_failures = std::move(maltsev.failures);
        return verdict;
    }
    verdict.maltsev = std::move(maltsev.op);

    const int d = language->domain().size;
    PowerLanguage power(language, limits);
    for (int alpha = 1; alpha <= d; ++alpha)
        for (int beta = 1; beta <= d; ++beta) {
            if (beta == alpha) continue;
            for (int kappa = 1; kappa <= d; ++kappa)
                for (int lambda = 1; lambda <= d; ++lambda) {
                    if (lambda == kappa) continue;
                    const SpecialElements pinned =
                        special_elements(power, alpha, beta, kappa, lambda);
                    AutomorphismResult found = find_automorphism(power, pinned, limits);
                    if (!found.pi) {
                        verdict.outcome = Outcome::SharpPHard;
                        verdict.reason = HardReason::NoAutomorphism;
                        verdict.failed_quadruple = std::array<int, 4>{alpha, beta, kappa, lambda};
                        return verdict;
                    }
                    verdict.automorphisms.push_back(
                        AutomorphismCert{alpha, beta, kappa, lambda, std::move(*found.pi)});
                }
        }
    verdict.outcome = Outcome::Tractable;
    return verdict;
}

}  // namespace cspcount
